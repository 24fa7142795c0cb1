#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "jmmd/kernels.hpp"
#include "jmmd/matrix.hpp"

namespace jmmd {

/// Per-layer activation matrices for one mini-batch, one entry per adapted
/// layer. All layers share the same row count (the batch size).
struct ActivationStack {
  std::vector<Matrix> layers;

  ActivationStack() = default;
  explicit ActivationStack(std::vector<Matrix> ls) : layers(std::move(ls)) {}
  static ActivationStack single(Matrix m) {
    ActivationStack s;
    s.layers.push_back(std::move(m));
    return s;
  }

  std::size_t depth() const { return layers.size(); }
  std::size_t batch() const { return layers.empty() ? 0 : layers.front().rows(); }
};

enum class Statistic { Mmd, Jmmd };

/// Biased keeps the i=j diagonal terms (a V-statistic, always >= 0);
/// Unbiased excludes the within-domain diagonals (a U-statistic, may go
/// negative); LinearTime is the paired O(n) estimator.
enum class Estimator { Biased, Unbiased, LinearTime };

struct DiscrepancyReport {
  Statistic statistic = Statistic::Jmmd;
  Estimator estimator = Estimator::Biased;
  double value = 0.0;
  std::size_t n_source = 0;
  std::size_t n_target = 0;
  std::vector<KernelSpec> kernels;
};

/// Two-sample kernel discrepancy between the rows of xs and xt.
/// Biased: mean(K_ss) + mean(K_tt) - 2 mean(K_st), diagonals included.
/// Unbiased: within-domain diagonals excluded, denominators n(n-1).
/// LinearTime: the paired estimator; requires equal, even sample sizes.
double mmd(const KernelSpec& spec, const Matrix& xs, const Matrix& xt,
           Estimator estimator);

/// Joint discrepancy: identical to mmd but with every kernel entry replaced
/// by the product over layers of the per-layer kernels. With a single layer
/// this equals mmd bit for bit. Estimator may be any of the three variants
/// (LinearTime delegates to jmmd_linear).
double jmmd(std::span<const KernelSpec> kernels, const ActivationStack& zs,
            const ActivationStack& zt, Estimator estimator);

/// Linear-time paired estimate over consecutive in-batch pairs (2i-1, 2i):
///   (2/n) sum_i [ k(zs_{2i-1}, zs_{2i}) + k(zt_{2i-1}, zt_{2i})
///               - k(zs_{2i-1}, zt_{2i}) - k(zt_{2i-1}, zs_{2i}) ]
/// with k the product kernel over layers. Requires n_s == n_t and n even;
/// the mini-batch sampler guarantees equal half-batches.
double jmmd_linear(std::span<const KernelSpec> kernels, const ActivationStack& zs,
                   const ActivationStack& zt);

/// Gradients of the chosen estimator with respect to every activation entry
/// of zs and zt, assembled analytically from kernel_grad via the product
/// rule across layers. Shapes match the inputs.
std::pair<ActivationStack, ActivationStack> jmmd_grad(
    std::span<const KernelSpec> kernels, const ActivationStack& zs,
    const ActivationStack& zt, Estimator estimator);

}  // namespace jmmd
