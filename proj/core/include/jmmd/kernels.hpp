#pragma once

#include <span>
#include <utility>
#include <vector>

#include "jmmd/matrix.hpp"

namespace jmmd {

enum class KernelFamily { Gaussian, Linear };

/// Kernel configuration. The Gaussian kernel is parameterized as
/// exp(-|x-y|^2 / bandwidth), so a pair at the median squared distance
/// evaluates to 1/e under the median-bandwidth heuristic. Linear kernels
/// ignore the bandwidth.
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double bandwidth = 1.0;

  static KernelSpec gaussian(double bandwidth) {
    return {KernelFamily::Gaussian, bandwidth};
  }
  static KernelSpec linear() { return {KernelFamily::Linear, 0.0}; }

  bool operator==(const KernelSpec&) const = default;
};

/// k(x, y). Gaussian: exp(-|x-y|^2/b) in (0, 1]; Linear: x.y.
double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// Gram matrix with entry (i,j) = kernel_eval(spec, a_i, b_j).
Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b);

/// Median of the off-diagonal pairwise squared distances of the rows of
/// `data`. If that median is zero (duplicate-heavy data) the smallest
/// positive squared distance is used instead; if every distance is zero the
/// result is 1. Requires at least two rows.
double median_bandwidth(const Matrix& data);

/// (dk/dx, dk/dy). Gaussian: dk/dx = -(2/b) k(x,y) (x - y) and dk/dy is its
/// negation; Linear: (y, x).
std::pair<std::vector<double>, std::vector<double>> kernel_grad(
    const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

}  // namespace jmmd
