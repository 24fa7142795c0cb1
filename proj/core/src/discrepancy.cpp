#include "jmmd/discrepancy.hpp"

#include <cmath>
#include <string>

#include "jmmd/errors.hpp"

namespace jmmd {

namespace {

void validate_stacks(std::span<const KernelSpec> kernels, const ActivationStack& zs,
                     const ActivationStack& zt, const char* who) {
  if (kernels.empty()) {
    throw ShapeError(std::string(who) + ": no kernels given");
  }
  if (zs.depth() != kernels.size() || zt.depth() != kernels.size()) {
    throw ShapeError(std::string(who) + ": layer counts differ, kernels=" +
                     std::to_string(kernels.size()) + " source=" +
                     std::to_string(zs.depth()) + " target=" +
                     std::to_string(zt.depth()));
  }
  if (zs.batch() == 0 || zt.batch() == 0) {
    throw ShapeError(std::string(who) + ": empty sample");
  }
  for (std::size_t l = 0; l < kernels.size(); ++l) {
    if (zs.layers[l].rows() != zs.batch() || zt.layers[l].rows() != zt.batch()) {
      throw ShapeError(std::string(who) + ": layer " + std::to_string(l) +
                       " row count does not match the batch size");
    }
    if (zs.layers[l].cols() != zt.layers[l].cols()) {
      throw ShapeError(std::string(who) + ": layer " + std::to_string(l) +
                       " dims differ across domains, " +
                       std::to_string(zs.layers[l].cols()) + " vs " +
                       std::to_string(zt.layers[l].cols()));
    }
  }
}

/// Entrywise product of per-layer Gram matrices: the joint kernel.
Matrix joint_gram(std::span<const KernelSpec> kernels, const ActivationStack& a,
                  const ActivationStack& b) {
  Matrix joint = gram(kernels[0], a.layers[0], b.layers[0]);
  for (std::size_t l = 1; l < kernels.size(); ++l) {
    const Matrix g = gram(kernels[l], a.layers[l], b.layers[l]);
    for (std::size_t i = 0; i < joint.size(); ++i) joint.data()[i] *= g.data()[i];
  }
  return joint;
}

double total(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v;
  return s;
}

double trace(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

double quadratic_estimate(std::span<const KernelSpec> kernels,
                          const ActivationStack& zs, const ActivationStack& zt,
                          Estimator estimator) {
  const double ns = static_cast<double>(zs.batch());
  const double nt = static_cast<double>(zt.batch());
  const Matrix jss = joint_gram(kernels, zs, zs);
  const Matrix jtt = joint_gram(kernels, zt, zt);
  const Matrix jst = joint_gram(kernels, zs, zt);
  const double cross = 2.0 * total(jst) / (ns * nt);
  if (estimator == Estimator::Biased) {
    return total(jss) / (ns * ns) + total(jtt) / (nt * nt) - cross;
  }
  if (zs.batch() < 2 || zt.batch() < 2) {
    throw ShapeError("jmmd: the unbiased estimator needs at least 2 rows per domain");
  }
  return (total(jss) - trace(jss)) / (ns * (ns - 1.0)) +
         (total(jtt) - trace(jtt)) / (nt * (nt - 1.0)) - cross;
}

double joint_kernel_rows(std::span<const KernelSpec> kernels,
                         const ActivationStack& a, std::size_t i,
                         const ActivationStack& b, std::size_t j) {
  double prod = 1.0;
  for (std::size_t l = 0; l < kernels.size(); ++l) {
    prod *= kernel_eval(kernels[l], a.layers[l].row(i), b.layers[l].row(j));
  }
  return prod;
}

ActivationStack zeros_like(const ActivationStack& s) {
  ActivationStack out;
  out.layers.reserve(s.depth());
  for (const auto& m : s.layers) out.layers.emplace_back(m.rows(), m.cols());
  return out;
}

/// Accumulates weight * d/d(rows) of the product kernel between row i of
/// stack a and row j of stack b, using leave-one-out products across layers.
void add_pair_grad(std::span<const KernelSpec> kernels, const ActivationStack& a,
                   std::size_t i, const ActivationStack& b, std::size_t j,
                   double weight, ActivationStack& ga, ActivationStack& gb) {
  const std::size_t depth = kernels.size();
  std::vector<double> kv(depth);
  for (std::size_t l = 0; l < depth; ++l) {
    kv[l] = kernel_eval(kernels[l], a.layers[l].row(i), b.layers[l].row(j));
  }
  std::vector<double> pre(depth + 1, 1.0), suf(depth + 1, 1.0);
  for (std::size_t l = 0; l < depth; ++l) pre[l + 1] = pre[l] * kv[l];
  for (std::size_t l = depth; l-- > 0;) suf[l] = suf[l + 1] * kv[l];
  for (std::size_t l = 0; l < depth; ++l) {
    const double loo = pre[l] * suf[l + 1];
    if (loo == 0.0) continue;
    const auto [gx, gy] = kernel_grad(kernels[l], a.layers[l].row(i), b.layers[l].row(j));
    auto ra = ga.layers[l].row(i);
    auto rb = gb.layers[l].row(j);
    const double c = weight * loo;
    for (std::size_t k = 0; k < gx.size(); ++k) {
      ra[k] += c * gx[k];
      rb[k] += c * gy[k];
    }
  }
}

}  // namespace

double mmd(const KernelSpec& spec, const Matrix& xs, const Matrix& xt,
           Estimator estimator) {
  const std::vector<KernelSpec> kernels{spec};
  return jmmd(kernels, ActivationStack::single(xs), ActivationStack::single(xt),
              estimator);
}

double jmmd(std::span<const KernelSpec> kernels, const ActivationStack& zs,
            const ActivationStack& zt, Estimator estimator) {
  if (estimator == Estimator::LinearTime) return jmmd_linear(kernels, zs, zt);
  validate_stacks(kernels, zs, zt, "jmmd");
  const double value = quadratic_estimate(kernels, zs, zt, estimator);
  if (!std::isfinite(value)) throw NumericalError("jmmd: non-finite estimate");
  return value;
}

double jmmd_linear(std::span<const KernelSpec> kernels, const ActivationStack& zs,
                   const ActivationStack& zt) {
  validate_stacks(kernels, zs, zt, "jmmd_linear");
  const std::size_t n = zs.batch();
  if (zt.batch() != n) {
    throw ShapeError("jmmd_linear: sample sizes differ, " + std::to_string(n) +
                     " vs " + std::to_string(zt.batch()) +
                     " (equal half-batches required)");
  }
  if (n % 2 != 0) {
    throw ShapeError("jmmd_linear: sample size must be even, got " +
                     std::to_string(n));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    sum += joint_kernel_rows(kernels, zs, i, zs, i + 1);
    sum += joint_kernel_rows(kernels, zt, i, zt, i + 1);
    sum -= joint_kernel_rows(kernels, zs, i, zt, i + 1);
    sum -= joint_kernel_rows(kernels, zt, i, zs, i + 1);
  }
  const double value = 2.0 * sum / static_cast<double>(n);
  if (!std::isfinite(value)) throw NumericalError("jmmd_linear: non-finite estimate");
  return value;
}

std::pair<ActivationStack, ActivationStack> jmmd_grad(
    std::span<const KernelSpec> kernels, const ActivationStack& zs,
    const ActivationStack& zt, Estimator estimator) {
  validate_stacks(kernels, zs, zt, "jmmd_grad");
  ActivationStack gs = zeros_like(zs);
  ActivationStack gt = zeros_like(zt);
  const std::size_t ns = zs.batch(), nt = zt.batch();

  if (estimator == Estimator::LinearTime) {
    if (nt != ns || ns % 2 != 0) {
      throw ShapeError("jmmd_grad: linear-time estimator needs equal, even sizes");
    }
    const double w = 2.0 / static_cast<double>(ns);
    for (std::size_t i = 0; i + 1 < ns; i += 2) {
      add_pair_grad(kernels, zs, i, zs, i + 1, w, gs, gs);
      add_pair_grad(kernels, zt, i, zt, i + 1, w, gt, gt);
      add_pair_grad(kernels, zs, i, zt, i + 1, -w, gs, gt);
      add_pair_grad(kernels, zt, i, zs, i + 1, -w, gt, gs);
    }
    return {std::move(gs), std::move(gt)};
  }

  const bool unbiased = estimator == Estimator::Unbiased;
  if (unbiased && (ns < 2 || nt < 2)) {
    throw ShapeError("jmmd_grad: the unbiased estimator needs at least 2 rows per domain");
  }
  const double wss = unbiased ? 1.0 / (static_cast<double>(ns) * (ns - 1.0))
                              : 1.0 / (static_cast<double>(ns) * ns);
  const double wtt = unbiased ? 1.0 / (static_cast<double>(nt) * (nt - 1.0))
                              : 1.0 / (static_cast<double>(nt) * nt);
  const double wst = -2.0 / (static_cast<double>(ns) * nt);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < ns; ++j) {
      if (unbiased && i == j) continue;
      add_pair_grad(kernels, zs, i, zs, j, wss, gs, gs);
    }
  }
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (unbiased && i == j) continue;
      add_pair_grad(kernels, zt, i, zt, j, wtt, gt, gt);
    }
  }
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      add_pair_grad(kernels, zs, i, zt, j, wst, gs, gt);
    }
  }
  return {std::move(gs), std::move(gt)};
}

}  // namespace jmmd
