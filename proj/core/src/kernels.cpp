#include "jmmd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jmmd/errors.hpp"

namespace jmmd {

namespace {

void check_dims(std::span<const double> x, std::span<const double> y,
                const char* who) {
  if (x.size() != y.size()) {
    throw ShapeError(std::string(who) + ": vector dimensions differ, " +
                     std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
}

double sq_dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    s += d * d;
  }
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  check_dims(x, y, "kernel_eval");
  switch (spec.family) {
    case KernelFamily::Gaussian:
      return std::exp(-sq_dist(x, y) / spec.bandwidth);
    case KernelFamily::Linear:
      return dot(x, y);
  }
  throw ConfigError("kernel_eval: unknown kernel family");
}

Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("gram: column counts differ, " + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      out(i, j) = kernel_eval(spec, a.row(i), b.row(j));
  return out;
}

double median_bandwidth(const Matrix& data) {
  const std::size_t n = data.rows();
  if (n < 2) {
    throw ShapeError("median_bandwidth: need at least 2 rows, got " +
                     std::to_string(n));
  }
  const Matrix d2 = pairwise_sq_dists(data, data);
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dists.push_back(d2(i, j));
  std::sort(dists.begin(), dists.end());

  const std::size_t m = dists.size();
  const double median = (m % 2 == 1)
                            ? dists[m / 2]
                            : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
  if (median > 0.0) return median;

  // Duplicate-heavy data: fall back to the smallest positive distance.
  const auto pos = std::find_if(dists.begin(), dists.end(),
                                [](double v) { return v > 0.0; });
  return pos != dists.end() ? *pos : 1.0;
}

std::pair<std::vector<double>, std::vector<double>> kernel_grad(
    const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  check_dims(x, y, "kernel_grad");
  std::vector<double> gx(x.size()), gy(y.size());
  switch (spec.family) {
    case KernelFamily::Gaussian: {
      const double k = std::exp(-sq_dist(x, y) / spec.bandwidth);
      const double c = -2.0 / spec.bandwidth * k;
      for (std::size_t i = 0; i < x.size(); ++i) {
        gx[i] = c * (x[i] - y[i]);
        gy[i] = -gx[i];
      }
      break;
    }
    case KernelFamily::Linear:
      for (std::size_t i = 0; i < x.size(); ++i) {
        gx[i] = y[i];
        gy[i] = x[i];
      }
      break;
  }
  return {std::move(gx), std::move(gy)};
}

}  // namespace jmmd
