#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace jmmd {

/// Dense row-major matrix of doubles. Datasets here are at most a few
/// thousand rows, so there is no blocked or sparse storage; every
/// operation uses a fixed summation order and is reproducible bit for bit.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Builds from nested initializer lists; all rows must have equal length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Standard product a*b; fails with the shapes reported if a.cols != b.rows.
/// Each output entry accumulates left to right over the inner index, so the
/// result is deterministic.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

/// Entry (i,j) = squared Euclidean distance between row i of a and row j of
/// b, computed by the expansion |a|^2 + |b|^2 - 2 a.b with a floor at zero
/// to kill negative round-off. Identical rows give an exact zero.
Matrix pairwise_sq_dists(const Matrix& a, const Matrix& b);

/// Numerically stable softmax (max-subtraction); the output sums to 1.
std::vector<double> softmax(std::span<const double> logits);

/// True when every entry is finite (no NaN/Inf).
bool all_finite(const Matrix& m);
bool all_finite(std::span<const double> v);

/// Throws NumericalError naming `what` if the matrix has non-finite entries.
void require_finite(const Matrix& m, const char* what);

}  // namespace jmmd
