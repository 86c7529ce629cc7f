#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace renyi {

/// Dense row-major real matrix. Rows of a SampleMatrix are observations.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Takes ownership of `data`, which must hold rows*cols values in row-major order.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// The first `n` rows as a new matrix.
  Matrix head(std::size_t n) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using SampleMatrix = Matrix;

/// Symmetric matrix. Entries are only writable in mirrored pairs so the
/// stored values satisfy A(i,j) == A(j,i) bit for bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : a_(dim, dim) {}
  /// Throws DomainError unless `dense` is square and exactly symmetric.
  explicit SymMatrix(Matrix dense);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> d);

  std::size_t dim() const noexcept { return a_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_(i, j); }
  void set(std::size_t i, std::size_t j, double v) noexcept {
    a_(i, j) = v;
    a_(j, i) = v;
  }

  SymMatrix scaled(double c) const;
  double max_abs() const noexcept;
  const Matrix& dense() const noexcept { return a_; }

 private:
  Matrix a_;
};

/// Lower-triangular factor L with L Lᵀ = A.
class Cholesky {
 public:
  const Matrix& lower() const noexcept { return l_; }
  std::size_t dim() const noexcept { return l_.rows(); }

  /// Solves L y = b in place.
  void forward_solve(std::span<double> b) const;
  /// Returns bᵀ A⁻¹ b.
  double quadratic_form(std::span<const double> b) const;
  /// y = L x.
  void multiply_lower(std::span<const double> x, std::span<double> y) const;
  /// L Lᵀ.
  Matrix reconstruct() const;

 private:
  friend Cholesky cholesky(const SymMatrix&);
  explicit Cholesky(Matrix l) : l_(std::move(l)) {}
  Matrix l_;
};

/// Throws NotPositiveDefinite when a pivot falls to 1e-12 × max diagonal or below.
Cholesky cholesky(const SymMatrix& a);

/// log det A = 2 Σ log L_ii.
double log_det(const Cholesky& c);

struct MeanCov {
  std::vector<double> mean;
  SymMatrix cov;
};

/// Column means and the unbiased (N−1 divisor) sample covariance.
/// Throws TooFewRows when N < 2.
MeanCov sample_mean_cov(const SampleMatrix& x);

}  // namespace renyi
