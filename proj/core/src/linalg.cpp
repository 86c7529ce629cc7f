#include "renyi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "renyi/error.hpp"

namespace renyi {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DomainError("matrix data size " + std::to_string(data_.size()) + " does not match " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::head(std::size_t n) const {
  n = std::min(n, rows_);
  return Matrix(n, cols_, std::vector<double>(data_.begin(), data_.begin() + n * cols_));
}

SymMatrix::SymMatrix(Matrix dense) : a_(std::move(dense)) {
  if (a_.rows() != a_.cols()) throw DomainError("symmetric matrix must be square");
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (a_(i, j) != a_(j, i)) throw DomainError("matrix is not symmetric");
}

SymMatrix SymMatrix::identity(std::size_t dim) { return SymMatrix(Matrix::identity(dim)); }

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::scaled(double c) const {
  SymMatrix s(*this);
  for (double& v : s.a_.data()) v *= c;
  return s;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : a_.data()) m = std::max(m, std::abs(v));
  return m;
}

Cholesky cholesky(const SymMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 0) throw DomainError("cholesky of an empty matrix");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double tol = 1e-12 * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > tol)) {
      throw NotPositiveDefinite("matrix is not positive definite (pivot " + std::to_string(j) +
                                " = " + std::to_string(pivot) + ")");
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / d;
    }
  }
  return Cholesky(std::move(l));
}

void Cholesky::forward_solve(std::span<double> b) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * b[k];
    b[i] = s / l_(i, i);
  }
}

double Cholesky::quadratic_form(std::span<const double> b) const {
  std::vector<double> y(b.begin(), b.end());
  forward_solve(y);
  double q = 0.0;
  for (double v : y) q += v * v;
  return q;
}

void Cholesky::multiply_lower(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k) s += l_(i, k) * x[k];
    y[i] = s;
  }
}

Matrix Cholesky::reconstruct() const {
  const std::size_t n = dim();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= j; ++k) s += l_(i, k) * l_(j, k);
      a(i, j) = s;
      a(j, i) = s;
    }
  return a;
}

double log_det(const Cholesky& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.dim(); ++i) s += std::log(c.lower()(i, i));
  return 2.0 * s;
}

MeanCov sample_mean_cov(const SampleMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  if (n < 2) throw TooFewRows("sample covariance needs at least 2 rows, got " + std::to_string(n));

  std::vector<double> mean(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) mean[j] += x(i, j);
  for (double& v : mean) v /= static_cast<double>(n);

  SymMatrix cov(m);
  std::vector<double> acc(m * m, 0.0);
  std::vector<double> d(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) d[j] = x(i, j) - mean[j];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b <= a; ++b) acc[a * m + b] += d[a] * d[b];
  }
  const double denom = static_cast<double>(n - 1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b <= a; ++b) cov.set(a, b, acc[a * m + b] / denom);
  return {std::move(mean), std::move(cov)};
}

}  // namespace renyi
