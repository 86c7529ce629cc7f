#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "renyi/distributions.hpp"
#include "renyi/knn.hpp"
#include "renyi/linalg.hpp"

namespace renyi {

/// Entropy-gap statistic W = H_q^max − Ĥ_{N,k}(m, q) and the pieces it is made of.
struct TestResult {
  double statistic;
  Family family;
  int m;
  int k;
  std::size_t n;
  double shape;  // ν for Student, γ for Pearson II
  double q;
  double h_max;
  double h_hat;
  double log_det_sigma_hat;
};

struct MaxEntropy {
  double h_max;
  double q;
  double log_det_sigma;
};

/// Order whose Rényi maximizer is the family: q = 1 − 2/(ν+m) and q = 1 + 1/γ.
double student_order(int m, double nu);
double pearson_order(double gamma);

/// Maximum Rényi entropy over densities with covariance `cov_hat`, attained by
/// T_m(a, (1−2/ν)C, ν). Throws DomainError for ν <= 2.
MaxEntropy h_max_student(int m, double nu, const SymMatrix& cov_hat);
/// Same for P_m(a, (2γ+m+2)C, γ). Throws DomainError for γ <= 0.
MaxEntropy h_max_pearson(int m, double gamma, const SymMatrix& cov_hat);

/// Holds the neighbour distances (fixed k) and log|Ĉ_N| of one sample so the
/// statistic can be evaluated for many shape values without redoing the
/// O(N log N) work.
class GofStatistic {
 public:
  GofStatistic(const SampleMatrix& x, int k, unsigned threads = 1);

  TestResult student(double nu) const;
  TestResult pearson(double gamma) const;
  TestResult evaluate(Family family, double shape) const;

  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  std::size_t n() const noexcept { return rho_.n(); }
  double log_det_cov() const noexcept { return log_det_cov_; }

 private:
  TestResult finish(Family family, double shape, const MaxEntropy& hm) const;

  KnnDistances rho_;
  double log_det_cov_;
  int m_;
  int k_;
};

TestResult w_student(const SampleMatrix& x, int k, double nu, unsigned threads = 1);
TestResult w_pearson(const SampleMatrix& x, int k, double gamma, unsigned threads = 1);

struct ShapeBounds {
  double lo;
  double hi;
};

/// ν ∈ [2.5, 10] and γ ∈ [1, 6].
ShapeBounds default_bounds(Family family);

struct FitOptions {
  int grid_points = 40;
  double tolerance = 1e-3;
  unsigned threads = 1;
};

struct FitResult {
  Family family;
  double shape_hat;
  double statistic_at_min;
  /// The coarse-grid minimum fell on lo or hi, so the true argmin may lie outside.
  bool at_boundary;
  /// Every (shape, statistic) evaluated: the log-spaced grid first, then the
  /// golden-section probes.
  std::vector<std::pair<double, double>> trace;
};

/// argmin of W over the shape parameter: log-spaced grid, then golden-section
/// refinement of the bracket around the best grid point.
/// Student needs lo >= 2, Pearson II needs lo >= max(1, 1/k); a lo equal to that
/// limit is moved 0.05 inside the open domain.
FitResult fit_shape(const SampleMatrix& x, int k, Family family, ShapeBounds bounds,
                    const FitOptions& options = {});

/// Same, reusing an existing statistic evaluator.
FitResult fit_shape(const GofStatistic& stat, Family family, ShapeBounds bounds,
                    const FitOptions& options = {});

}  // namespace renyi
