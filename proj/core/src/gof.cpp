#include "renyi/gof.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "renyi/error.hpp"
#include "renyi/estimator.hpp"
#include "renyi/parallel.hpp"

namespace renyi {
namespace {

void require_student_shape(double nu) {
  if (!(nu > 2.0) || !std::isfinite(nu))
    throw DomainError("Student test needs nu > 2, got " + std::to_string(nu));
}

void require_pearson_shape(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError("Pearson II test needs gamma > 0, got " + std::to_string(gamma));
}

void require_pearson_k(int k, double gamma) {
  if (!(static_cast<double>(k) > 1.0 / gamma)) {
    throw DomainError("Pearson II statistic is only defined for k > 1/gamma (k = " +
                      std::to_string(k) + ", gamma = " + std::to_string(gamma) + ")");
  }
}

constexpr double kOpenBoundaryOffset = 0.05;

}  // namespace

double student_order(int m, double nu) { return 1.0 - 2.0 / (nu + m); }

double pearson_order(double gamma) { return 1.0 + 1.0 / gamma; }

MaxEntropy h_max_student(int m, double nu, const SymMatrix& cov_hat) {
  require_student_shape(nu);
  const double q = student_order(m, nu);
  const double log_det_sigma = m * std::log(1.0 - 2.0 / nu) + log_det(cholesky(cov_hat));
  return {0.5 * log_det_sigma + student_entropy_constant(m, q, nu), q, log_det_sigma};
}

MaxEntropy h_max_pearson(int m, double gamma, const SymMatrix& cov_hat) {
  require_pearson_shape(gamma);
  const double q = pearson_order(gamma);
  const double log_det_sigma = m * std::log(2.0 * gamma + m + 2.0) + log_det(cholesky(cov_hat));
  return {0.5 * log_det_sigma + pearson_entropy_constant(m, q, gamma), q, log_det_sigma};
}

GofStatistic::GofStatistic(const SampleMatrix& x, int k, unsigned threads)
    : rho_(knn_all(x, k, threads)),
      log_det_cov_(log_det(cholesky(sample_mean_cov(x).cov))),
      m_(static_cast<int>(x.cols())),
      k_(k) {
  if (x.rows() < static_cast<std::size_t>(k) + 2)
    throw KTooLarge("test statistic needs N >= k + 2");
}

TestResult GofStatistic::finish(Family family, double shape, const MaxEntropy& hm) const {
  const EntropyEstimate est = estimate_g(rho_, m_, k_, hm.q);
  TestResult r{};
  r.statistic = hm.h_max - est.h_hat;
  r.family = family;
  r.m = m_;
  r.k = k_;
  r.n = rho_.n();
  r.shape = shape;
  r.q = hm.q;
  r.h_max = hm.h_max;
  r.h_hat = est.h_hat;
  r.log_det_sigma_hat = hm.log_det_sigma;
  return r;
}

TestResult GofStatistic::student(double nu) const {
  require_student_shape(nu);
  const double q = student_order(m_, nu);
  const double log_det_sigma = m_ * std::log(1.0 - 2.0 / nu) + log_det_cov_;
  const MaxEntropy hm{0.5 * log_det_sigma + student_entropy_constant(m_, q, nu), q,
                      log_det_sigma};
  return finish(Family::Student, nu, hm);
}

TestResult GofStatistic::pearson(double gamma) const {
  require_pearson_shape(gamma);
  require_pearson_k(k_, gamma);
  const double q = pearson_order(gamma);
  const double log_det_sigma = m_ * std::log(2.0 * gamma + m_ + 2.0) + log_det_cov_;
  const MaxEntropy hm{0.5 * log_det_sigma + pearson_entropy_constant(m_, q, gamma), q,
                      log_det_sigma};
  return finish(Family::PearsonII, gamma, hm);
}

TestResult GofStatistic::evaluate(Family family, double shape) const {
  switch (family) {
    case Family::Student:
      return student(shape);
    case Family::PearsonII:
      return pearson(shape);
    case Family::Gaussian:
      break;
  }
  throw DomainError("goodness-of-fit statistics exist for student and pearson2 only");
}

TestResult w_student(const SampleMatrix& x, int k, double nu, unsigned threads) {
  require_student_shape(nu);
  return GofStatistic(x, k, threads).student(nu);
}

TestResult w_pearson(const SampleMatrix& x, int k, double gamma, unsigned threads) {
  require_pearson_shape(gamma);
  require_pearson_k(k, gamma);
  return GofStatistic(x, k, threads).pearson(gamma);
}

ShapeBounds default_bounds(Family family) {
  if (family == Family::PearsonII) return {1.0, 6.0};
  return {2.5, 10.0};
}

FitResult fit_shape(const GofStatistic& stat, Family family, ShapeBounds bounds,
                    const FitOptions& options) {
  if (family == Family::Gaussian) throw DomainError("cannot fit a shape for the gaussian family");
  if (options.grid_points < 1) throw DomainError("grid_points must be >= 1");
  if (!(options.tolerance > 0.0)) throw DomainError("tolerance must be positive");

  const double limit =
      family == Family::Student ? 2.0 : std::max(1.0, 1.0 / static_cast<double>(stat.k()));
  if (!(bounds.lo >= limit) || !std::isfinite(bounds.hi)) {
    throw DomainError("lower bound " + std::to_string(bounds.lo) + " is outside the domain (" +
                      std::to_string(limit) + ", inf)");
  }
  double lo = bounds.lo == limit ? limit + kOpenBoundaryOffset : bounds.lo;
  const double hi = bounds.hi;
  if (options.grid_points > 1 && !(hi > lo)) throw DomainError("fit bounds need hi > lo");

  auto eval = [&](double s) { return stat.evaluate(family, s).statistic; };

  const auto n = static_cast<std::size_t>(options.grid_points);
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = lo;
  } else {
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
      grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    grid.front() = lo;
    grid.back() = hi;
  }
  std::vector<double> values(n);
  parallel_for(n, options.threads, [&](std::size_t i) { values[i] = eval(grid[i]); });

  FitResult result{};
  result.family = family;
  result.trace.reserve(n + 64);
  for (std::size_t i = 0; i < n; ++i) result.trace.emplace_back(grid[i], values[i]);

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.at_boundary = n > 1 && (best == 0 || best == n - 1);

  if (n > 1) {
    // Golden-section search on the bracket around the best grid point.
    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[best == n - 1 ? n - 1 : best + 1];
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    result.trace.emplace_back(c, fc);
    result.trace.emplace_back(d, fd);
    while (b - a > options.tolerance) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = eval(c);
        result.trace.emplace_back(c, fc);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = eval(d);
        result.trace.emplace_back(d, fd);
      }
    }
  }

  auto it = std::min_element(result.trace.begin(), result.trace.end(),
                             [](const auto& x, const auto& y) { return x.second < y.second; });
  result.shape_hat = it->first;
  result.statistic_at_min = it->second;
  return result;
}

FitResult fit_shape(const SampleMatrix& x, int k, Family family, ShapeBounds bounds,
                    const FitOptions& options) {
  const GofStatistic stat(x, k, options.threads);
  return fit_shape(stat, family, bounds, options);
}

}  // namespace renyi
