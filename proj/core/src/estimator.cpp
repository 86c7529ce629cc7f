#include "renyi/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "renyi/error.hpp"
#include "renyi/special.hpp"

namespace renyi {
namespace {

void check_order(int k, double q) {
  if (!std::isfinite(q) || !(q > 0.0)) throw DomainError("q must be a positive finite number");
  if (q == 1.0) throw DomainError("q = 1 (Shannon limit) is not supported");
  if (k < 1) throw DomainError("k must be >= 1");
  // log_c_k re-validates k + 1 - q > 0.
}

}  // namespace

EntropyEstimate estimate_g(const KnnDistances& rho, int m, int k, double q) {
  check_order(k, q);
  const double log_ck = log_c_k(k, q);
  const std::size_t n = rho.n();
  if (k > rho.k_max()) throw KTooLarge("k exceeds the computed neighbour order");
  if (n < static_cast<std::size_t>(k) + 2) {
    throw KTooLarge("estimator needs N >= k + 2 (N = " + std::to_string(n) +
                    ", k = " + std::to_string(k) + ")");
  }

  const double log_const =
      std::log(static_cast<double>(n - 1)) + log_ck + log_unit_ball_volume(m);
  const double power = 1.0 - q;

  std::vector<double> t(n);
  double t_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rho(i, k);
    if (r == 0.0) {
      if (q > 1.0) {
        throw DuplicatePoints("point " + std::to_string(i) +
                              " has a zero k-NN distance; q > 1 needs distinct points");
      }
      t[i] = -std::numeric_limits<double>::infinity();
      continue;
    }
    t[i] = power * (log_const + m * std::log(r));
    t_max = std::max(t_max, t[i]);
  }
  if (!std::isfinite(t_max)) throw DuplicatePoints("every k-NN distance is zero");

  // Neumaier summation of exp(t_i - t_max).
  double sum = 0.0;
  double comp = 0.0;
  for (double ti : t) {
    const double v = std::exp(ti - t_max);
    const double s = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  const double log_g = t_max + std::log(sum + comp) - std::log(static_cast<double>(n));

  EntropyEstimate e{};
  e.log_g_hat = log_g;
  e.g_hat = std::exp(log_g);
  e.h_hat = log_g / power;
  e.n = n;
  e.m = m;
  e.k = k;
  e.q = q;
  return e;
}

EntropyEstimate estimate_g(const SampleMatrix& x, int k, double q, unsigned threads) {
  check_order(k, q);
  (void)log_c_k(k, q);
  if (x.rows() < static_cast<std::size_t>(std::max(k, 0)) + 2) {
    throw KTooLarge("estimator needs N >= k + 2 (N = " + std::to_string(x.rows()) +
                    ", k = " + std::to_string(k) + ")");
  }
  const KnnDistances rho = knn_all(x, k, threads);
  return estimate_g(rho, static_cast<int>(x.cols()), k, q);
}

double estimate_h(const SampleMatrix& x, int k, double q, unsigned threads) {
  return estimate_g(x, k, q, threads).h_hat;
}

double critical_moment(const DistributionSpec& spec) {
  if (spec.family() == Family::Student) return spec.shape();
  return std::numeric_limits<double>::infinity();
}

bool check_moment_condition(const DistributionSpec& spec, double q, int order) {
  if (order != 1 && order != 2) throw DomainError("moment condition order must be 1 or 2");
  if (!(q > 0.0) || q == 1.0) throw DomainError("q must be positive and != 1");
  if (q > 1.0) return true;
  const double rc = critical_moment(spec);
  const double m = spec.dim();
  if (order == 1) return rc > m * (1.0 - q) / q;
  if (!(q > 0.5)) return false;
  return rc > 2.0 * m * (1.0 - q) / (2.0 * q - 1.0);
}

}  // namespace renyi
