#pragma once

namespace renyi {

/// log Γ(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// log B(a, b) = log Γ(a) + log Γ(b) − log Γ(a+b).
double log_beta(double a, double b);

/// log of V_m = π^{m/2} / Γ(m/2 + 1), the volume of the unit ball in R^m.
double log_unit_ball_volume(int m);
double unit_ball_volume(int m);

/// Normalizing constant of the nearest-neighbour entropy estimator,
/// C_k = [Γ(k) / Γ(k+1−q)]^{1/(1−q)}.
/// Requires k ≥ 1, q ≠ 1 and k + 1 − q > 0; throws DomainError otherwise.
double log_c_k(int k, double q);
double c_k(int k, double q);

/// Standard normal CDF and upper tail.
double normal_cdf(double x);
double normal_sf(double x);

/// Inverse of the standard normal CDF for p in (0, 1).
double normal_quantile(double p);

}  // namespace renyi
