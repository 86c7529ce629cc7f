#pragma once

#include <cstddef>

#include "renyi/distributions.hpp"
#include "renyi/knn.hpp"
#include "renyi/linalg.hpp"

namespace renyi {

/// Nearest-neighbour estimate of G_q(f) = ∫ f^q and of H_q = log(G_q) / (1−q).
struct EntropyEstimate {
  double g_hat;
  double log_g_hat;
  double h_hat;
  std::size_t n;
  int m;
  int k;
  double q;
};

/// Ĝ = (1/N) Σ ζ_i^{1−q} with ζ_i = (N−1) C_k V_m ρ_{i,k}^m.
///
/// Each term is formed in the log domain and the sum is a max-shifted,
/// compensated sum in index order, so large m and tiny ρ neither overflow
/// nor depend on thread count.
///
/// Throws DomainError (q = 1 or k + 1 − q <= 0), KTooLarge (N < k + 2) and
/// DuplicatePoints (q > 1 and some ρ_{i,k} = 0).
EntropyEstimate estimate_g(const SampleMatrix& x, int k, double q, unsigned threads = 1);

/// Same estimate from precomputed neighbour distances (k <= rho.k_max()).
/// Lets callers sweep q without repeating the neighbour search.
EntropyEstimate estimate_g(const KnnDistances& rho, int m, int k, double q);

double estimate_h(const SampleMatrix& x, int k, double q, unsigned threads = 1);

/// r_c(f) = sup{ r : E‖X‖^r < ∞ }. ν for Student, +inf otherwise.
double critical_moment(const DistributionSpec& spec);

/// Sufficient moment condition for convergence of Ĝ when 0 < q < 1:
/// order 1 (in mean) needs r_c > m(1−q)/q, order 2 (in mean square) needs
/// q > 1/2 and r_c > 2m(1−q)/(2q−1). Always true for q > 1.
bool check_moment_condition(const DistributionSpec& spec, double q, int order);

}  // namespace renyi
