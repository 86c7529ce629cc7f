#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "renyi/distributions.hpp"
#include "renyi/error.hpp"
#include "renyi/estimator.hpp"
#include "renyi/gof.hpp"

using namespace renyi;

namespace {

// W with an exact H_q in place of the estimate: the population value when the
// data law is `truth` and its covariance is `cov`.
double population_w(Family f, int m, double shape, const DistributionSpec& truth,
                    const SymMatrix& cov) {
  const MaxEntropy hm = f == Family::Student ? h_max_student(m, shape, cov)
                                             : h_max_pearson(m, shape, cov);
  return hm.h_max - renyi_entropy_exact(truth, hm.q);
}

}  // namespace

TEST(Order, Mappings) {
  EXPECT_DOUBLE_EQ(student_order(2, 5.0), 1.0 - 2.0 / 7.0);
  EXPECT_DOUBLE_EQ(student_order(3, 4.0), 1.0 - 2.0 / 7.0);
  EXPECT_NEAR(pearson_order(3.0), 4.0 / 3.0, 1e-15);
  EXPECT_EQ(pearson_order(1.0), 2.0);
  // ν > 2 ⇔ q > m/(m+2)
  for (int m : {1, 2, 5}) {
    EXPECT_GT(student_order(m, 2.0001), m / (m + 2.0));
    EXPECT_NEAR(student_order(m, 2.0), m / (m + 2.0), 1e-15);
  }
}

TEST(HMax, StudentConstantMatchesQuadrature) {
  const double q = student_order(2, 5.0);
  // Σ = (1 − 2/ν)·C with C = ν/(ν−2)·I gives Σ = I
  const MaxEntropy hm = h_max_student(2, 5.0, SymMatrix::identity(2).scaled(5.0 / 3.0));
  EXPECT_NEAR(hm.log_det_sigma, 0.0, 1e-14);
  const oracle::Elliptic e{oracle::Kind::Student, 2, 5.0, {0, 0}, 1, 0, 1};
  EXPECT_NEAR(hm.h_max, oracle::renyi_entropy_quadrature(e, q), 1e-5);
}

TEST(HMax, PearsonConstantMatchesQuadrature) {
  // γ = 2, m = 2: Σ = (2γ + m + 2)·C = 8·C
  const MaxEntropy hm = h_max_pearson(2, 2.0, SymMatrix::identity(2).scaled(1.0 / 8.0));
  EXPECT_NEAR(hm.q, 1.5, 1e-15);
  const oracle::Elliptic e{oracle::Kind::Pearson, 2, 2.0, {0, 0}, 1, 0, 1};
  EXPECT_NEAR(hm.h_max, oracle::renyi_entropy_quadrature(e, 1.5), 1e-5);
}

TEST(HMax, Domain) {
  EXPECT_THROW(h_max_student(2, 2.0, SymMatrix::identity(2)), DomainError);
  EXPECT_THROW(h_max_pearson(2, 0.0, SymMatrix::identity(2)), DomainError);
  SymMatrix singular(2);
  singular.set(0, 0, 1);
  singular.set(1, 0, 1);
  singular.set(1, 1, 1);
  EXPECT_THROW(h_max_student(2, 4.0, singular), NotPositiveDefinite);
}

TEST(PopulationW, StudentIsZeroAtTruthAndPositiveElsewhere) {
  for (auto [m, nu0] : {std::pair{2, 5.0}, {3, 4.0}, {1, 7.0}}) {
    const auto truth = DistributionSpec::standard(Family::Student, nu0, m);
    const SymMatrix cov = SymMatrix::identity(m).scaled(nu0 / (nu0 - 2.0));
    EXPECT_NEAR(population_w(Family::Student, m, nu0, truth, cov), 0.0, 1e-12);
    for (double nu : {2.2, 2.5, 3.0, 6.0, 10.0, 50.0}) {
      if (nu == nu0) continue;
      EXPECT_GT(population_w(Family::Student, m, nu, truth, cov), 0.0) << m << " " << nu;
    }
  }
}

TEST(PopulationW, PearsonIsZeroAtTruthAndPositiveElsewhere) {
  for (auto [m, g0] : {std::pair{2, 2.0}, {3, 3.0}}) {
    const auto truth = DistributionSpec::standard(Family::PearsonII, g0, m);
    const SymMatrix cov = SymMatrix::identity(m).scaled(1.0 / (m + 2.0 * g0 + 2.0));
    EXPECT_NEAR(population_w(Family::PearsonII, m, g0, truth, cov), 0.0, 1e-12);
    for (double g : {0.5, 1.05, 1.5, 4.0, 6.0}) {
      EXPECT_GT(population_w(Family::PearsonII, m, g, truth, cov), 0.0) << m << " " << g;
    }
  }
}

TEST(PopulationW, GaussianAgainstStudentIsPositive) {
  const auto g = DistributionSpec::standard(Family::Gaussian, 0, 2);
  for (double nu : {3.0, 5.0, 30.0})
    EXPECT_GT(population_w(Family::Student, 2, nu, g, SymMatrix::identity(2)), 0.0);
}

TEST(WStudent, IdentityWithComponents) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::Student, 5, 2), 1000, Seed{40, 0});
  const TestResult r = w_student(x, 1, 5.0);
  EXPECT_EQ(r.statistic, r.h_max - r.h_hat);
  EXPECT_EQ(r.h_hat, estimate_h(x, 1, r.q));
  const MaxEntropy hm = h_max_student(2, 5.0, sample_mean_cov(x).cov);
  EXPECT_EQ(r.h_max, hm.h_max);
  EXPECT_EQ(r.log_det_sigma_hat, hm.log_det_sigma);
  EXPECT_EQ(r.family, Family::Student);
  EXPECT_EQ(r.n, 1000u);
  EXPECT_EQ(r.m, 2);
  EXPECT_EQ(r.k, 1);
  EXPECT_EQ(r.shape, 5.0);
}

TEST(WStudent, NullSampleIsSmall) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::Student, 5, 2), 5000, Seed{41, 0});
  const double w = w_student(x, 1, 5.0).statistic;
  EXPECT_LE(std::abs(w), 0.1);
  EXPECT_NEAR(w, 0.0066645567410588, 1e-9);  // pinned for this seed
}

TEST(WStudent, GaussianDataApproachesPositiveConstant) {
  const auto g = DistributionSpec::standard(Family::Gaussian, 0, 2);
  const double limit = population_w(Family::Student, 2, 5.0, g, SymMatrix::identity(2));
  EXPECT_GT(limit, 0.0);
  const SampleMatrix x = sample(g, 5000, Seed{42, 0});
  EXPECT_NEAR(w_student(x, 1, 5.0).statistic, limit, 0.05);
}

TEST(WPearson, NullSampleIsSmall) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::PearsonII, 2, 2), 500, Seed{43, 0});
  const TestResult r = w_pearson(x, 2, 2.0);
  EXPECT_EQ(r.statistic, r.h_max - r.h_hat);
  EXPECT_NEAR(r.statistic, 0.068469988342011, 1e-9);  // pinned for this seed
  // single draws scatter with sd near 0.07 at this size, so check the mean
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const SampleMatrix y =
        sample(DistributionSpec::standard(Family::PearsonII, 2, 2), 500, Seed{143, s});
    sum += w_pearson(y, 2, 2.0).statistic;
  }
  EXPECT_LE(std::abs(sum / 40.0), 0.035);
}

TEST(WPearson, Domain) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::PearsonII, 2, 2), 100, Seed{44, 0});
  EXPECT_THROW(w_pearson(x, 2, 0.4), DomainError);  // k ≤ 1/γ
  EXPECT_NO_THROW(w_pearson(x, 3, 0.4));
  EXPECT_THROW(w_student(x, 1, 2.0), DomainError);
}

TEST(WStatistic, ScaleInvariance) {
  const SampleMatrix xs = sample(DistributionSpec::standard(Family::Student, 4, 3), 800, Seed{45, 0});
  const SampleMatrix xp = sample(DistributionSpec::standard(Family::PearsonII, 3, 3), 800, Seed{45, 1});
  for (double c : {0.5, 2.0, 10.0}) {
    SampleMatrix ys = xs;
    SampleMatrix yp = xp;
    for (double& v : ys.data()) v *= c;
    for (double& v : yp.data()) v *= c;
    EXPECT_NEAR(w_student(ys, 1, 4.0).statistic, w_student(xs, 1, 4.0).statistic, 1e-8);
    EXPECT_NEAR(w_pearson(yp, 1, 3.0).statistic, w_pearson(xp, 1, 3.0).statistic, 1e-8);
  }
}

TEST(WStatistic, CachedEvaluatorMatchesDirect) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::Student, 4, 2), 600, Seed{46, 0});
  const GofStatistic st(x, 2);
  for (double nu : {2.5, 4.0, 9.0}) EXPECT_EQ(st.student(nu).statistic, w_student(x, 2, nu).statistic);
  for (double g : {1.0, 3.0}) EXPECT_EQ(st.pearson(g).statistic, w_pearson(x, 2, g).statistic);
  EXPECT_EQ(st.evaluate(Family::Student, 4.0).statistic, st.student(4.0).statistic);
}

TEST(WStatistic, NullMeanAbsDecreasesWithN) {
  struct Case {
    Family f;
    int m;
    double shape;
  };
  for (const Case& c : {Case{Family::Student, 2, 5.0}, Case{Family::Student, 3, 7.0},
                        Case{Family::PearsonII, 2, 2.0}, Case{Family::PearsonII, 3, 3.0}}) {
    const auto spec = DistributionSpec::standard(c.f, c.shape, c.m);
    const std::size_t ns[] = {500, 2500, 5000};
    double mean_abs[3] = {0, 0, 0};
    for (std::uint64_t r = 0; r < 30; ++r) {
      const SampleMatrix full = sample(spec, 5000, Seed{47, r});
      for (int i = 0; i < 3; ++i) {
        const GofStatistic st(full.head(ns[i]), 2);
        mean_abs[i] += std::abs(st.evaluate(c.f, c.shape).statistic) / 30.0;
      }
    }
    EXPECT_GT(mean_abs[0], mean_abs[1]) << family_name(c.f) << " m=" << c.m;
    EXPECT_GT(mean_abs[1], mean_abs[2]) << family_name(c.f) << " m=" << c.m;
  }
}

TEST(FitShape, MinimumIsBelowGrid) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::Student, 4, 3), 1000, Seed{48, 0});
  const FitResult fit = fit_shape(x, 1, Family::Student, {2.5, 10.0});
  ASSERT_GE(fit.trace.size(), 40u);
  double grid_min = INFINITY;
  for (std::size_t i = 0; i < 40; ++i) grid_min = std::min(grid_min, fit.trace[i].second);
  EXPECT_LE(fit.statistic_at_min, grid_min);
  for (const auto& [s, w] : fit.trace) EXPECT_LE(fit.statistic_at_min, w);
  EXPECT_EQ(fit.trace.front().first, 2.5);
  EXPECT_NEAR(fit.trace[39].first, 10.0, 1e-12);
  // log spacing
  EXPECT_NEAR(fit.trace[1].first / fit.trace[0].first, fit.trace[2].first / fit.trace[1].first, 1e-12);
  EXPECT_FALSE(fit.at_boundary);
}

TEST(FitShape, BoundaryIsFlagged) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::Student, 4, 3), 1000, Seed{49, 0});
  const FitResult fit = fit_shape(x, 1, Family::Student, {2.5, 3.0});
  EXPECT_TRUE(fit.at_boundary);
  EXPECT_NEAR(fit.shape_hat, 3.0, 2e-3);
}

TEST(FitShape, DomainOfBounds) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::Student, 4, 2), 300, Seed{50, 0});
  EXPECT_THROW(fit_shape(x, 1, Family::Student, {1.9, 10.0}), DomainError);
  EXPECT_THROW(fit_shape(x, 1, Family::Student, {5.0, 4.0}), DomainError);
  EXPECT_EQ(fit_shape(x, 1, Family::Student, {2.0, 10.0}).trace.front().first, 2.05);
  EXPECT_THROW(fit_shape(x, 1, Family::PearsonII, {0.9, 6.0}), DomainError);
  EXPECT_EQ(fit_shape(x, 1, Family::PearsonII, {1.0, 6.0}).trace.front().first, 1.05);
  EXPECT_EQ(fit_shape(x, 3, Family::PearsonII, {1.0, 6.0}).trace.front().first, 1.0 + 0.05);
  EXPECT_THROW(fit_shape(x, 1, Family::Gaussian, {1.0, 6.0}), DomainError);
}

TEST(FitShape, DefaultBounds) {
  EXPECT_EQ(default_bounds(Family::Student).lo, 2.5);
  EXPECT_EQ(default_bounds(Family::Student).hi, 10.0);
  EXPECT_EQ(default_bounds(Family::PearsonII).lo, 1.0);
  EXPECT_EQ(default_bounds(Family::PearsonII).hi, 6.0);
}

TEST(FitShape, ThreadCountDoesNotMatter) {
  const SampleMatrix x = sample(DistributionSpec::standard(Family::PearsonII, 3, 3), 700, Seed{51, 0});
  FitOptions one;
  FitOptions many;
  many.threads = 4;
  const FitResult a = fit_shape(x, 2, Family::PearsonII, {1.0, 6.0}, one);
  const FitResult b = fit_shape(x, 2, Family::PearsonII, {1.0, 6.0}, many);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.shape_hat, b.shape_hat);
}
