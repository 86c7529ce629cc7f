// Acceptance suite. Prints one PASS/FAIL line per criterion.
//   renyi_acceptance                 run all criteria
//   renyi_acceptance --criterion N   run criterion N only
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/fisher_f.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "renyi/distributions.hpp"
#include "renyi/estimator.hpp"
#include "renyi/gof.hpp"
#include "renyi/knn.hpp"
#include "renyi/montecarlo.hpp"
#include "renyi/normality.hpp"

using namespace renyi;

namespace {

constexpr std::uint64_t kRoot = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome kd_tree_equals_brute_force() {
  Rng rng(Seed{kRoot, 0});
  int mismatches = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const int k = 1 + static_cast<int>(rng.next_u64() % 5);
    const std::size_t n = k + 1 + rng.next_u64() % (600 - k);
    Matrix x(n, m);
    switch (inst % 4) {
      case 0:
        for (double& v : x.data()) v = rng.uniform();
        break;
      case 1:
        rng.normal_vector(x.data());
        break;
      case 2:  // integer lattice values: many exact ties
        for (double& v : x.data()) v = static_cast<double>(rng.next_u64() % 7);
        break;
      default:  // heavy tails
        for (double& v : x.data()) v = rng.normal() / rng.uniform_open();
        break;
    }
    if (!(knn_all(x, k) == knn_brute(x, k))) ++mismatches;
  }
  return {mismatches == 0, std::to_string(200 - mismatches) + "/200 instances identical"};
}

Outcome closed_form_entropy_vs_quadrature() {
  using oracle::Kind;
  struct Case {
    oracle::Elliptic e;
    double q;
  };
  const Case cases[] = {
      {{Kind::Gaussian, 1, 0, {0.3, 0}, 2.0, 0, 0}, 0.5},
      {{Kind::Gaussian, 1, 0, {0, 0}, 1.0, 0, 0}, 2.0},
      {{Kind::Gaussian, 2, 0, {1, -1}, 1.5, 0.4, 0.8}, 0.7},
      {{Kind::Gaussian, 2, 0, {0, 0}, 1.0, 0, 1.0}, 3.0},
      {{Kind::Student, 1, 3, {0, 0}, 1.0, 0, 0}, 0.9},
      {{Kind::Student, 1, 5, {2, 0}, 0.5, 0, 0}, 1.5},
      {{Kind::Student, 2, 5, {0, 0}, 1.0, 0, 1.0}, 1.0 - 2.0 / 7.0},
      {{Kind::Student, 2, 4, {0.5, 0.5}, 2.0, -0.6, 1.0}, 0.8},
      {{Kind::Pearson, 1, 2, {0, 0}, 1.0, 0, 0}, 1.5},
      {{Kind::Pearson, 1, 0.5, {-1, 0}, 3.0, 0, 0}, 0.6},
      {{Kind::Pearson, 2, 2, {0, 0}, 1.0, 0, 1.0}, 1.5},
      {{Kind::Pearson, 2, 3, {1, 2}, 2.0, 0.5, 1.0}, 4.0 / 3.0},
  };
  double worst = 0.0;
  for (const Case& c : cases) {
    const auto& e = c.e;
    std::vector<double> a(e.a, e.a + e.m);
    SymMatrix s(e.m);
    s.set(0, 0, e.s11);
    if (e.m == 2) {
      s.set(1, 0, e.s12);
      s.set(1, 1, e.s22);
    }
    const DistributionSpec spec = e.kind == Kind::Gaussian  ? DistributionSpec::gaussian(a, s)
                                  : e.kind == Kind::Student ? DistributionSpec::student(e.shape, a, s)
                                                            : DistributionSpec::pearson2(e.shape, a, s);
    worst = std::max(worst, std::abs(renyi_entropy_exact(spec, c.q) -
                                     oracle::renyi_entropy_quadrature(e, c.q)));
  }
  return {worst <= 1e-5, "12 combinations, max |exact - quadrature| = " + fmt("%.2e", worst)};
}

Outcome estimator_consistency() {
  const auto spec = DistributionSpec::standard(Family::Gaussian, 0.0, 2);
  const double exact = renyi_entropy_exact(spec, 0.9);
  const std::size_t ns[] = {1000, 2000, 4000};
  bool ok = true;
  std::string detail;
  for (int k : {1, 2, 3}) {
    double err[3] = {0, 0, 0};
    for (std::uint64_t r = 0; r < 30; ++r) {
      const SampleMatrix full = sample(spec, 4000, Seed{kRoot, r});
      for (int i = 0; i < 3; ++i) err[i] += std::abs(estimate_h(full.head(ns[i]), k, 0.9) - exact) / 30;
    }
    const bool k_ok = err[0] > err[1] && err[1] > err[2] && err[2] <= 0.05;
    ok = ok && k_ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%sk=%d: %.4f > %.4f > %.4f", detail.empty() ? "" : "; ", k,
                  err[0], err[1], err[2]);
    detail += buf;
  }
  return {ok, "mean |h_hat - H| " + detail};
}

ExperimentConfig rate_config(Family f) {
  ExperimentConfig c;
  c.kind = ExperimentKind::Rate;
  c.family = f;
  c.m = 2;
  c.replicates = 50;
  c.seed = kRoot;
  if (f == Family::Student) {
    c.shape = 5.0;
    c.k_values = {1};
    for (std::size_t n = 500; n <= 5000; n += 500) c.n_schedule.push_back(n);
  } else {
    c.shape = 2.0;
    c.k_values = {2};
    for (std::size_t n = 50; n <= 500; n += 50) c.n_schedule.push_back(n);
  }
  return c;
}

Outcome rate(Family f, double lo, double hi) {
  const ExperimentReport r = run_rate(rate_config(f), 0);
  const double slope = r.rate_fits.at(0).slope;
  return {slope >= lo && slope <= hi,
          "slope of log mean|W| vs log N = " + fmt("%.4f", slope) + " (band [" + fmt("%.2f", lo) +
              ", " + fmt("%.2f", hi) + "])"};
}

Outcome student_rate() { return rate(Family::Student, -0.75, -0.30); }
Outcome pearson_rate() { return rate(Family::PearsonII, -0.95, -0.45); }

FitResult point_fit(Family f, double shape, int k) {
  const SampleMatrix x = sample(DistributionSpec::standard(f, shape, 3), 1000, Seed{kRoot, 0});
  return fit_shape(x, k, f, default_bounds(f));
}

Outcome point_estimation() {
  // Values recorded on the first run with root seed 1.
  constexpr double kPinnedNu = 4.3906554703;
  constexpr double kPinnedGamma = 1.05;
  const FitResult s = point_fit(Family::Student, 4.0, 1);
  const FitResult p = point_fit(Family::PearsonII, 3.0, 1);
  const FitResult p2 = point_fit(Family::PearsonII, 3.0, 2);
  const bool nu_ok = s.shape_hat >= 3.0 && s.shape_hat <= 6.5;
  const bool gamma_ok = p.shape_hat >= 2.0 && p.shape_hat <= 4.0;
  const bool pins_ok =
      std::abs(s.shape_hat - kPinnedNu) < 1e-6 && std::abs(p.shape_hat - kPinnedGamma) < 1e-6;
  std::string detail = "nu_hat = " + fmt("%.4f", s.shape_hat) + (nu_ok ? " in" : " NOT in") +
                       " [3, 6.5]; gamma_hat = " + fmt("%.4f", p.shape_hat) +
                       (gamma_ok ? " in" : " NOT in") + " [2, 4]" +
                       (p.at_boundary ? " (minimum on search boundary)" : "") +
                       (pins_ok ? "; regression pins match" : "; regression pins DIFFER") +
                       " [diagnostic, not scored: k=2 gives gamma_hat = " +
                       fmt("%.4f", p2.shape_hat) + "]";
  return {nu_ok && gamma_ok && pins_ok, detail};
}

Outcome w_scale_invariance() {
  const SampleMatrix xs = sample(DistributionSpec::standard(Family::Student, 4, 3), 1000, Seed{kRoot, 0});
  const SampleMatrix xp =
      sample(DistributionSpec::standard(Family::PearsonII, 3, 3), 1000, Seed{kRoot, 1});
  double worst = 0.0;
  for (int k : {1, 2}) {
    const double ws = w_student(xs, k, 4.0).statistic;
    const double wp = w_pearson(xp, k, 3.0).statistic;
    for (double c : {0.5, 2.0, 10.0}) {
      SampleMatrix ys = xs;
      SampleMatrix yp = xp;
      for (double& v : ys.data()) v *= c;
      for (double& v : yp.data()) v *= c;
      worst = std::max(worst, std::abs(w_student(ys, k, 4.0).statistic - ws));
      worst = std::max(worst, std::abs(w_pearson(yp, k, 3.0).statistic - wp));
    }
  }
  return {worst <= 1e-8, "max |W(cX) - W(X)| = " + fmt("%.2e", worst)};
}

// dᵀ Σ⁻¹ d by Gaussian elimination, independent of the library's Cholesky.
double quad_form(const SymMatrix& s, std::vector<double> d) {
  const std::size_t m = s.dim();
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i * m + j] = s(i, j);
  std::vector<double> x = d;
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = c + 1; r < m; ++r) {
      const double f = a[r * m + c] / a[c * m + c];
      for (std::size_t j = c; j < m; ++j) a[r * m + j] -= f * a[c * m + j];
      x[r] -= f * x[c];
    }
  for (std::size_t c = m; c-- > 0;) {
    for (std::size_t j = c + 1; j < m; ++j) x[c] -= a[c * m + j] * x[j];
    x[c] /= a[c * m + c];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < m; ++i) q += d[i] * x[i];
  return q;
}

Outcome sampler_laws() {
  auto scale = [](int m) {
    SymMatrix s(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) s.set(i, j, i == j ? 1.0 + i : 0.25);
    return s;
  };
  auto radii = [](const DistributionSpec& spec, std::uint64_t stream) {
    const SampleMatrix x = sample(spec, 10000, Seed{kRoot, stream});
    std::vector<double> r2(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
      std::vector<double> d(x.row(i).begin(), x.row(i).end());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] -= spec.location()[j];
      r2[i] = quad_form(spec.scale(), d);
    }
    return r2;
  };
  double min_p = 1.0;
  std::string detail;
  std::uint64_t stream = 0;
  for (auto [m, g] : {std::pair{2, 2.0}, {3, 3.0}}) {
    const auto spec = DistributionSpec::pearson2(g, std::vector<double>(m, 1.0), scale(m));
    const boost::math::beta_distribution<> law(0.5 * m, g + 1.0);
    const auto r2 = radii(spec, stream++);
    const double p = oracle::ks_p_value(
        oracle::ks_statistic(r2, [&](double v) { return boost::math::cdf(law, v); }), r2.size());
    min_p = std::min(min_p, p);
    detail += "P(" + std::to_string(m) + "," + fmt("%g", g) + ") p=" + fmt("%.3f", p) + " ";
  }
  for (auto [m, nu] : {std::pair{2, 5.0}, {3, 7.0}}) {
    const auto spec = DistributionSpec::student(nu, std::vector<double>(m, -1.0), scale(m));
    const boost::math::fisher_f_distribution<> law(m, nu);
    auto r2 = radii(spec, stream++);
    for (double& v : r2) v /= m;
    const double p = oracle::ks_p_value(
        oracle::ks_statistic(r2, [&](double v) { return boost::math::cdf(law, v); }), r2.size());
    min_p = std::min(min_p, p);
    detail += "T(" + std::to_string(m) + "," + fmt("%g", nu) + ") p=" + fmt("%.3f", p) + " ";
  }
  return {min_p > 0.001, "KS " + detail + "(level 0.001)"};
}

Outcome shapiro_wilk_calibration() {
  double mean_p = 0.0;
  double worst = 0.0;
  std::vector<double> x(100);
  for (std::uint64_t r = 0; r < 1000; ++r) {
    Rng rng(Seed{kRoot, r});
    rng.normal_vector(x);
    const SWResult base = shapiro_wilk(x);
    mean_p += base.p_value / 1000.0;
    if (r < 50) {
      for (auto [a, b] : {std::pair{2.5, -4.0}, {1e-3, 7.0}, {300.0, 1e3}}) {
        std::vector<double> y(x);
        for (double& v : y) v = a * v + b;
        worst = std::max(worst, std::abs(shapiro_wilk(y).w - base.w));
      }
    }
  }
  const bool ok = mean_p >= 0.45 && mean_p <= 0.55 && worst <= 1e-10;
  return {ok, "mean p = " + fmt("%.4f", mean_p) + ", max affine |dW| = " + fmt("%.2e", worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome thread_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("renyi_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"consistency", R"({"kind":"consistency","family":"student","m":2,"nu":5,"k":[1,2],
          "N":{"from":200,"to":1000,"step":200},"replicates":8,"seed":1})"},
      {"rate", R"({"kind":"rate","family":"pearson2","m":2,"gamma":2,"k":2,
          "N":{"from":50,"to":500,"step":50},"replicates":12,"seed":1})"},
      {"normality", R"({"kind":"normality_sweep","family":"student","m":2,"nu":10,"k":1,
          "N":[300],"replicates":4,"batch_size":20,"seed":1})"},
      {"fit", R"({"kind":"fit_curve","family":"pearson2","m":3,"gamma":3,"k":[1,2],
          "N":1000,"replicates":1,"seed":1})"},
  };
  int identical = 0;
  for (const auto& [name, text] : configs) {
    const fs::path cfg = dir / (name + ".json");
    std::ofstream(cfg) << text;
    std::ostringstream out;
    std::ostringstream err;
    std::string csv[2];
    std::string json[2];
    int i = 0;
    for (const char* threads : {"1", "4"}) {
      const fs::path prefix = dir / (name + "_t" + threads);
      const int code = cli::run({"--threads", threads, "experiment", cfg.string(), "-o", prefix.string()},
                                out, err);
      if (code != 0) return {false, name + " experiment failed: " + err.str()};
      csv[i] = slurp(prefix.string() + ".csv");
      json[i] = slurp(prefix.string() + ".json");
      ++i;
    }
    if (!csv[0].empty() && csv[0] == csv[1] && json[0] == json[1]) ++identical;
  }
  fs::remove_all(dir);
  return {identical == 4, std::to_string(identical) +
                              "/4 experiments byte-identical (CSV and JSON) for --threads 1 vs 4"};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"kd-tree kNN equals brute force", kd_tree_equals_brute_force},
      {"closed-form entropy vs quadrature", closed_form_entropy_vs_quadrature},
      {"estimator consistency (Gaussian, q=0.9)", estimator_consistency},
      {"Student rate slope", student_rate},
      {"Pearson II rate slope", pearson_rate},
      {"point estimation of nu and gamma", point_estimation},
      {"W invariant under data scaling", w_scale_invariance},
      {"sampler radial laws (KS)", sampler_laws},
      {"Shapiro-Wilk calibration and affine invariance", shapiro_wilk_calibration},
      {"thread-count determinism of experiment output", thread_determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "no criterion %d\n", id);
      return 2;
    }
    const Criterion& c = criteria[id - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
