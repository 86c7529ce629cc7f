#include "renyi/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "renyi/error.hpp"
#include "renyi/normality.hpp"
#include "renyi/parallel.hpp"

namespace renyi {

std::string_view kind_name(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Consistency:
      return "consistency";
    case ExperimentKind::Rate:
      return "rate";
    case ExperimentKind::NormalitySweep:
      return "normality_sweep";
    case ExperimentKind::FitCurve:
      return "fit_curve";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept {
  if (name == "consistency") return ExperimentKind::Consistency;
  if (name == "rate") return ExperimentKind::Rate;
  if (name == "normality_sweep" || name == "normality") return ExperimentKind::NormalitySweep;
  if (name == "fit_curve" || name == "fit") return ExperimentKind::FitCurve;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (family == Family::Gaussian)
    throw DomainError("experiments need family student or pearson2");
  if (m < 1) throw DomainError("m must be >= 1");
  if (k_values.empty()) throw DomainError("at least one k is required");
  for (int k : k_values)
    if (k < 1) throw DomainError("k values must be >= 1");
  if (n_schedule.empty()) throw DomainError("N schedule is empty");
  for (std::size_t i = 1; i < n_schedule.size(); ++i)
    if (!(n_schedule[i] > n_schedule[i - 1]))
      throw DomainError("N schedule must be strictly increasing");
  const int k_max = *std::max_element(k_values.begin(), k_values.end());
  if (n_schedule.front() < static_cast<std::size_t>(k_max) + 2)
    throw DomainError("smallest N must be >= k + 2");
  if (kind != ExperimentKind::FitCurve && replicates < 2)
    throw DomainError("replicates must be >= 2 (standard deviation undefined otherwise)");
  if (kind == ExperimentKind::Rate && n_schedule.size() < 4)
    throw DomainError("rate fits need at least 4 N values");
  if (kind == ExperimentKind::NormalitySweep && batch_size < 3)
    throw DomainError("normality sweep needs batch_size >= 3");
  if (kind == ExperimentKind::FitCurve) {
    if (grid_points < 1) throw DomainError("grid_points must be >= 1");
    return;
  }
  if (family == Family::Student && !(shape > 2.0)) throw DomainError("Student test needs nu > 2");
  if (family == Family::PearsonII) {
    if (!(shape > 0.0)) throw DomainError("Pearson II test needs gamma > 0");
    for (int k : k_values)
      if (!(k > 1.0 / shape)) throw DomainError("Pearson II statistic needs k > 1/gamma");
  }
}

PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> y) {
  if (n.size() != y.size() || n.size() < 2) throw DomainError("power-law fit needs >= 2 points");
  const double count = static_cast<double>(n.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(y[i] > 0.0)) throw NonPositiveMean("power-law fit needs positive data");
    mx += std::log(n[i]);
    my += std::log(y[i]);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double dx = std::log(n[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0)) throw DomainError("power-law fit needs distinct N values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

namespace {

struct MeanSd {
  double mean;
  double sd;
};

MeanSd mean_sd(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

DistributionSpec target(const ExperimentConfig& cfg) {
  return DistributionSpec::standard(cfg.family, cfg.shape, cfg.m);
}

// W for every (k, N) cell of one sample, cell index = ki * |N| + ni.
std::vector<double> cell_statistics(const ExperimentConfig& cfg, const SampleMatrix& full) {
  const std::size_t nn = cfg.n_schedule.size();
  std::vector<double> out(cfg.k_values.size() * nn);
  for (std::size_t ni = 0; ni < nn; ++ni) {
    const SampleMatrix x = full.head(cfg.n_schedule[ni]);
    for (std::size_t ki = 0; ki < cfg.k_values.size(); ++ki) {
      const GofStatistic stat(x, cfg.k_values[ki]);
      out[ki * nn + ni] = stat.evaluate(cfg.family, cfg.shape).statistic;
    }
  }
  return out;
}

}  // namespace

ExperimentReport run_consistency(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const DistributionSpec spec = target(cfg);
  const std::size_t n_max = cfg.n_schedule.back();
  const std::size_t cells = cfg.k_values.size() * cfg.n_schedule.size();

  std::vector<std::vector<double>> per_rep(cfg.replicates);
  parallel_for(cfg.replicates, threads, [&](std::size_t r) {
    const SampleMatrix full = sample(spec, n_max, Seed{cfg.seed, r});
    per_rep[r] = cell_statistics(cfg, full);
  });

  ExperimentReport report;
  report.config = cfg;
  const std::size_t nn = cfg.n_schedule.size();
  std::vector<double> column(cfg.replicates);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) column[r] = per_rep[r][c];
    const MeanSd s = mean_sd(column);
    double abs_sum = 0.0;
    for (double w : column) abs_sum += std::abs(w);
    report.rows.push_back(ReportRow{cfg.k_values[c / nn], cfg.shape, cfg.n_schedule[c % nn],
                                    cfg.replicates, s.mean, s.sd,
                                    abs_sum / static_cast<double>(cfg.replicates)});
  }
  return report;
}

ExperimentReport run_rate(const ExperimentConfig& cfg, unsigned threads) {
  ExperimentConfig c = cfg;
  c.kind = ExperimentKind::Rate;
  c.validate();
  ExperimentReport report = run_consistency(c, threads);
  report.config = c;
  const std::size_t nn = c.n_schedule.size();
  for (std::size_t ki = 0; ki < c.k_values.size(); ++ki) {
    std::vector<double> ns;
    std::vector<double> means;
    RateFit fit{c.k_values[ki], 0.0, 0.0, {}};
    for (std::size_t ni = 0; ni < nn; ++ni) {
      const ReportRow& row = report.rows[ki * nn + ni];
      if (row.mean_abs > 0.0) {
        ns.push_back(static_cast<double>(row.n));
        means.push_back(row.mean_abs);
      } else {
        fit.dropped_n.push_back(row.n);
        report.warnings.push_back("k=" + std::to_string(fit.k) + " N=" + std::to_string(row.n) +
                                  ": mean |W| is zero; dropped from rate fit");
      }
    }
    if (ns.size() < 4) {
      throw NonPositiveMean("rate fit for k=" + std::to_string(fit.k) +
                            " has fewer than 4 cells with a positive mean |W|");
    }
    const PowerLawFit pl = fit_power_law(ns, means);
    fit.slope = pl.slope;
    fit.intercept = pl.intercept;
    report.rate_fits.push_back(std::move(fit));
  }
  return report;
}

ExperimentReport run_normality_sweep(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const DistributionSpec spec = target(cfg);
  const std::size_t n_max = cfg.n_schedule.back();
  const std::size_t cells = cfg.k_values.size() * cfg.n_schedule.size();
  const std::size_t batch = cfg.batch_size;

  std::vector<std::vector<double>> p_values(cfg.replicates, std::vector<double>(cells));
  parallel_for(cfg.replicates, threads, [&](std::size_t o) {
    std::vector<std::vector<double>> stats(cells, std::vector<double>(batch));
    for (std::size_t j = 0; j < batch; ++j) {
      const Seed seed{cfg.seed, (static_cast<std::uint64_t>(o) << 32) | j};
      const std::vector<double> w = cell_statistics(cfg, sample(spec, n_max, seed));
      for (std::size_t c = 0; c < cells; ++c) stats[c][j] = w[c];
    }
    for (std::size_t c = 0; c < cells; ++c) p_values[o][c] = shapiro_wilk(stats[c]).p_value;
  });

  ExperimentReport report;
  report.config = cfg;
  const std::size_t nn = cfg.n_schedule.size();
  std::vector<double> column(cfg.replicates);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t o = 0; o < cfg.replicates; ++o) column[o] = p_values[o][c];
    const MeanSd s = mean_sd(column);
    report.rows.push_back(ReportRow{cfg.k_values[c / nn], cfg.shape, cfg.n_schedule[c % nn],
                                    cfg.replicates, s.mean, s.sd, 0.0});
  }
  return report;
}

ExperimentReport run_fit_curve(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const DistributionSpec spec = target(cfg);
  const std::size_t n = cfg.n_schedule.front();
  const SampleMatrix x = sample(spec, n, Seed{cfg.seed, 0});

  ExperimentReport report;
  report.config = cfg;
  for (int k : cfg.k_values) {
    const GofStatistic stat(x, k, threads);
    FitOptions opts;
    opts.grid_points = cfg.grid_points;
    opts.threads = threads;
    const FitResult fit = fit_shape(stat, cfg.family, cfg.grid, opts);
    const std::size_t grid_len = std::min<std::size_t>(fit.trace.size(), cfg.grid_points);
    for (std::size_t i = 0; i < grid_len; ++i) {
      report.rows.push_back(ReportRow{k, fit.trace[i].first, n, 1, fit.trace[i].second, 0.0, 0.0});
    }
    report.minima.push_back(CurveMinimum{k, fit.shape_hat, fit.statistic_at_min, fit.at_boundary});
    if (fit.at_boundary) {
      report.warnings.push_back("k=" + std::to_string(k) +
                                ": minimum lies on the grid boundary (NoMinimumInBounds)");
    }
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  switch (cfg.kind) {
    case ExperimentKind::Consistency:
      return run_consistency(cfg, threads);
    case ExperimentKind::Rate:
      return run_rate(cfg, threads);
    case ExperimentKind::NormalitySweep:
      return run_normality_sweep(cfg, threads);
    case ExperimentKind::FitCurve:
      return run_fit_curve(cfg, threads);
  }
  throw DomainError("unknown experiment kind");
}

}  // namespace renyi
