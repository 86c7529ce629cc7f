#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "renyi/distributions.hpp"
#include "renyi/gof.hpp"

namespace renyi {

enum class ExperimentKind { Consistency, Rate, NormalitySweep, FitCurve };

std::string_view kind_name(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept;

/// A declarative Monte Carlo sweep. Samples come from the standard member
/// T_m(0, I, ν) or P_m(0, I, γ) of `family` and are tested against the same
/// family and shape.
///
/// Replicate r draws one sample of size max(n_schedule) from Seed{seed, r};
/// every N in the schedule uses the first N rows, so results for different N
/// within a replicate are nested.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Consistency;
  Family family = Family::Student;
  int m = 2;
  double shape = 5.0;
  std::vector<int> k_values{1};
  std::vector<std::size_t> n_schedule;
  std::size_t replicates = 20;
  std::uint64_t seed = 0;
  /// NormalitySweep: number of statistics fed to each Shapiro-Wilk test.
  std::size_t batch_size = 100;
  /// FitCurve: shape grid.
  ShapeBounds grid{2.5, 10.0};
  int grid_points = 40;

  /// Throws DomainError describing the first problem found.
  void validate() const;
};

struct ReportRow {
  int k;
  double shape;
  std::size_t n;
  std::size_t replicates;
  double mean;
  double sd;
  double mean_abs;  // mean of |W|; zero outside consistency/rate runs
};

struct PowerLawFit {
  double slope;
  double intercept;
};

struct RateFit {
  int k;
  double slope;
  double intercept;
  std::vector<std::size_t> dropped_n;
};

struct CurveMinimum {
  int k;
  double shape_hat;
  double statistic;
  bool at_boundary;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::vector<RateFit> rate_fits;
  std::vector<CurveMinimum> minima;
  std::vector<std::string> warnings;
};

/// Ordinary least squares of log y on log n.
PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> y);

/// Mean and standard deviation (divisor M−1) of W per (k, N) over replicates.
ExperimentReport run_consistency(const ExperimentConfig& cfg, unsigned threads = 1);

/// Consistency plus a log–log fit of mean |W| against N for each k. Cells with a
/// zero mean |W| are dropped with a warning; fewer than 4 remaining cells raise
/// NonPositiveMean.
ExperimentReport run_rate(const ExperimentConfig& cfg, unsigned threads = 1);

/// For each outer repetition, batch_size independent statistics are tested
/// for normality; rows hold the mean and SD of the p-values per (k, N).
ExperimentReport run_normality_sweep(const ExperimentConfig& cfg, unsigned threads = 1);

/// One sample of size n_schedule[0]; W traced over the shape grid.
ExperimentReport run_fit_curve(const ExperimentConfig& cfg, unsigned threads = 1);

ExperimentReport run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

}  // namespace renyi
