#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "renyi/distributions.hpp"
#include "renyi/error.hpp"
#include "renyi/estimator.hpp"
#include "renyi/gof.hpp"
#include "renyi/montecarlo.hpp"
#include "renyi/report.hpp"

namespace renyi::cli {
namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << content;
  if (!f) throw IoError("error writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

/// Header line required; every data row must have as many fields as the header.
SampleMatrix read_sample_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (header) {
      cols = fields.size();
      header = false;
      continue;
    }
    if (fields.size() != cols) {
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                    " fields, got " + std::to_string(fields.size()));
    }
    for (std::string_view f : fields) {
      while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
      while (!f.empty() && f.back() == ' ') f.remove_suffix(1);
      double v = 0.0;
      const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v)) {
        throw IoError(path + ":" + std::to_string(line_no) + ": bad number '" + std::string(f) +
                      "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (header) throw IoError(path + ": missing CSV header");
  return SampleMatrix(rows, cols, std::move(values));
}

std::string sample_csv(const SampleMatrix& x) {
  std::string out;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    if (j) out += ',';
    out += 'x' + std::to_string(j + 1);
  }
  out += '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (j) out += ',';
      out += format_double(x(i, j));
    }
    out += '\n';
  }
  return out;
}

Family family_or_usage(const std::string& name, bool allow_gaussian) {
  const auto f = parse_family(name);
  if (!f || (!allow_gaussian && *f == Family::Gaussian)) {
    throw UsageError("unknown family '" + name + "'" +
                     (allow_gaussian ? "" : " (expected student or pearson2)"));
  }
  return *f;
}

double shape_for(Family family, const std::optional<double>& nu,
                 const std::optional<double>& gamma) {
  if (family == Family::Student) {
    if (!nu) throw UsageError("--nu is required for family student");
    if (gamma) throw UsageError("--gamma does not apply to family student");
    return *nu;
  }
  if (family == Family::PearsonII) {
    if (!gamma) throw UsageError("--gamma is required for family pearson2");
    if (nu) throw UsageError("--nu does not apply to family pearson2");
    return *gamma;
  }
  if (nu || gamma) throw UsageError("gaussian takes no shape parameter");
  return 0.0;
}

std::string dump(const json& j) { return j.dump(2) + '\n'; }

json test_json(const TestResult& r) {
  return {{"statistic", r.statistic},
          {"family", family_name(r.family)},
          {"m", r.m},
          {"k", r.k},
          {"n", r.n},
          {"shape", r.shape},
          {"q", r.q},
          {"h_max", r.h_max},
          {"h_hat", r.h_hat},
          {"log_det_sigma_hat", r.log_det_sigma_hat}};
}

unsigned threads_from_env() {
  if (const char* env = std::getenv("RENYI_GOF_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size()) return v;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi entropy estimation and maximum-entropy goodness-of-fit tests", "renyi-gof"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<unsigned> threads_flag;
  app.add_option("--threads", threads_flag, "worker threads (default: RENYI_GOF_THREADS or all cores)");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw a sample from gaussian, student or pearson2");
  std::string s_family;
  std::optional<double> s_nu;
  std::optional<double> s_gamma;
  int s_m = 0;
  std::size_t s_n = 0;
  std::uint64_t s_seed = 0;
  std::string s_out;
  sample_cmd->add_option("--family", s_family, "gaussian | student | pearson2")->required();
  sample_cmd->add_option("--nu", s_nu, "Student degrees of freedom");
  sample_cmd->add_option("--gamma", s_gamma, "Pearson II shape");
  sample_cmd->add_option("--m", s_m, "dimension")->required();
  sample_cmd->add_option("--n", s_n, "sample size")->required();
  sample_cmd->add_option("--seed", s_seed, "root seed");
  sample_cmd->add_option("-o,--output", s_out, "output CSV (default stdout)");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "nearest-neighbour Renyi entropy estimate");
  int e_k = 1;
  double e_q = 0.0;
  std::string e_in;
  std::string e_out;
  est_cmd->add_option("--k", e_k, "neighbour order")->required();
  est_cmd->add_option("--q", e_q, "Renyi order (q != 1)")->required();
  est_cmd->add_option("input", e_in, "sample CSV")->required();
  est_cmd->add_option("-o,--output", e_out, "output JSON (default stdout)");

  // test
  auto* test_cmd = app.add_subcommand("test", "maximum-entropy goodness-of-fit statistic");
  std::string t_family;
  std::optional<double> t_nu;
  std::optional<double> t_gamma;
  int t_k = 1;
  std::string t_in;
  std::string t_out;
  test_cmd->add_option("--family", t_family, "student | pearson2")->required();
  test_cmd->add_option("--nu", t_nu, "hypothesised Student nu (> 2)");
  test_cmd->add_option("--gamma", t_gamma, "hypothesised Pearson II gamma (> 0)");
  test_cmd->add_option("--k", t_k, "neighbour order")->required();
  test_cmd->add_option("input", t_in, "sample CSV")->required();
  test_cmd->add_option("-o,--output", t_out, "output JSON (default stdout)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "shape estimate by minimizing the test statistic");
  std::string f_family;
  int f_k = 1;
  std::optional<double> f_lo;
  std::optional<double> f_hi;
  int f_points = 40;
  std::string f_in;
  std::string f_out;
  fit_cmd->add_option("--family", f_family, "student | pearson2")->required();
  fit_cmd->add_option("--k", f_k, "neighbour order")->required();
  fit_cmd->add_option("--lo", f_lo, "lower shape bound");
  fit_cmd->add_option("--hi", f_hi, "upper shape bound");
  fit_cmd->add_option("--grid-points", f_points, "coarse grid size");
  fit_cmd->add_option("input", f_in, "sample CSV")->required();
  fit_cmd->add_option("-o,--output", f_out, "output JSON (default stdout)");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a Monte Carlo experiment from a JSON config");
  std::string x_config;
  std::string x_prefix;
  bool x_svg = false;
  exp_cmd->add_option("config", x_config, "experiment config JSON")->required();
  exp_cmd->add_option("-o,--output", x_prefix,
                      "output prefix; writes PREFIX.csv and PREFIX.json (default: <config>.report)");
  exp_cmd->add_flag("--svg", x_svg, "also write PREFIX.svg");

  std::vector<const char*> argv;
  argv.push_back("renyi-gof");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    const unsigned threads = threads_flag ? *threads_flag : threads_from_env();

    if (*sample_cmd) {
      const Family family = family_or_usage(s_family, true);
      const double shape = shape_for(family, s_nu, s_gamma);
      if (s_n == 0) throw UsageError("--n must be >= 1");
      const auto spec = DistributionSpec::standard(family, shape, s_m);
      emit(s_out, sample_csv(sample(spec, s_n, Seed{s_seed, 0})), out);
    } else if (*est_cmd) {
      if (e_q == 1.0) throw UsageError("--q must differ from 1");
      if (!(e_q > 0.0)) throw UsageError("--q must be positive");
      if (e_k < 1) throw UsageError("--k must be >= 1");
      const SampleMatrix x = read_sample_csv(e_in);
      const EntropyEstimate e = estimate_g(x, e_k, e_q, threads);
      emit(e_out,
           dump({{"g_hat", e.g_hat}, {"h_hat", e.h_hat}, {"n", e.n}, {"m", e.m}, {"k", e.k},
                 {"q", e.q}}),
           out);
    } else if (*test_cmd) {
      const Family family = family_or_usage(t_family, false);
      const double shape = shape_for(family, t_nu, t_gamma);
      if (t_k < 1) throw UsageError("--k must be >= 1");
      const SampleMatrix x = read_sample_csv(t_in);
      const TestResult r = family == Family::Student ? w_student(x, t_k, shape, threads)
                                                     : w_pearson(x, t_k, shape, threads);
      emit(t_out, dump(test_json(r)), out);
    } else if (*fit_cmd) {
      const Family family = family_or_usage(f_family, false);
      if (f_k < 1) throw UsageError("--k must be >= 1");
      ShapeBounds bounds = default_bounds(family);
      if (f_lo) bounds.lo = *f_lo;
      if (f_hi) bounds.hi = *f_hi;
      const SampleMatrix x = read_sample_csv(f_in);
      FitOptions opts;
      opts.grid_points = f_points;
      opts.threads = threads;
      const FitResult fit = fit_shape(x, f_k, family, bounds, opts);
      json trace = json::array();
      for (const auto& [s, w] : fit.trace) trace.push_back({s, w});
      emit(f_out,
           dump({{"family", family_name(family)},
                 {"k", f_k},
                 {"n", x.rows()},
                 {"m", x.cols()},
                 {"shape_hat", fit.shape_hat},
                 {"statistic_at_min", fit.statistic_at_min},
                 {"at_boundary", fit.at_boundary},
                 {"trace", trace}}),
           out);
      if (fit.at_boundary) err << "warning: minimum lies on the search boundary\n";
    } else if (*exp_cmd) {
      json cfg_json;
      try {
        cfg_json = json::parse(read_file(x_config));
      } catch (const json::parse_error& e) {
        throw IoError("cannot parse '" + x_config + "': " + e.what());
      }
      const ExperimentConfig cfg = config_from_json(cfg_json);
      const ExperimentReport report = run_experiment(cfg, threads);
      std::string prefix = x_prefix;
      if (prefix.empty()) {
        prefix = x_config;
        const auto dot = prefix.rfind('.');
        const auto slash = prefix.find_last_of('/');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
          prefix.erase(dot);
        prefix += ".report";
      }
      const std::string csv = report_csv(report);
      write_file(prefix + ".csv", csv);
      write_file(prefix + ".json", report_json(report, csv));
      if (x_svg) write_file(prefix + ".svg", report_svg(report));
      for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const renyi::Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kOk;
}

}  // namespace renyi::cli
