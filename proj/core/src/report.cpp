#include "renyi/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "renyi/error.hpp"

namespace renyi {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("config field '") + key + "': " + e.what());
  }
}

std::vector<std::size_t> parse_schedule(const json& j) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<std::size_t>());
    return out;
  }
  if (j.is_object()) {
    const auto from = j.at("from").get<std::size_t>();
    const auto to = j.at("to").get<std::size_t>();
    const auto step = j.at("step").get<std::size_t>();
    if (step == 0) throw DomainError("N step must be positive");
    for (std::size_t n = from; n <= to; n += step) out.push_back(n);
    return out;
  }
  if (j.is_number_unsigned() || j.is_number_integer()) return {j.get<std::size_t>()};
  throw DomainError("N must be a list, a number or {from, to, step}");
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    const auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw DomainError("unknown experiment kind '" + j.at("kind").get<std::string>() + "'");
    cfg.kind = *kind;
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw DomainError("unknown family '" + j.at("family").get<std::string>() + "'");
    cfg.family = *family;
    cfg.m = j.at("m").get<int>();
    if (j.contains("shape")) {
      cfg.shape = j.at("shape").get<double>();
    } else if (j.contains("nu")) {
      cfg.shape = j.at("nu").get<double>();
    } else if (j.contains("gamma")) {
      cfg.shape = j.at("gamma").get<double>();
    } else if (cfg.kind != ExperimentKind::FitCurve) {
      throw DomainError("config needs 'shape' (or 'nu' / 'gamma')");
    }
    const json& k = j.at("k");
    cfg.k_values.clear();
    if (k.is_array()) {
      for (const auto& v : k) cfg.k_values.push_back(v.get<int>());
    } else {
      cfg.k_values.push_back(k.get<int>());
    }
    cfg.n_schedule = parse_schedule(j.at("N"));
    cfg.replicates = get_or<std::size_t>(j, "replicates", cfg.replicates);
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.batch_size = get_or<std::size_t>(j, "batch_size", cfg.batch_size);
    if (cfg.kind == ExperimentKind::FitCurve) cfg.grid = default_bounds(cfg.family);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      cfg.grid.lo = get_or<double>(g, "lo", cfg.grid.lo);
      cfg.grid.hi = get_or<double>(g, "hi", cfg.grid.hi);
      cfg.grid_points = get_or<int>(g, "points", cfg.grid_points);
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid experiment config: ") + e.what());
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["kind"] = kind_name(cfg.kind);
  j["family"] = family_name(cfg.family);
  j["m"] = cfg.m;
  j["shape"] = cfg.shape;
  j["k"] = cfg.k_values;
  j["N"] = cfg.n_schedule;
  j["replicates"] = cfg.replicates;
  j["seed"] = cfg.seed;
  if (cfg.kind == ExperimentKind::NormalitySweep) j["batch_size"] = cfg.batch_size;
  if (cfg.kind == ExperimentKind::FitCurve) {
    j["grid"] = {{"lo", cfg.grid.lo}, {"hi", cfg.grid.hi}, {"points", cfg.grid_points}};
  }
  return j;
}

std::string report_csv(const ExperimentReport& report) {
  const ExperimentConfig& cfg = report.config;
  const bool rate = cfg.kind == ExperimentKind::Rate;
  std::map<int, double> slopes;
  for (const RateFit& f : report.rate_fits) slopes[f.k] = f.slope;

  std::string out = "kind,family,m,k,shape,N,replicates,mean,sd";
  if (rate) out += ",slope";
  out += '\n';
  for (const ReportRow& row : report.rows) {
    out += kind_name(cfg.kind);
    out += ',';
    out += family_name(cfg.family);
    out += ',' + std::to_string(cfg.m);
    out += ',' + std::to_string(row.k);
    out += ',' + format_double(row.shape);
    out += ',' + std::to_string(row.n);
    out += ',' + std::to_string(row.replicates);
    out += ',' + format_double(row.mean);
    out += ',' + format_double(row.sd);
    if (rate) {
      const auto it = slopes.find(row.k);
      out += ',' + format_double(it == slopes.end() ? std::numeric_limits<double>::quiet_NaN()
                                                    : it->second);
    }
    out += '\n';
  }
  return out;
}

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("SHA-1 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string report_json(const ExperimentReport& report, std::string_view csv) {
  json j;
  j["config"] = config_to_json(report.config);
  j["csv_sha1"] = git_blob_sha1(csv);
  j["rows"] = report.rows.size();
  j["warnings"] = report.warnings;
  if (!report.rate_fits.empty()) {
    json fits = json::array();
    for (const RateFit& f : report.rate_fits) {
      json series = json::array();
      for (const ReportRow& row : report.rows)
        if (row.k == f.k) series.push_back({{"N", row.n}, {"mean_abs", row.mean_abs}});
      fits.push_back({{"k", f.k},
                      {"measure", "mean_abs_W"},
                      {"slope", f.slope},
                      {"intercept", f.intercept},
                      {"dropped_N", f.dropped_n},
                      {"series", series}});
    }
    j["rate_fits"] = fits;
  }
  if (!report.minima.empty()) {
    json minima = json::array();
    for (const CurveMinimum& c : report.minima) {
      minima.push_back({{"k", c.k},
                        {"shape_hat", c.shape_hat},
                        {"statistic", c.statistic},
                        {"at_boundary", c.at_boundary}});
    }
    j["minima"] = minima;
  }
  return j.dump(2) + '\n';
}

std::string report_svg(const ExperimentReport& report) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double pad = 40.0;
  const bool by_shape = report.config.kind == ExperimentKind::FitCurve;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const ReportRow& r : report.rows) {
    const double x = by_shape ? r.shape : static_cast<double>(r.n);
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, r.mean);
    y_hi = std::max(y_hi, r.mean);
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">\n";
  std::map<int, std::string> lines;
  for (const ReportRow& r : report.rows) {
    const double x = by_shape ? r.shape : static_cast<double>(r.n);
    const double px = pad + (x - x_lo) / (x_hi - x_lo) * (width - 2 * pad);
    const double py = height - pad - (r.mean - y_lo) / (y_hi - y_lo) * (height - 2 * pad);
    std::string& pts = lines[r.k];
    if (!pts.empty()) pts += ' ';
    pts += format_double(px) + ',' + format_double(py);
  }
  for (const auto& [k, pts] : lines) {
    out += "  <polyline data-k=\"" + std::to_string(k) +
           "\" fill=\"none\" stroke=\"black\" points=\"" + pts + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace renyi
