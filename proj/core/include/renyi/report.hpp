#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "renyi/montecarlo.hpp"

namespace renyi {

/// Parses an experiment config. N may be a list or {"from", "to", "step"};
/// k may be a number or a list. Throws DomainError on missing or bad fields.
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Canonical form: N always as an explicit list. Thread counts are never part of a config.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// CSV with header `kind,family,m,k,shape,N,replicates,mean,sd` (plus `,slope`
/// for rate reports), 17 significant digits, LF line endings.
std::string report_csv(const ExperimentReport& report);

/// JSON sidecar: config echo, git blob hash of `csv`, rate fits, curve minima, warnings.
std::string report_json(const ExperimentReport& report, std::string_view csv);

/// Hex SHA-1 of "blob <len>\0<content>", as `git hash-object` prints it.
std::string git_blob_sha1(std::string_view content);

/// Mean statistic against N (or shape for fit curves), one polyline per k.
std::string report_svg(const ExperimentReport& report);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace renyi
