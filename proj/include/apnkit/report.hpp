#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "apnkit/analysis.hpp"
#include "apnkit/apnfam.hpp"
#include "apnkit/gf2e.hpp"
#include "apnkit/polyzero.hpp"

// JSON forms of every report. Field elements are fixed-width lowercase hex.
// Wall-clock values live only under keys named "elapsed_ms" or "timings_ms",
// which strip_timing removes for byte comparisons.
namespace apnkit::report {

using nlohmann::json;

json field_json(const Field& field);
json field_summary(const Field& field);

json to_json(const Field& field, const polyzero::ZeroDistribution& d);
json to_json(const Field& field, const polyzero::ImageReport& r);
json to_json(const Field& field, const polyzero::CubicReport& r);
json to_json(const Field& field, const apnfam::FamilyParams& p);
json to_json(const Field& field, const apnfam::ApnCertificate& c);
json to_json(const analysis::SpectrumReport& r, const std::string& label);
json to_json(const analysis::DifferentialReport& r, const std::string& label);
json gamma_rank_json(int n, std::uint64_t rank, const std::string& label, analysis::GammaConvention convention,
                     double elapsed_ms);

json params_json(const Field& field, const apnfam::FamilyParams& p);

json error_json(const std::string& code, const std::string& message);

// Removes every "elapsed_ms" and "timings_ms" key, recursively.
json strip_timing(json j);

// Two-space indented with a trailing newline; the byte format of every report.
std::string dump(const json& j);

}  // namespace apnkit::report
