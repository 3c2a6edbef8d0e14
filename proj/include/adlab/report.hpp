#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

namespace adlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "additive-lab/1";
inline constexpr const char* kArtifactName = "additive-lab";
inline constexpr const char* kArtifactVersion = "1.0.0";

std::string rat_str(const mpq_class& q);

/// {"exact": "<numerator>/<denominator>"} — every exact numeric field uses this tag.
Json num_exact(const mpq_class& q);
Json num_exact(const mpz_class& z);
Json num_exact(std::uint64_t v);
Json num_exact(std::int64_t v);

/// {"float": v, "tol": t or null} — every floating field carries its tolerance.
Json num_float(double v, std::optional<double> tol = std::nullopt);

/// Report skeleton: schema/artifact identification plus the config echo.
Json report_shell(const Json& config);

/// Flat CSV projection of report["records"]; nested keys join with '.'.
std::string report_to_csv(const Json& report);

/// Determinism view: the report minus its timing block, serialized.
std::string report_without_timing(const Json& report);

}  // namespace adlab
