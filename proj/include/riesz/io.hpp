#pragma once

#include <string>

#include <json.hpp>

#include "riesz/equilibrium.hpp"
#include "riesz/oracle.hpp"

namespace riesz::io {

// Shortest form is not used: every number carries 17 significant digits so
// text output is identical across runs and round-trips exactly.
std::string format_number(double x);

/// Compact JSON with sorted keys. Non-finite floats become "+inf" / "-inf"
/// strings and NaN becomes null.
std::string dump_json(const nlohmann::json& j);

/// Writes to a sibling temp file, then renames over path. Empty path means stdout.
void write_output(const std::string& path, const std::string& content);

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const CertificateResult& r);
nlohmann::json to_json(const ScanResult& r);
nlohmann::json to_json(const RadiusRecord& r);
nlohmann::json to_json(const SphereVerdict& v);
nlohmann::json to_json(const RadialMeasure& m);
nlohmann::json to_json(const ParticleConfig& c);
nlohmann::json to_json(const SupportReport& r);

}  // namespace riesz::io
