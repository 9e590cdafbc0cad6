#include "riesz/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <unistd.h>

namespace riesz::io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void dump(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, val] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump(val, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isnan(x))
        out += "null";
      else if (std::isinf(x))
        out += x > 0 ? "\"+inf\"" : "\"-inf\"";
      else
        out += format_number(x);
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump(j, out);
  out += '\n';
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.close();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

nlohmann::json to_json(const ConditionReport& r) {
  auto cmp = [](const Comparison& c) { return nlohmann::json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}}; };
  return {{"i", {{"residual", r.cond_i.residual}, {"pass", r.cond_i.pass}}},
          {"ii", cmp(r.cond_ii)},
          {"iii", cmp(r.cond_iii)},
          {"iv", cmp(r.cond_iv)},
          {"all_pass", r.all_pass()}};
}

nlohmann::json to_json(const CertificateResult& r) {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : r.evidence) ev.push_back({{"label", e.label}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"holds", e.holds}});
  return {{"certificate", certificate_name(r.which)},
          {"coverage", coverage_name(r.coverage)},
          {"holds", r.holds},
          {"heuristic", r.heuristic},
          {"evidence", ev},
          {"note", r.note}};
}

nlohmann::json to_json(const ScanResult& r) {
  return {{"argmin", r.argmin},         {"min_value", r.min_value},
          {"f_at_one", r.f_at_one},     {"f_at_zero", r.f_at_zero},
          {"f_at_infinity", r.f_at_infinity}, {"min_at_one", r.min_at_one},
          {"margin", r.margin}};
}

nlohmann::json to_json(const RadiusRecord& r) {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  nlohmann::json out{{"R", r.R},
                     {"checked", r.checked},
                     {"certificates", certs},
                     {"certified", r.certified},
                     {"certificate", r.certificate},
                     {"notes", r.notes}};
  if (r.checked) {
    out["conditions"] = to_json(r.conditions);
    out["scan"] = to_json(r.scan);
  }
  return out;
}

nlohmann::json to_json(const SphereVerdict& v) {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : v.records) recs.push_back(to_json(r));
  return {{"verdict", verdict_name(v.kind)},
          {"R", v.R},
          {"radii", v.radii},
          {"boundary_warning", v.boundary_warning},
          {"certificate", v.certificate},
          {"failed_condition", v.failed_condition},
          {"records", recs},
          {"notes", v.notes}};
}

nlohmann::json to_json(const RadialMeasure& m) {
  return {{"radii", m.radii},         {"weights", m.weights},       {"objective", m.objective},
          {"fw_gap", m.fw_gap},       {"iterations", m.iterations}, {"converged", m.converged}};
}

nlohmann::json to_json(const ParticleConfig& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (int i = 0; i < c.N; ++i) {
    pts.push_back(std::vector<double>(c.points.begin() + static_cast<long>(i) * c.d,
                                      c.points.begin() + static_cast<long>(i + 1) * c.d));
  }
  return {{"N", c.N},
          {"d", c.d},
          {"points", pts},
          {"energy", c.energy_trace.empty() ? 0.0 : c.energy_trace.back()},
          {"energy_trace", c.energy_trace},
          {"iterations", c.iterations},
          {"restarts", c.restarts},
          {"final_step", c.final_step},
          {"grad_norm", c.grad_norm},
          {"converged", c.converged}};
}

nlohmann::json to_json(const SupportReport& r) {
  return {{"mean_radius", r.mean_radius}, {"radius_std", r.radius_std}, {"sphere_score", r.sphere_score}};
}

}  // namespace riesz::io
