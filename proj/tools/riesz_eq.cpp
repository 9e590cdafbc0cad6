// riesz_eq: command-line front end for the sphere-equilibrium library.
// Exit codes: 0 success, 2 flag error, 3 domain error, 4 solver not converged.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "riesz/equilibrium.hpp"
#include "riesz/io.hpp"
#include "riesz/oracle.hpp"
#include "riesz/region_scan.hpp"

using namespace riesz;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

// Flag problems detected after CLI11 parsing (missing files, bad combinations).
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RadialField read_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FlagError("cannot read field file " + path);
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw FlagError("field file " + path + " is not valid JSON: " + e.what());
  }
  RadialField f = field_from_json(j);
  validate(f);
  return f;
}

json envelope(const std::string& kind, const RieszParams& p) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"d", p.d}, {"s", p.s}};
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    first = false;
    out += c;
  }
  out += '\n';
  return out;
}

std::string num(double x) { return io::format_number(x); }

// f^{(order)} at lambda; undefined one-sided values print as nan.
double f_or_nan(const ModifiedPotentialCtx& ctx, double lambda, int order) {
  try {
    return f_eval(ctx, lambda, order);
  } catch (const LimitUndefined&) {
    return std::nan("");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sphere equilibria of Riesz energies with radial external fields"};
  app.require_subcommand(1);

  int d = 0;
  double s = 0.0;
  std::string output_path;
  std::string field_path;

  auto add_common = [&](CLI::App* sub, bool with_field) {
    sub->add_option("--d", d, "ambient dimension")->required()->check(CLI::Range(2, 1000));
    sub->add_option("--output-path", output_path, "write here instead of stdout");
    if (with_field) sub->add_option("--field", field_path, "field spec JSON file")->required();
  };

  std::string format = "json";
  auto* constants = app.add_subcommand("constants", "c_{s,d}, b_d and the power-law threshold");
  add_common(constants, false);
  constants->add_option("--s", s, "Riesz exponent")->required();
  constants->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  double R = 1.0, lam_min = 1e-3, lam_max = 10.0;
  int n = 200;
  bool log_spaced = false;
  auto* potential = app.add_subcommand("potential", "modified potential f and two derivatives as CSV");
  add_common(potential, true);
  potential->add_option("--s", s)->required();
  potential->add_option("--R", R, "sphere radius")->check(CLI::PositiveNumber);
  potential->add_option("--lambda-min", lam_min)->check(CLI::PositiveNumber);
  potential->add_option("--lambda-max", lam_max)->check(CLI::PositiveNumber);
  potential->add_option("--n", n)->check(CLI::Range(1, 10000000));
  potential->add_flag("--log", log_spaced, "log-spaced lambda grid");

  RadiusSearch search;
  auto* check = app.add_subcommand("check-sphere", "sphere verdict with conditions and certificate evidence");
  add_common(check, true);
  check->add_option("--s", s)->required();
  check->add_option("--r-min", search.R_min)->check(CLI::PositiveNumber);
  check->add_option("--r-max", search.R_max)->check(CLI::PositiveNumber);

  double s_min = -1.9, s_max = 0.9, a_min = 0.1, a_max = 6.0, gamma = 1.0;
  int s_n = 50, a_n = 50;
  auto* scan = app.add_subcommand("scan", "power-law sphere region over an (s, alpha) grid as CSV");
  add_common(scan, false);
  scan->add_option("--s-min", s_min);
  scan->add_option("--s-max", s_max);
  scan->add_option("--s-n", s_n)->check(CLI::Range(1, 100000));
  scan->add_option("--alpha-min", a_min);
  scan->add_option("--alpha-max", a_max);
  scan->add_option("--alpha-n", a_n)->check(CLI::Range(1, 100000));
  scan->add_option("--gamma", gamma)->check(CLI::PositiveNumber);

  std::string method = "radial";
  RadialGrid grid;
  RadialSolveOptions ropt;
  ParticleSolveOptions popt;
  int particles = 256;
  auto* solve = app.add_subcommand("solve", "discrete equilibrium measure with support report");
  add_common(solve, true);
  solve->add_option("--s", s)->required();
  solve->add_option("--method", method)->check(CLI::IsMember({"radial", "particles"}));
  solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--grid-r-min", grid.r_min)->check(CLI::PositiveNumber);
  solve->add_option("--grid-r-max", grid.r_max)->check(CLI::PositiveNumber);
  solve->add_option("--grid-m", grid.M)->check(CLI::Range(50, 100000));
  solve->add_option("--tol", ropt.tol)->check(CLI::PositiveNumber);
  solve->add_option("--n", particles, "particle count")->check(CLI::Range(2, 1000000));
  solve->add_option("--seed", popt.seed);
  solve->add_option("--step0", popt.step0)->check(CLI::PositiveNumber);
  int max_iters = -1;
  solve->add_option("--max-iters", max_iters)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const RieszParams p{d, s};
  try {
    if (*constants) {
      validate(p);
      json out = envelope("constants", p);
      out["c_sd"] = c_sd(p);
      if (s == 0.0) out["b_d"] = b_d(d);
      out["alpha_threshold"] = (s > -2.0 && s < d - 3.0) ? json(alpha_threshold(p)) : json(nullptr);
      if (format == "csv") {
        std::string text = "key,value\n";
        for (const auto& [key, val] : out.items()) {
          if (val.is_number_float()) text += key + "," + num(val.get<double>()) + "\n";
          else if (val.is_null()) text += key + ",\n";
          else if (val.is_string()) text += key + "," + val.get<std::string>() + "\n";
          else text += key + "," + val.dump() + "\n";
        }
        io::write_output(output_path, text);
      } else {
        io::write_output(output_path, io::dump_json(out));
      }
      return 0;
    }

    if (*potential) {
      if (!(lam_max > lam_min)) throw FlagError("--lambda-max must exceed --lambda-min");
      const ModifiedPotentialCtx ctx{p, read_field(field_path), R};
      std::vector<double> lam;
      if (log_spaced) {
        for (double x : linspace(std::log(lam_min), std::log(lam_max), n)) lam.push_back(std::exp(x));
        lam.front() = lam_min;
        lam.back() = lam_max;
      } else {
        lam = linspace(lam_min, lam_max, n);
      }
      std::string text = "lambda,f,f1,f2\n";
      for (double x : lam) {
        text += csv_row({num(x), num(f_or_nan(ctx, x, 0)), num(f_or_nan(ctx, x, 1)), num(f_or_nan(ctx, x, 2))});
      }
      io::write_output(output_path, text);
      return 0;
    }

    if (*check) {
      if (!(search.R_max > search.R_min)) throw FlagError("--r-max must exceed --r-min");
      const RadialField f = read_field(field_path);
      json out = envelope("check-sphere", p);
      out["field"] = field_to_json(f);
      out["result"] = io::to_json(check_sphere(p, f, search));
      io::write_output(output_path, io::dump_json(out));
      return 0;
    }

    if (*scan) {
      if (s_max < s_min || a_max < a_min) throw FlagError("scan ranges must satisfy min <= max");
      int threads = 0;
      if (const char* env = std::getenv("RIESZ_EQ_THREADS")) {
        try {
          threads = std::stoi(env);
        } catch (const std::exception&) {
          throw FlagError("RIESZ_EQ_THREADS must be an integer");
        }
        if (threads < 1) throw FlagError("RIESZ_EQ_THREADS must be positive");
      }
      const auto cells = region_scan(d, linspace(s_min, s_max, s_n), linspace(a_min, a_max, a_n), gamma,
                                     Exec::parallel, threads);
      std::string text = "s,alpha,in_region,R_star\n";
      for (const auto& c : cells) {
        text += csv_row({num(c.s), num(c.alpha), c.in_region ? "1" : "0", c.in_region ? num(c.R_star) : ""});
      }
      io::write_output(output_path, text);
      return 0;
    }

    if (*solve) {
      const RadialField f = read_field(field_path);
      std::optional<double> ref;
      if (s < d - 1.0) {
        const auto sr = stationary_radii(p, f);
        if (!sr.radii.empty()) ref = sr.radii.front();
      }
      json out = envelope("solve", p);
      out["field"] = field_to_json(f);
      out["method"] = method;
      out["ref_radius"] = ref ? json(*ref) : json(nullptr);
      std::string csv;
      bool converged = true;
      if (method == "radial") {
        if (!(grid.r_max > grid.r_min)) throw FlagError("--grid-r-max must exceed --grid-r-min");
        if (max_iters > 0) ropt.max_iters = max_iters;
        RadialMeasure m;
        try {
          m = radial_equilibrium_solve(p, f, grid, ropt);
        } catch (const RadialNotConverged& e) {
          std::cerr << "riesz_eq: " << e.what() << '\n';
          m = e.best;
          converged = false;
        }
        out["grid"] = {{"r_min", grid.r_min}, {"r_max", grid.r_max}, {"M", grid.M}};
        out["measure"] = io::to_json(m);
        out["support"] = io::to_json(support_report(m, ref));
        csv = "radius,weight\n";
        for (std::size_t i = 0; i < m.radii.size(); ++i) csv += csv_row({num(m.radii[i]), num(m.weights[i])});
      } else {
        if (max_iters > 0) popt.max_iters = max_iters;
        const ParticleConfig cfg = particle_equilibrium_solve(p, &f, particles, popt);
        converged = cfg.converged;
        if (!converged) std::cerr << "riesz_eq: particle descent did not converge\n";
        out["seed"] = popt.seed;
        out["particles"] = io::to_json(cfg);
        out["support"] = io::to_json(support_report(cfg, ref));
        csv.clear();
        for (int k = 0; k < d; ++k) csv += "x" + std::to_string(k) + ",";
        csv += "radius\n";
        for (int i = 0; i < cfg.N; ++i) {
          for (int k = 0; k < d; ++k) csv += num(cfg.points[static_cast<std::size_t>(i) * d + k]) + ",";
          csv += num(cfg.radius(i)) + "\n";
        }
      }
      io::write_output(output_path, format == "csv" ? csv : io::dump_json(out));
      return converged ? 0 : 4;
    }
  } catch (const FlagError& e) {
    std::cerr << "riesz_eq: " << e.what() << '\n';
    return 2;
  } catch (const NotConverged& e) {
    std::cerr << "riesz_eq: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "riesz_eq: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "riesz_eq: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
