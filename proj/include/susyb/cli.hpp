#pragma once

// Command-line front end.  run_cli is the whole program minus process plumbing,
// so it can be driven from tests.
//
// Exit codes: 0 all checks pass / command succeeded, 1 check failure or escalated
// calibration warning, 2 usage, configuration or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "susyb/errors.hpp"
#include "susyb/holomorphic.hpp"
#include "susyb/json_io.hpp"
#include "susyb/params.hpp"
#include "susyb/realline.hpp"
#include "susyb/transforms.hpp"
#include "susyb/verify.hpp"

namespace susyb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  int n = 1;
  std::string sector = "one";
  int levels = 8;
  double tol = 1e-9;
  int quad_points = 400;
  std::string output = "-";
  std::string format = "json";
  bool strict = false;
  bool timings = false;
};

/// "min:max:count" with count >= 1; count 1 yields min alone.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

inline GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.min >> c1 >> g.max >> c2 >> g.count) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw DomainError("grid '" + text + "' must have the form min:max:count");
  if (g.count < 1) throw DomainError("grid '" + text + "' has an empty count");
  return g;
}

/// "re,im" or a bare real.
inline complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw DomainError("'" + text + "' is not a complex number (re,im)");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw DomainError("'" + text + "' is not a complex number (re,im)");
  }
  if (!(in >> std::ws).eof()) throw DomainError("'" + text + "' is not a complex number (re,im)");
  return {re, im};
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw DomainError("--n must be >= 1");
  if (cfg.levels < 0) throw DomainError("--levels must be >= 0");
  if (!(cfg.tol > 0.0)) throw DomainError("--tol must be > 0");
  if (cfg.quad_points < 1) throw DomainError("--quad-points must be >= 1");
  if (cfg.format != "json" && cfg.format != "csv") throw DomainError("--format must be json or csv");
  parse_sector(cfg.sector);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw std::ios_base::failure("write to '" + path + "' failed");
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const VerificationReport report = run_checks({cfg.n, cfg.levels, cfg.tol, cfg.quad_points});
  const std::string text =
      cfg.format == "json" ? to_json(report, cfg.timings).dump(2) + "\n" : to_csv(report, cfg.timings);
  write_output(cfg.output, text, out);
  return report.pass() ? kExitOk : kExitFailure;
}

inline int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  const SusyParams params(cfg.n);
  const std::vector<Sector> sectors{Sector::one, Sector::two};
  std::string text;
  if (cfg.format == "json") {
    nlohmann::json doc = {{"version", kSchemaVersion}, {"n", cfg.n}, {"levels", cfg.levels}};
    for (Sector s : sectors) {
      const std::string key(to_string(s));
      nlohmann::json eig = nlohmann::json::array(), consts = nlohmann::json::array(),
                     funcs = nlohmann::json::array();
      for (int l = 0; l <= cfg.levels; ++l) {
        eig.push_back(eigenvalue(params, s, l));
        consts.push_back({{"level", l},
                          {"exponent", basis_exponent(params, s, l)},
                          {"constant", basis_constant(params, s, l)}});
        funcs.push_back(to_json(eigenfunction(params, s, l)));
      }
      doc["eigenvalues"][key] = eig;
      doc["basis_constants"][key] = consts;
      doc["eigenfunctions"][key] = funcs;
    }
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# susyb tables n=" << cfg.n << " levels=" << cfg.levels << "\n";
    csv << "# columns: table,sector,level,exponent,value\n";
    csv << "# basis_constant rows: e_l(z) = value * z^exponent\n";
    csv << "# eigenfunction rows: coefficient of x^exponent exp(-x^{2n}/(2n)) in the normalized eigenfunction\n";
    csv << "# eigenvalue rows: a*a (sector one) or b*b (sector two) eigenvalue, exponent column empty\n";
    for (Sector s : sectors)
      for (int l = 0; l <= cfg.levels; ++l)
        csv << "basis_constant," << to_string(s) << ',' << l << ',' << basis_exponent(params, s, l) << ','
            << fmt(basis_constant(params, s, l)) << '\n';
    for (Sector s : sectors)
      for (int l = 0; l <= cfg.levels; ++l) {
        const WeightedPoly f = eigenfunction(params, s, l);
        for (const auto& [k, c] : f.coeffs())
          csv << "eigenfunction," << to_string(s) << ',' << l << ',' << k << ',' << fmt(c) << '\n';
      }
    for (Sector s : sectors)
      for (int l = 0; l <= cfg.levels; ++l)
        csv << "eigenvalue," << to_string(s) << ',' << l << ",," << fmt(eigenvalue(params, s, l)) << '\n';
    text = csv.str();
  }
  write_output(cfg.output, text, out);
  return kExitOk;
}

struct TransformOptions {
  std::string input;
  std::string direction = "forward";
  std::string x_grid = "-2:2:21";
};

/// Sample points for the forward residual: a 5x5 grid on [-1.4, 1.4]^2.
inline std::vector<complex> residual_points() {
  std::vector<complex> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pts.emplace_back(-1.4 + 0.7 * i, -1.4 + 0.7 * j);
  return pts;
}

inline int cmd_transform(const RunConfig& cfg, const TransformOptions& opts, std::ostream& out, std::ostream& err) {
  const nlohmann::json doc = parse_json_text(read_file(opts.input));
  Diagnostics diag;
  std::string text;
  if (opts.direction == "forward") {
    const WeightedPoly f = weighted_poly_from_json(doc);
    TransformResult result{forward_spectral(f), std::nullopt};
    if (!f.is_zero()) {
      const RealRule rule = build_forward_rule(f.params(), f.sector(), f.max_exponent(), 2.0, 1e-12,
                                               {cfg.quad_points, 4000});
      result = forward_with_residual(f, residual_points(), rule, &diag);
    } else {
      result.residual_vs_quadrature = 0.0;
    }
    if (cfg.format == "json") {
      text = to_json(result).dump(2) + "\n";
    } else {
      std::ostringstream csv;
      csv << "# forward transform n=" << f.params().n() << " sector=" << to_string(f.sector()) << "\n";
      csv << "# residual_vs_quadrature=" << fmt(result.residual_vs_quadrature.value_or(0.0)) << "\n";
      csv << "# columns: exponent,re,im\n";
      for (const auto& [k, c] : result.holo.coeffs()) csv << k << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << '\n';
      text = csv.str();
    }
  } else if (opts.direction == "inverse") {
    const HoloVector F = doc.contains("holo") ? transform_result_from_json(doc).holo : holo_vector_from_json(doc);
    const GridSpec grid = parse_grid(opts.x_grid);
    double reach = 0.0;
    for (int i = 0; i < grid.count; ++i) reach = std::max(reach, std::abs(grid.at(i)));
    std::vector<std::pair<double, complex>> samples;
    if (!F.is_zero()) {
      const PolarRule rule = build_inverse_rule(F.params(), F.sector(), F.max_exponent(), std::max(reach, 0.5), 1e-9);
      for (int i = 0; i < grid.count; ++i)
        samples.emplace_back(grid.at(i), inverse_quadrature(F, rule, grid.at(i), &diag));
    } else {
      for (int i = 0; i < grid.count; ++i) samples.emplace_back(grid.at(i), complex{});
    }
    if (cfg.format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [x, v] : samples) rows.push_back({x, v.real(), v.imag()});
      text = nlohmann::json{{"version", kSchemaVersion},
                            {"n", F.params().n()},
                            {"sector", to_string(F.sector())},
                            {"columns", {"x", "re", "im"}},
                            {"samples", rows}}
                 .dump(2) +
             "\n";
    } else {
      std::ostringstream csv;
      csv << "# inverse transform n=" << F.params().n() << " sector=" << to_string(F.sector()) << "\n";
      csv << "# columns: x,re,im\n";
      for (const auto& [x, v] : samples) csv << fmt(x) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
      text = csv.str();
    }
  } else {
    throw DomainError("--direction must be forward or inverse");
  }
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
  if (cfg.strict && !diag.warnings.empty()) {
    err << "error: calibration warnings are fatal under --strict\n";
    return kExitFailure;
  }
  write_output(cfg.output, text, out);
  return kExitOk;
}

struct KernelOptions {
  std::string quantity = "weight";
  std::string re_grid = "-2:2:5";
  std::string im_grid = "0:0:1";
  std::string w = "0.5,0";
  double x = 0.0;
};

inline int cmd_kernel(const RunConfig& cfg, const KernelOptions& opts, std::ostream& out) {
  const SusyParams params(cfg.n);
  const Sector sector = parse_sector(cfg.sector);
  const GridSpec re = parse_grid(opts.re_grid);
  const GridSpec im = parse_grid(opts.im_grid);
  const complex w = parse_complex(opts.w);
  std::function<complex(complex)> eval;
  std::string meaning;
  if (opts.quantity == "weight") {
    eval = [&](complex z) { return complex(weight(params, sector, z), 0.0); };
    meaning = "rho_" + std::string(to_string(sector)) + "(z)";
  } else if (opts.quantity == "repro") {
    eval = [&](complex z) { return reproducing_kernel(params, sector, w, z); };
    meaning = "reproducing kernel F_w(z), w=" + fmt(w.real()) + "," + fmt(w.imag());
  } else if (opts.quantity == "kernelA") {
    eval = [&](complex z) { return kernel_A(params, sector, z, opts.x); };
    meaning = "A(z, x), x=" + fmt(opts.x);
  } else if (opts.quantity == "kernelB") {
    eval = [&](complex z) { return kernel_B(params, sector, z, complex(opts.x, 0.0)); };
    meaning = "B(z, x), x=" + fmt(opts.x);
  } else {
    throw DomainError("--quantity must be weight, repro, kernelA or kernelB");
  }
  std::ostringstream body;
  if (cfg.format == "csv") {
    body << "# susyb kernel n=" << cfg.n << " sector=" << to_string(sector) << " quantity=" << opts.quantity << "\n";
    body << "# value: " << meaning << "\n";
    body << "# rows: re index outer, im index inner\n";
    body << "# columns: re_z,im_z,re_value,im_value\n";
    for (int i = 0; i < re.count; ++i)
      for (int j = 0; j < im.count; ++j) {
        const complex z(re.at(i), im.at(j));
        const complex v = eval(z);
        body << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
      }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < re.count; ++i)
      for (int j = 0; j < im.count; ++j) {
        const complex z(re.at(i), im.at(j));
        const complex v = eval(z);
        rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
      }
    body << nlohmann::json{{"version", kSchemaVersion},
                           {"n", cfg.n},
                           {"sector", to_string(sector)},
                           {"quantity", opts.quantity},
                           {"value", meaning},
                           {"columns", {"re_z", "im_z", "re_value", "im_value"}},
                           {"rows", rows}}
                .dump(2)
         << "\n";
  }
  write_output(cfg.output, body.str(), out);
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Coupled-SUSY Segal-Bargmann spaces: verification, tables, transforms and kernels"};
  app.require_subcommand(1);
  RunConfig cfg;
  TransformOptions topts;
  KernelOptions kopts;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "SUSY index n >= 1")->capture_default_str();
    sub->add_option("--sector", cfg.sector, "one | two")->capture_default_str();
    sub->add_option("--levels", cfg.levels, "highest basis level")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "nominal tolerance; check tolerances scale with tol/1e-9")->capture_default_str();
    sub->add_option("--quad-points", cfg.quad_points, "minimum real-line quadrature nodes")->capture_default_str();
    sub->add_option("--output", cfg.output, "output file, - for stdout")->capture_default_str();
    sub->add_option("--format", cfg.format, "json | csv")->capture_default_str();
    sub->add_flag("--strict", cfg.strict, "treat calibration warnings as errors");
  };

  CLI::App* check = app.add_subcommand("check", "run the verification suite");
  common(check);
  check->add_flag("--timings", cfg.timings, "include per-check runtimes (output is then not reproducible)");

  CLI::App* tables = app.add_subcommand("tables", "tabulate eigenvalues, eigenfunctions and basis constants");
  common(tables);

  CLI::App* transform = app.add_subcommand("transform", "forward or inverse transform of a JSON coefficient file");
  common(transform);
  transform->add_option("--input", topts.input, "input JSON file")->required();
  transform->add_option("--direction", topts.direction, "forward | inverse")->capture_default_str();
  transform->add_option("--x", topts.x_grid, "inverse sample grid min:max:count")->capture_default_str();

  CLI::App* kernel = app.add_subcommand("kernel", "evaluate weights, reproducing kernels or transform kernels on a grid");
  common(kernel);
  kernel->add_option("--quantity", kopts.quantity, "weight | repro | kernelA | kernelB")->capture_default_str();
  kernel->add_option("--re", kopts.re_grid, "grid of Re z, min:max:count")->capture_default_str();
  kernel->add_option("--im", kopts.im_grid, "grid of Im z, min:max:count")->capture_default_str();
  kernel->add_option("--w", kopts.w, "reproducing-kernel point re,im")->capture_default_str();
  kernel->add_option("--x", kopts.x, "real-line point of the transform kernels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    validate(cfg);
    if (*check) return cmd_check(cfg, out);
    if (*tables) return cmd_tables(cfg, out);
    if (*transform) return cmd_transform(cfg, topts, out, err);
    if (*kernel) return cmd_kernel(cfg, kopts, out);
  } catch (const CalibrationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace susyb::cli
