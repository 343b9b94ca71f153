#pragma once

// Verification suite: every identity of the construction as a named check with
// a residual and a tolerance.  Used by `susyb check` and the acceptance tests.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "susyb/holomorphic.hpp"
#include "susyb/params.hpp"
#include "susyb/quadrature.hpp"
#include "susyb/realline.hpp"
#include "susyb/specfun.hpp"
#include "susyb/transforms.hpp"

namespace susyb {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
};

struct VerificationReport {
  int n = 1;
  int levels = 8;
  double tol = 1e-9;
  std::vector<CheckResult> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

struct CheckConfig {
  int n = 1;
  int levels = 8;
  /// Tolerances below are nominal at 1e-9 and scale linearly with this value.
  double tol = 1e-9;
  /// Minimum node count of real-line rules.
  int quad_points = 400;
};

/// max_k |f_k - g_k| / max(floor, max_k |f_k|, max_k |g_k|) over the union of exponents;
/// 0 when both are empty.  floor keeps vanishing results from being judged relative
/// to their own rounding noise.
inline double coeff_residual(const WeightedPoly& f, const WeightedPoly& g, double floor = 0.0) {
  double scale = floor;
  for (const auto& [k, c] : g.coeffs()) scale = std::max(scale, std::abs(c));
  for (const auto& [k, c] : f.coeffs()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& [k, c] : f.coeffs()) worst = std::max(worst, std::abs(c - g.coefficient(k)));
  for (const auto& [k, c] : g.coeffs()) worst = std::max(worst, std::abs(c - f.coefficient(k)));
  return worst / scale;
}

inline double coeff_residual(const HoloVector& f, const HoloVector& g, double floor = 0.0) {
  double scale = floor;
  for (const auto& [k, c] : g.coeffs()) scale = std::max(scale, std::abs(c));
  for (const auto& [k, c] : f.coeffs()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& [k, c] : f.coeffs()) worst = std::max(worst, std::abs(c - g.coefficient(k)));
  for (const auto& [k, c] : g.coeffs()) worst = std::max(worst, std::abs(c - f.coefficient(k)));
  return worst / scale;
}

template <class Vec>
double coeff_scale(const Vec& f) {
  double scale = 0.0;
  for (const auto& [k, c] : f.coeffs()) scale = std::max(scale, std::abs(c));
  return scale;
}

namespace detail {

inline WeightedPoly ladder_chain(std::initializer_list<LadderOp> ops, WeightedPoly f) {
  // Applied right to left, as written in operator products.
  std::vector<LadderOp> seq(ops);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) f = apply_ladder(*it, f);
  return f;
}

inline HoloVector holo_chain(std::initializer_list<HoloLadderOp> ops, HoloVector f) {
  std::vector<HoloLadderOp> seq(ops);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) f = apply_holo_ladder(*it, f);
  return f;
}

/// Unit-norm random combination of psi_0..psi_top (deterministic for a given engine state).
inline WeightedPoly random_span_element(const SusyParams& params, Sector sector, int top, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  WeightedPoly f(params, sector);
  double sq = 0.0;
  std::vector<double> c(top + 1);
  for (double& v : c) {
    v = unit(rng);
    sq += v * v;
  }
  for (int l = 0; l <= top; ++l) f = f + (c[l] / std::sqrt(sq)) * eigenfunction(params, sector, l);
  return f;
}

inline HoloVector random_holo(const SusyParams& params, Sector sector, int top, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  HoloVector F(params, sector);
  for (int l = 0; l <= top; ++l) F = F + complex(unit(rng), unit(rng)) * basis_vector(params, sector, l);
  return F;
}

}  // namespace detail

/// Runs the suite in its fixed order.  Checks that cannot complete (for example a
/// calibration failure) are reported as failing with an infinite residual.
inline VerificationReport run_checks(const CheckConfig& cfg) {
  const SusyParams params(cfg.n);
  const int n = cfg.n;
  const int levels = cfg.levels;
  const double scale = cfg.tol / 1e-9;
  VerificationReport report{cfg.n, cfg.levels, cfg.tol, {}};
  const std::vector<Sector> sectors{Sector::one, Sector::two};

  const auto run = [&](const std::string& name, double nominal, const std::function<double()>& body) {
    CheckResult r{name, 0.0, nominal * scale, false, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.max_residual = body();
    } catch (const std::exception&) {
      r.max_residual = std::numeric_limits<double>::infinity();
    }
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = std::isfinite(r.max_residual) && r.max_residual <= r.tolerance;
    report.checks.push_back(r);
  };

  // specfun: K_nu series/continued-fraction side against the asymptotic side around the switch.
  run("specfun.bessel_k_branches", 1e-9, [&] {
    const SeriesConfig sc;
    double worst = 0.0;
    for (double nu : {0.5, 0.25, 0.75, 1.0 / 6.0, 5.0 / 6.0})
      for (int j = 0; j < 20; ++j) {
        const double x = sc.asymptotic_switch + 0.1 * (j - 5);
        const double below = detail::bessel_k_steed(nu, x, sc);
        const double above = detail::bessel_k_asymptotic(nu, x, sc);
        worst = std::max(worst, std::abs(below - above) / std::abs(above));
      }
    return worst;
  });

  run("specfun.bessel_k_half_closed_form", 1e-12, [&] {
    double worst = 0.0;
    for (double x : {0.1, 1.0, 4.0, 12.0}) {
      const double exact = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
      worst = std::max(worst, std::abs(bessel_k(0.5, x) - exact) / exact);
    }
    return worst;
  });

  run("realline.orthonormality", 1e-10, [&] {
    double worst = 0.0;
    for (Sector s : sectors) {
      std::vector<WeightedPoly> basis;
      for (int l = 0; l <= levels; ++l) basis.push_back(eigenfunction(params, s, l));
      for (int i = 0; i <= levels; ++i)
        for (int j = 0; j <= levels; ++j)
          worst = std::max(worst, std::abs(inner_product(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)));
    }
    return worst;
  });

  run("realline.spectrum", 1e-10, [&] {
    double worst = 0.0;
    for (int l = 0; l <= levels; ++l) {
      const WeightedPoly psi = eigenfunction(params, Sector::one, l);
      worst = std::max(worst, coeff_residual(detail::ladder_chain({LadderOp::a_star, LadderOp::a}, psi),
                                             eigenvalue(params, Sector::one, l) * psi, coeff_scale(psi)));
      const WeightedPoly tpsi = eigenfunction(params, Sector::two, l);
      worst = std::max(worst, coeff_residual(detail::ladder_chain({LadderOp::b_star, LadderOp::b}, tpsi),
                                             eigenvalue(params, Sector::two, l) * tpsi, coeff_scale(tpsi)));
    }
    return worst;
  });

  const int top6 = std::min(6, levels);
  run("realline.partner_relations", 1e-10, [&] {
    double worst = 0.0;
    for (int l = 0; l <= top6; ++l) {
      const WeightedPoly f = eigenfunction(params, Sector::one, l);
      worst = std::max(worst, coeff_residual(detail::ladder_chain({LadderOp::a_star, LadderOp::a}, f),
                                             detail::ladder_chain({LadderOp::b, LadderOp::b_star}, f) +
                                                 double(params.gamma()) * f, coeff_scale(f)));
      const WeightedPoly g = eigenfunction(params, Sector::two, l);
      worst = std::max(worst, coeff_residual(detail::ladder_chain({LadderOp::a, LadderOp::a_star}, g),
                                             detail::ladder_chain({LadderOp::b_star, LadderOp::b}, g) +
                                                 double(params.delta()) * g, coeff_scale(g)));
    }
    return worst;
  });

  run("realline.su11_commutators", 1e-9, [&] {
    using enum LadderOp;
    const double dg = params.delta() - params.gamma();
    double worst = 0.0;
    for (int l = 0; l <= top6; ++l) {
      const WeightedPoly f = eigenfunction(params, Sector::one, l);
      const WeightedPoly c1 = detail::ladder_chain({a_star, a, a_star, b_star}, f) -
                              detail::ladder_chain({a_star, b_star, a_star, a}, f);
      worst = std::max(worst, coeff_residual(c1, dg * detail::ladder_chain({a_star, b_star}, f), coeff_scale(f)));
      const WeightedPoly c2 =
          detail::ladder_chain({a_star, b_star, b, a}, f) - detail::ladder_chain({b, a, a_star, b_star}, f);
      const WeightedPoly rhs =
          (-2.0 * dg) * (detail::ladder_chain({a_star, a}, f) - (params.gamma() / 2.0) * f);
      worst = std::max(worst, coeff_residual(c2, rhs, coeff_scale(f)));
    }
    return worst;
  });

  run("holomorphic.su11_commutators", 1e-9, [&] {
    using enum HoloLadderOp;
    const double dg = params.delta() - params.gamma();
    double worst = 0.0;
    for (int l = 0; l <= top6; ++l) {
      const HoloVector f = basis_vector(params, Sector::one, l);
      const HoloVector c1 = detail::holo_chain({frak_a_star, frak_a, frak_a_star, frak_b_star}, f) -
                            detail::holo_chain({frak_a_star, frak_b_star, frak_a_star, frak_a}, f);
      worst = std::max(worst, coeff_residual(c1, complex(dg) * detail::holo_chain({frak_a_star, frak_b_star}, f), coeff_scale(f)));
      const HoloVector c2 = detail::holo_chain({frak_a_star, frak_b_star, frak_b, frak_a}, f) -
                            detail::holo_chain({frak_b, frak_a, frak_a_star, frak_b_star}, f);
      const HoloVector rhs = complex(-2.0 * dg) * (detail::holo_chain({frak_a_star, frak_a}, f) -
                                                  complex(params.gamma() / 2.0) * f);
      worst = std::max(worst, coeff_residual(c2, rhs, coeff_scale(f)));
      // Partner relations in the holomorphic picture.
      worst = std::max(worst, coeff_residual(detail::holo_chain({frak_a_star, frak_a}, f),
                                             detail::holo_chain({frak_b, frak_b_star}, f) -
                                                 complex(-double(params.gamma())) * f, coeff_scale(f)));
      const HoloVector g = basis_vector(params, Sector::two, l);
      worst = std::max(worst, coeff_residual(detail::holo_chain({frak_a, frak_a_star}, g),
                                             detail::holo_chain({frak_b_star, frak_b}, g) +
                                                 complex(double(params.delta())) * g, coeff_scale(g)));
    }
    return worst;
  });

  run("realline.rodrigues", 1e-10, [&] {
    double worst = 0.0;
    const WeightedPoly seed_even = WeightedPoly(params, Sector::one, {{0, 1.0}});
    const WeightedPoly seed_odd = WeightedPoly(params, Sector::one, {{2 * n - 1, 2.0}});
    for (int l = 0; l <= std::min(4, levels); ++l) {
      WeightedPoly even = seed_even;
      WeightedPoly odd = seed_odd;
      for (int k = 0; k < l; ++k) {
        even = detail::ladder_chain({LadderOp::a_star, LadderOp::b_star}, even);
        odd = detail::ladder_chain({LadderOp::a_star, LadderOp::b_star}, odd);
      }
      worst = std::max(worst, coeff_residual(rodrigues_eigenfunction(params, l, Parity::even), even));
      worst = std::max(worst, coeff_residual(rodrigues_eigenfunction(params, l, Parity::odd), odd));
    }
    return worst;
  });

  run("holomorphic.gram_quadrature", 1e-8, [&] {
    double worst = 0.0;
    for (Sector s : sectors) {
      const PolarRule rule = build_polar_rule(params, s, basis_exponent(params, s, top6), 1e-11);
      for (int i = 0; i <= top6; ++i)
        for (int j = 0; j <= top6; ++j) {
          const HoloVector ei = basis_vector(params, s, i);
          const HoloVector ej = basis_vector(params, s, j);
          const complex g = integrate_polar(
              [&](complex z, complex) { return eval_holo(ei, z) * std::conj(eval_holo(ej, z)); }, rule, s);
          worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
  });

  run("holomorphic.reproducing_property", 1e-8, [&] {
    std::mt19937_64 rng(20240611u + n);
    std::uniform_real_distribution<double> radius(0.0, 1.5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (Sector s : sectors) {
      const int deg = basis_exponent(params, s, top6);
      const PolarRule rule = build_polar_rule(params, s, deg + 64, 1e-11);
      for (int trial = 0; trial < 10; ++trial) {
        const HoloVector F = detail::random_holo(params, s, top6, rng);
        const complex w = std::polar(radius(rng), angle(rng));
        const complex pairing = integrate_polar(
            [&](complex z, complex) { return eval_holo(F, z) * std::conj(reproducing_kernel(params, s, w, z)); },
            rule, s);
        const complex value = eval_holo(F, w);
        worst = std::max(worst, std::abs(pairing - value) / std::max(1.0, std::abs(value)));
      }
    }
    return worst;
  });

  run("transforms.basis_transport", 1e-10, [&] {
    double worst = 0.0;
    for (Sector s : sectors)
      for (int l = 0; l <= levels; ++l)
        worst = std::max(worst, coeff_residual(forward_spectral(eigenfunction(params, s, l)),
                                               basis_vector(params, s, l)));
    return worst;
  });

  run("transforms.diagram", 1e-9, [&] {
    double worst = 0.0;
    for (LadderOp op : {LadderOp::a, LadderOp::b, LadderOp::a_star, LadderOp::b_star})
      for (int l = 0; l <= top6; ++l)
        worst = std::max(worst, diagram_residual(params, op, eigenfunction(params, domain(op), l)));
    return worst;
  });

  const int span_top = std::min(7, levels);
  run("transforms.forward_quadrature", 1e-7, [&] {
    std::mt19937_64 rng(7771u + n);
    double worst = 0.0;
    for (Sector s : sectors) {
      const RealRule rule = build_forward_rule(params, s, basis_exponent(params, s, span_top), 2.0, 1e-12,
                                               {cfg.quad_points, 4000});
      for (int trial = 0; trial < 2; ++trial) {
        const WeightedPoly f = detail::random_span_element(params, s, span_top, rng);
        const HoloVector F = forward_spectral(f);
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) {
            const complex z(-1.4 + 0.7 * i, -1.4 + 0.7 * j);
            const complex exact = eval_holo(F, z);
            worst = std::max(worst, std::abs(forward_quadrature(f, rule, z) - exact) / std::max(1.0, std::abs(exact)));
          }
      }
    }
    return worst;
  });

  const int trip_top = std::min(5, levels);
  run("transforms.round_trip", 1e-6, [&] {
    std::mt19937_64 rng(9001u + n);
    double worst = 0.0;
    for (Sector s : sectors) {
      const PolarRule rule = build_inverse_rule(params, s, basis_exponent(params, s, trip_top), 2.0, 1e-9);
      const WeightedPoly f = detail::random_span_element(params, s, trip_top, rng);
      const HoloVector F = forward_spectral(f);
      for (int k = 0; k <= 20; ++k) {
        const double x = -2.0 + 0.2 * k;
        worst = std::max(worst, std::abs(inverse_quadrature(F, rule, x) - eval_real(f, x)));
      }
    }
    return worst;
  });

  run("transforms.coherent_relation", 1e-8, [&] {
    double worst = 0.0;
    for (double zr : {-1.5, 0.6, 1.7})
      for (double x : {-1.2, 0.5, 1.6}) {
        const complex z(zr, 0.4 * zr);
        worst = std::max(worst, coherent_residual(params, z, x));
      }
    return worst;
  });

  if (n == 1) {
    const double quarter = std::pow(std::numbers::pi, -0.25);
    run("golden.kernel_A", 1e-10, [&] {
      double worst = 0.0;
      for (Sector s : sectors)
        for (int i = -2; i <= 2; ++i)
          for (int j = -2; j <= 2; ++j) {
            const double z = i;
            const double x = j;
            const double exact = quarter * std::exp(-z * z / 2 + std::numbers::sqrt2 * z * x - x * x / 2);
            worst = std::max(worst, std::abs(kernel_A(params, s, z, x) - exact));
          }
      return worst;
    });
    run("golden.weight", 1e-12, [&] {
      double worst = 0.0;
      for (Sector s : sectors)
        for (int k = 0; k <= 30; ++k) {
          const complex z = std::polar(0.1 * k, 0.7 * k);
          worst = std::max(worst, std::abs(weight(params, s, z) - std::exp(-std::norm(z)) / std::numbers::pi));
        }
      return worst;
    });
    run("golden.reproducing_kernel", 1e-10, [&] {
      double worst = 0.0;
      for (Sector s : sectors)
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) {
            const complex z = std::polar(0.5 * i, 1.1 * j);
            const complex w = std::polar(0.5 * j, -0.9 * i);
            worst = std::max(worst, std::abs(reproducing_kernel(params, s, w, z) - std::exp(z * std::conj(w))));
          }
      return worst;
    });
    run("golden.constants", 1e-13, [&] {
      const KernelConstants kc = kernel_constants(params);
      const double exact = std::pow(std::numbers::pi, 0.25);
      return std::max(std::abs(kc.alpha - exact), std::abs(kc.beta - exact));
    });
  }
  return report;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

inline nlohmann::json to_json(const VerificationReport& report, bool timings = false) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json row = {{"name", c.name},
                          {"max_residual", format_double(c.max_residual)},
                          {"tolerance", format_double(c.tolerance)},
                          {"pass", c.pass}};
    if (timings) row["runtime_s"] = format_double(c.runtime_s);
    checks.push_back(row);
  }
  return {{"version", 1},          {"n", report.n},     {"levels", report.levels},
          {"tol", format_double(report.tol)}, {"checks", checks}, {"pass", report.pass()}};
}

inline std::string to_csv(const VerificationReport& report, bool timings = false) {
  std::ostringstream out;
  out << "# susyb verification report\n";
  out << "# n=" << report.n << " levels=" << report.levels << " tol=" << format_double(report.tol) << "\n";
  out << "# columns: name,max_residual,tolerance,pass" << (timings ? ",runtime_s" : "") << "\n";
  for (const auto& c : report.checks) {
    out << c.name << ',' << format_double(c.max_residual) << ',' << format_double(c.tolerance) << ','
        << (c.pass ? "true" : "false");
    if (timings) out << ',' << format_double(c.runtime_s);
    out << '\n';
  }
  out << "# summary: " << (report.pass() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace susyb
