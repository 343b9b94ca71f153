#pragma once

// Deterministic quadrature: truncated Gauss-Legendre rules on [-L, L] for
// generalized-Gaussian integrands, and polar rules (Gauss-Legendre in r times a
// uniform trapezoid in the angle) for integrals against rho_1 / rho_2.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "susyb/errors.hpp"
#include "susyb/holomorphic.hpp"
#include "susyb/params.hpp"
#include "susyb/specfun.hpp"

namespace susyb {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;
};

/// N-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_N.
/// Nodes are computed for one half and mirrored, so the rule is exactly symmetric.
inline GaussLegendre gauss_legendre(int count) {
  if (count < 1) throw DomainError("gauss_legendre: node count must be >= 1");
  GaussLegendre rule;
  rule.nodes.assign(count, 0.0);
  rule.weights.assign(count, 0.0);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = count * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[count - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

/// Rule for integrals over the real line of functions decaying like exp(-x^{2n}/n).
struct RealRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double halfwidth = 0.0;
  int max_degree = 0;
  double tol = 0.0;
};

struct RuleOptions {
  int min_nodes = 0;
  int node_budget = 2000;
};

/// Gauss-Legendre on [-L, L]; L makes |x|^j exp(-x^{2n}/(2n)) < tol/100 for every
/// j <= max_degree, and the node count doubles until every even moment
/// gaussian_moment(n, j), j <= max_degree, is reproduced to tol relative.
inline RealRule build_real_rule(const SusyParams& params, int max_degree, double tol, RuleOptions opts = {}) {
  if (max_degree < 0) throw DomainError("build_real_rule: max_degree must be >= 0");
  if (!(tol > 0.0)) throw DomainError("build_real_rule: tol must be > 0");
  const int n = params.n();
  const auto log_envelope = [&](double x) {
    const double lx = std::log(x);
    return std::max(0.0, max_degree * lx) - std::pow(x, 2 * n) / (2.0 * n);
  };
  const double target = std::log(tol * 1e-2);
  double L = 1.0;
  while (log_envelope(L) >= target) L *= 1.02;

  int count = std::max(16, opts.min_nodes);
  while (true) {
    const GaussLegendre gl = gauss_legendre(count);
    RealRule rule;
    rule.halfwidth = L;
    rule.max_degree = max_degree;
    rule.tol = tol;
    for (int i = 0; i < count; ++i) {
      rule.nodes.push_back(L * gl.nodes[i]);
      rule.weights.push_back(L * gl.weights[i]);
    }
    double worst = 0.0;
    for (int j = 0; j <= max_degree; j += 2) {
      double sum = 0.0;
      for (int i = 0; i < count; ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], j) * std::exp(-std::pow(rule.nodes[i], 2 * n) / n);
      const double exact = gaussian_moment(params, j);
      worst = std::max(worst, std::abs(sum - exact) / exact);
    }
    if (worst <= tol) return rule;
    if (count >= opts.node_budget)
      throw CalibrationError("build_real_rule: " + std::to_string(count) + " nodes reach only " +
                             std::to_string(worst) + " relative moment error (tol " + std::to_string(tol) + ")");
    count = std::min(2 * count, opts.node_budget);
  }
}

/// Polar rule for integrals of f(z, conj z) rho(z) dA.  The weight rho is
/// tabulated at the radial nodes, so a rule is tied to one sector.
struct PolarRule {
  SusyParams params{1};
  Sector sector = Sector::one;
  std::vector<double> radial_nodes;
  /// Gauss-Legendre weight times the Jacobian r.
  std::vector<double> radial_weights;
  /// rho_sector at each radial node.
  std::vector<double> weight_values;
  int angular_count = 0;
  double radius = 0.0;
  int max_exponent = 0;
  double tol = 0.0;
};

struct PolarOptions {
  int min_angular = 0;
  int min_radial = 0;
  int node_budget = 2000;
};

/// Gauss-Legendre in r on [0, R] (the weight is analytic in r, so no substitution
/// is needed) and an M-point trapezoid in the angle with M >= 2*max_exponent + 4.
/// R is grown until r^{2k+2} rho(r) at R is below tol/100 of the k-th basis
/// Gram integral, and the radial count doubles until every lattice monomial
/// k <= max_exponent satisfies |c_k^2 int |z|^{2k} rho dA - 1| <= tol.
inline PolarRule build_polar_rule(const SusyParams& params, Sector sector, int max_exponent, double tol,
                                  PolarOptions opts = {}) {
  if (max_exponent < 0) throw DomainError("build_polar_rule: max_exponent must be >= 0");
  if (!(tol > 0.0)) throw DomainError("build_polar_rule: tol must be > 0");

  std::vector<std::pair<int, double>> lattice;  // exponent, basis constant
  for (int l = 0;; ++l) {
    const int k = basis_exponent(params, sector, l);
    if (k > max_exponent) break;
    lattice.emplace_back(k, basis_constant(params, sector, l));
  }
  if (lattice.empty()) lattice.emplace_back(basis_exponent(params, sector, 0), basis_constant(params, sector, 0));

  const auto [top_k, top_c] = lattice.back();
  const auto tail_proxy = [&](double r) {
    return 2.0 * std::numbers::pi * std::pow(r, 2 * top_k + 2) * weight(params, sector, r) * top_c * top_c;
  };
  // Walk outward past the peak of the top moment integrand, then until its tail is small.
  double R = 0.5;
  double prev = tail_proxy(R);
  while (true) {
    const double next = tail_proxy(R * 1.02);
    R *= 1.02;
    if (next < prev && next < tol * 1e-2) break;
    prev = next;
  }

  int m = std::max(2 * max_exponent + 4, opts.min_angular);
  if (m % 2) ++m;

  int count = std::max(16, opts.min_radial);
  while (true) {
    const GaussLegendre gl = gauss_legendre(count);
    PolarRule rule;
    rule.params = params;
    rule.sector = sector;
    rule.angular_count = m;
    rule.radius = R;
    rule.max_exponent = max_exponent;
    rule.tol = tol;
    for (int i = 0; i < count; ++i) {
      const double r = 0.5 * R * (gl.nodes[i] + 1.0);
      rule.radial_nodes.push_back(r);
      rule.radial_weights.push_back(0.5 * R * gl.weights[i] * r);
      rule.weight_values.push_back(weight(params, sector, r));
    }
    double worst = 0.0;
    for (const auto& [k, c] : lattice) {
      double sum = 0.0;
      for (int i = 0; i < count; ++i)
        sum += rule.radial_weights[i] * rule.weight_values[i] * std::pow(rule.radial_nodes[i], 2 * k);
      worst = std::max(worst, std::abs(2.0 * std::numbers::pi * sum * c * c - 1.0));
    }
    if (worst <= tol) return rule;
    if (count >= opts.node_budget)
      throw CalibrationError("build_polar_rule: " + std::to_string(count) + " radial nodes reach only " +
                             std::to_string(worst) + " Gram error (tol " + std::to_string(tol) + ")");
    count = std::min(2 * count, opts.node_budget);
  }
}

/// Weighted sum over the rule nodes in ascending order.
inline double integrate_real(const std::function<double(double)>& f, const RealRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw NonFiniteSample("integrate_real: non-finite integrand at node " + std::to_string(i) +
                            " (x=" + std::to_string(rule.nodes[i]) + ")");
    sum += rule.weights[i] * v;
  }
  return sum;
}

/// Integral of f(z, conj z) rho_sector(z) dA; rho is applied internally.
inline complex integrate_polar(const std::function<complex(complex, complex)>& f, const PolarRule& rule,
                               Sector sector) {
  if (sector != rule.sector)
    throw SectorMismatch("integrate_polar: rule was built for sector " + std::string(to_string(rule.sector)));
  const int m = rule.angular_count;
  const double dtheta = 2.0 * std::numbers::pi / m;
  std::vector<complex> phases(m);
  for (int j = 0; j < m; ++j) phases[j] = std::polar(1.0, j * dtheta);
  complex total{};
  for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
    const double w = rule.radial_weights[i] * rule.weight_values[i];
    if (w == 0.0) continue;
    complex ring{};
    for (int j = 0; j < m; ++j) {
      const complex z = rule.radial_nodes[i] * phases[j];
      const complex v = f(z, std::conj(z));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NonFiniteSample("integrate_polar: non-finite integrand at radial node " + std::to_string(i) +
                              ", angle index " + std::to_string(j));
      ring += v;
    }
    total += w * dtheta * ring;
  }
  return total;
}

}  // namespace susyb
