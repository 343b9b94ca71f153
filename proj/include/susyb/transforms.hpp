#pragma once

// Segal-Bargmann transforms B_1 : H_1 -> F_1 and B_2 : H_2 -> F_2.
//
// Two independent paths are provided: spectral transport of coefficients
// (psi_l -> e_l, tilde psi_l -> tilde e_l) and direct integration against the
// kernels A_1, A_2.  The inverse is integration against rho over the plane.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "susyb/errors.hpp"
#include "susyb/holomorphic.hpp"
#include "susyb/params.hpp"
#include "susyb/quadrature.hpp"
#include "susyb/realline.hpp"
#include "susyb/specfun.hpp"

namespace susyb {

struct KernelConstants {
  double alpha = 0.0;
  double beta = 0.0;
};

/// alpha = n^{1/2-1/(4n)} sqrt(Gamma(1/(2n))),
/// beta  = 2^{-1/2+1/(2n)} n^{-1/2+3/(4n)} sqrt(Gamma(1/(2n))).
inline KernelConstants kernel_constants(const SusyParams& params) {
  const double n = params.n();
  const double half_lg = 0.5 * log_gamma(0.5 / n);
  const double ln_n = std::log(n);
  return {std::exp((0.5 - 0.25 / n) * ln_n + half_lg),
          std::exp((-0.5 + 0.5 / n) * std::numbers::ln2 + (-0.5 + 0.75 / n) * ln_n + half_lg)};
}

/// Number of levels in the truncated double series for B.
inline constexpr int kKernelSeriesLevels = 60;

struct KernelTerm {
  int exponent;
  double coefficient;
};

/// B(z, x) = sum_p c_p (zx)^p.  For sector one
///   c_{2nl}      = alpha 2^l / ((2n)^{2l} Gamma(l + 1/(2n)) l!)
///   c_{2nl+2n-1} = beta 2^{l+1/2} / ((2n)^{2l+1} Gamma(l + 2 - 1/(2n)) l!)
/// and for sector two
///   c_{2nl+n-1}  = beta 2^l / ((2n)^{2l} Gamma(l + 1 - 1/(2n)) l!)
///   c_{2nl+n}    = alpha 2^{l+1/2} / ((2n)^{2l+1} Gamma(l + 1 + 1/(2n)) l!).
/// Terms are returned in ascending exponent order.
inline std::vector<KernelTerm> kernel_series(const SusyParams& params, Sector sector,
                                             int levels = kKernelSeriesLevels) {
  const int n = params.n();
  const double inv = 1.0 / (2.0 * n);
  const double ln_two_n = std::log(2.0 * n);
  const auto [alpha, beta] = kernel_constants(params);
  const double ln2 = std::numbers::ln2;
  std::vector<KernelTerm> terms;
  terms.reserve(2 * levels);
  for (int l = 0; l < levels; ++l) {
    const double lf = log_gamma(l + 1.0);
    const double even_log = l * ln2 - 2.0 * l * ln_two_n - lf;
    const double odd_log = (l + 0.5) * ln2 - (2.0 * l + 1.0) * ln_two_n - lf;
    if (sector == Sector::one) {
      terms.push_back({2 * n * l, alpha * std::exp(even_log - log_gamma(l + inv))});
      terms.push_back({2 * n * l + 2 * n - 1, beta * std::exp(odd_log - log_gamma(l + 2.0 - inv))});
    } else {
      terms.push_back({2 * n * l + n - 1, beta * std::exp(even_log - log_gamma(l + 1.0 - inv))});
      terms.push_back({2 * n * l + n, alpha * std::exp(odd_log - log_gamma(l + 1.0 + inv))});
    }
  }
  std::sort(terms.begin(), terms.end(), [](const KernelTerm& a, const KernelTerm& b) { return a.exponent < b.exponent; });
  return terms;
}

/// Direct evaluation of the truncated double series.
inline complex kernel_B_series(const SusyParams& params, Sector sector, complex z, complex x,
                               int levels = kKernelSeriesLevels) {
  const complex t = z * x;
  complex sum{};
  for (const auto& term : kernel_series(params, sector, levels)) sum += term.coefficient * ipow(t, term.exponent);
  return sum;
}

/// B_1 (sector one) or B_2 (sector two) through 0F1 with argument w = (zx)^{2n}/(2n^2):
///   B_1 = alpha/Gamma(1/(2n)) 0F1(;1/(2n);w)
///       + beta/(sqrt2 n Gamma(2-1/(2n))) (zx)^{2n-1} 0F1(;2-1/(2n);w)
///   B_2 = beta/Gamma(1-1/(2n)) (zx)^{n-1} 0F1(;1-1/(2n);w)
///       + sqrt2 alpha/Gamma(1/(2n)) (zx)^n 0F1(;1+1/(2n);w)
inline complex kernel_B(const SusyParams& params, Sector sector, complex z, complex x, const SeriesConfig& cfg = {}) {
  const int n = params.n();
  const double inv = 1.0 / (2.0 * n);
  const auto [alpha, beta] = kernel_constants(params);
  const complex t = z * x;
  const complex w = ipow(t, 2 * n) / (2.0 * n * n);
  if (sector == Sector::one) {
    const double b2 = 2.0 - inv;
    return alpha * std::exp(-log_gamma(inv)) * hyp0f1(inv, w, cfg) +
           beta * std::exp(-log_gamma(b2)) / (std::numbers::sqrt2 * n) * ipow(t, 2 * n - 1) * hyp0f1(b2, w, cfg);
  }
  const double b1 = 1.0 - inv;
  return beta * std::exp(-log_gamma(b1)) * ipow(t, n - 1) * hyp0f1(b1, w, cfg) +
         std::numbers::sqrt2 * alpha * std::exp(-log_gamma(inv)) * ipow(t, n) * hyp0f1(1.0 + inv, w, cfg);
}

/// A(z, x) = exp(-z^{2n}/(2n)) B(z, x) exp(-x^{2n}/(2n)); the exponentials are
/// combined with log B before exponentiating.
inline complex kernel_A(const SusyParams& params, Sector sector, complex z, double x, const SeriesConfig& cfg = {}) {
  const int n = params.n();
  const complex b = kernel_B(params, sector, z, complex(x, 0.0), cfg);
  if (b == 0.0) return {};
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
    throw OverflowError("kernel_A: B(z, x) is not representable");
  const complex exponent = -(ipow(z, 2 * n) + std::pow(x, 2 * n)) / (2.0 * n) + std::log(b);
  return std::exp(exponent);
}

/// Calibration notes attached to quadrature-path results.
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// Coefficients of f over the normalized eigenbasis of its sector, keyed by level.
/// Levels run up to the last one whose basis exponent fits under f's degree.
inline std::map<int, double> eigen_coefficients(const WeightedPoly& f) {
  std::map<int, double> out;
  if (f.is_zero()) return out;
  WeightedPoly residual = f;
  for (int l = 0; basis_exponent(f.params(), f.sector(), l) <= f.max_exponent(); ++l) {
    const WeightedPoly psi = eigenfunction(f.params(), f.sector(), l);
    const double c = inner_product(f, psi);
    out[l] = c;
    residual = residual - c * psi;
  }
  const double r = norm(residual);
  if (r > 1e-9)
    throw ExpansionResidualError("forward_spectral: residual norm " + std::to_string(r) +
                                 " after expansion in the eigenbasis exceeds 1e-9");
  return out;
}

/// B f by coefficient transport: sum_l <f, psi_l> psi_l  ->  sum_l <f, psi_l> e_l.
inline HoloVector forward_spectral(const WeightedPoly& f) {
  HoloVector::Coefficients coeffs;
  for (const auto& [l, c] : eigen_coefficients(f)) {
    coeffs[basis_exponent(f.params(), f.sector(), l)] += c * basis_constant(f.params(), f.sector(), l);
  }
  return {f.params(), f.sector(), std::move(coeffs)};
}

/// Largest kernel exponent p whose contribution to a transform at |z| = radius
/// is within eps of the dominant one, measured by |c_p| radius^p sqrt(moment(2p)).
inline int kernel_bandwidth(const SusyParams& params, Sector sector, double radius, double eps = 1e-17) {
  if (radius <= 0.0) return 0;
  std::vector<std::pair<int, double>> logs;
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& term : kernel_series(params, sector)) {
    const double v = std::log(term.coefficient) + term.exponent * std::log(radius) +
                     0.5 * std::log(gaussian_moment(params, 2 * term.exponent));
    logs.emplace_back(term.exponent, v);
    peak = std::max(peak, v);
  }
  int band = 0;
  for (const auto& [p, v] : logs)
    if (v >= peak + std::log(eps)) band = p;
  return band;
}

/// Real-line rule for forward_quadrature on inputs of degree <= max_exponent at |z| <= radius.
inline RealRule build_forward_rule(const SusyParams& params, Sector sector, int max_exponent, double radius,
                                   double tol = 1e-12, RuleOptions opts = {}) {
  return build_real_rule(params, max_exponent + kernel_bandwidth(params, sector, radius), tol, opts);
}

/// (B f)(z) = int A(z, x) f(x) dx by the supplied rule.
inline complex forward_quadrature(const WeightedPoly& f, const RealRule& rule, complex z,
                                  Diagnostics* diag = nullptr, const SeriesConfig& cfg = {}) {
  if (f.is_zero()) return {};
  const SusyParams& params = f.params();
  const int needed = f.max_exponent() + kernel_bandwidth(params, f.sector(), std::abs(z));
  if (diag != nullptr && needed > rule.max_degree)
    diag->warnings.push_back("forward_quadrature: rule calibrated to degree " + std::to_string(rule.max_degree) +
                             ", integrand needs about " + std::to_string(needed));
  complex sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double fx = eval_real(f, x);
    if (fx == 0.0) continue;
    const complex v = kernel_A(params, f.sector(), z, x, cfg) * fx;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteSample("forward_quadrature: non-finite integrand at node " + std::to_string(i) +
                            " (x=" + std::to_string(x) + ")");
    sum += rule.weights[i] * v;
  }
  return sum;
}

/// (B^{-1} F)(x) = int A(conj z, x) F(z) rho(z) dA by the supplied polar rule.
inline complex inverse_quadrature(const HoloVector& F, const PolarRule& rule, double x,
                                  Diagnostics* diag = nullptr, const SeriesConfig& cfg = {}) {
  if (F.is_zero()) return {};
  if (!(F.params() == rule.params)) throw SectorMismatch("inverse_quadrature: rule was built for a different n");
  if (diag != nullptr && F.max_exponent() > rule.max_exponent)
    diag->warnings.push_back("inverse_quadrature: rule calibrated to exponent " + std::to_string(rule.max_exponent) +
                             ", input has exponent " + std::to_string(F.max_exponent()));
  const SusyParams params = F.params();
  const Sector sector = F.sector();
  return integrate_polar(
      [&](complex z, complex zbar) { return kernel_A(params, sector, zbar, x, cfg) * eval_holo(F, z); }, rule,
      sector);
}

struct InverseRuleOptions {
  /// Initial extra exponent range reserved for the kernel.
  int initial_bandwidth = 32;
  int max_bandwidth = 512;
  PolarOptions polar{};
};

/// Polar rule for inverse_quadrature on inputs of degree <= max_exponent and
/// |x| <= x_max.  The kernel is not band-limited in the angle, so the reserved
/// exponent range (which sets M and the radial extent) doubles until the basis
/// identity B^{-1} e_l = psi_l holds within tol at the extreme levels and at
/// x in {0, x_max/2, x_max}.
inline PolarRule build_inverse_rule(const SusyParams& params, Sector sector, int max_exponent, double x_max,
                                    double tol = 1e-9, InverseRuleOptions opts = {}) {
  if (max_exponent < 0) throw DomainError("build_inverse_rule: max_exponent must be >= 0");
  int top = 0;
  while (basis_exponent(params, sector, top + 1) <= max_exponent) ++top;
  std::vector<int> levels{0};
  if (top > 0) levels.push_back(top);
  if (top > 1) levels.push_back(top - 1);
  const std::vector<double> xs{0.0, 0.5 * x_max, x_max};

  std::string last;
  for (int band = opts.initial_bandwidth; band <= opts.max_bandwidth; band *= 2) {
    const PolarRule rule = build_polar_rule(params, sector, max_exponent + band, tol * 1e-1, opts.polar);
    double worst = 0.0;
    for (int l : levels) {
      const HoloVector e = basis_vector(params, sector, l);
      const WeightedPoly psi = eigenfunction(params, sector, l);
      for (double x : xs) worst = std::max(worst, std::abs(inverse_quadrature(e, rule, x) - eval_real(psi, x)));
    }
    if (worst <= tol) return rule;
    last = std::to_string(worst);
  }
  throw CalibrationError("build_inverse_rule: basis identity error " + last + " exceeds tol " + std::to_string(tol));
}

struct TransformResult {
  HoloVector holo;
  /// max |forward_quadrature - eval_holo(holo)| over the sample points, when computed.
  std::optional<double> residual_vs_quadrature;
};

/// Spectral transform plus its disagreement with the quadrature path at the given points.
inline TransformResult forward_with_residual(const WeightedPoly& f, const std::vector<complex>& points,
                                             const RealRule& rule, Diagnostics* diag = nullptr) {
  TransformResult result{forward_spectral(f), std::nullopt};
  if (points.empty()) return result;
  double worst = 0.0;
  for (const complex& z : points)
    worst = std::max(worst, std::abs(forward_quadrature(f, rule, z, diag) - eval_holo(result.holo, z)));
  result.residual_vs_quadrature = worst;
  return result;
}

inline HoloLadderOp holo_counterpart(LadderOp op) noexcept {
  switch (op) {
    case LadderOp::a: return HoloLadderOp::frak_a;
    case LadderOp::b: return HoloLadderOp::frak_b;
    case LadderOp::a_star: return HoloLadderOp::frak_a_star;
    case LadderOp::b_star: return HoloLadderOp::frak_b_star;
  }
  return HoloLadderOp::frak_a;
}

/// || B(op f) - op' (B f) || in the holomorphic norm, op' the holomorphic counterpart of op.
inline double diagram_residual(const SusyParams& params, LadderOp op, const WeightedPoly& f) {
  if (!(f.params() == params)) throw SectorMismatch("diagram_residual: f has a different n");
  const HoloVector lhs = forward_spectral(apply_ladder(op, f));
  const HoloVector rhs = apply_holo_ladder(holo_counterpart(op), forward_spectral(f));
  return holo_norm(lhs - rhs);
}

/// Checks a_x A_1(z,x) = z^n A_2(z,x) and b_x A_2(z,x) = z^n A_1(z,x).  The x-derivatives
/// are taken term by term on the truncated B-series, so with E = exp(-(z^{2n}+x^{2n})/(2n))
///   a_x A_1 = E (1/sqrt2) sum_p c_p p z^p x^{p-n}
///   b_x A_2 = E (1/sqrt2) sum_q d_q (q-n+1) z^q x^{q-n}.
/// Returns the larger relative residual |lhs - rhs| / max(|lhs|, |rhs|) (0 when both vanish).
inline double coherent_residual(const SusyParams& params, complex z, double x) {
  const int n = params.n();
  if (x == 0.0 && n >= 2)
    throw SingularPointError("coherent_residual: x = 0 is a singular point of the ladder operators for n >= 2");
  const auto one = kernel_series(params, Sector::one);
  const auto two = kernel_series(params, Sector::two);
  const complex envelope = std::exp(-(ipow(z, 2 * n) + std::pow(x, 2 * n)) / (2.0 * n));
  const double r = 1.0 / std::numbers::sqrt2;
  const complex zn = ipow(z, n);

  const auto power = [&](int k) { return k >= 0 ? std::pow(x, k) : 1.0 / std::pow(x, -k); };
  complex a_lhs{}, b_lhs{}, A1{}, A2{};
  for (const auto& [p, c] : one) {
    A1 += c * ipow(z, p) * power(p);
    if (p != 0) a_lhs += r * c * double(p) * ipow(z, p) * power(p - n);
  }
  for (const auto& [q, d] : two) {
    A2 += d * ipow(z, q) * power(q);
    const double factor = q - n + 1;
    if (factor != 0.0) b_lhs += r * d * factor * ipow(z, q) * power(q - n);
  }
  const auto rel = [](complex lhs, complex rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
  };
  return std::max(rel(envelope * a_lhs, envelope * zn * A2), rel(envelope * b_lhs, envelope * zn * A1));
}

}  // namespace susyb
