#pragma once

// Scalar special functions: log-gamma, 0F1, modified Bessel I and K, and the
// moments of the squared ground-state profile exp(-x^{2n}/n).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "susyb/errors.hpp"
#include "susyb/params.hpp"

namespace susyb {

/// Truncation control shared by the series evaluators.
struct SeriesConfig {
  double rel_tol = 1e-15;
  int max_terms = 500;
  /// K_nu switches to its large-argument expansion at and above this point.
  double asymptotic_switch = 10.0;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("SeriesConfig: rel_tol must be > 0");
    if (max_terms < 1) throw DomainError("SeriesConfig: max_terms must be >= 1");
    if (!(asymptotic_switch > 0.0)) throw DomainError("SeriesConfig: asymptotic_switch must be > 0");
  }
};

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return boost::math::lgamma(x);
}

/// Confluent hypergeometric limit function 0F1(;b;z) = sum_l z^l / ((b)_l l!),
/// summed until the geometric tail bound drops below rel_tol * |sum|.
inline std::complex<double> hyp0f1(double b, std::complex<double> z, const SeriesConfig& cfg = {}) {
  cfg.validate();
  if (b <= 0.0 && b == std::floor(b))
    throw DomainError("hyp0f1: b must not be a non-positive integer, got " + std::to_string(b));
  if (z == 0.0) return {1.0, 0.0};

  const double az = std::abs(z);
  std::complex<double> sum{1.0, 0.0};
  std::complex<double> term{1.0, 0.0};
  for (int l = 0; l < cfg.max_terms; ++l) {
    term *= z / ((b + l) * (l + 1.0));
    sum += term;
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
      throw OverflowError("hyp0f1: partial sum left the double range (b=" + std::to_string(b) +
                          ", |z|=" + std::to_string(az) + ")");
    // Every later ratio is bounded by this one once b + l + 1 > 0.
    const double next = b + l + 1.0;
    if (next <= 0.0) continue;
    const double ratio = az / (next * (l + 2.0));
    if (ratio >= 1.0) continue;
    const double tail = std::abs(term) * ratio / (1.0 - ratio);
    if (tail <= cfg.rel_tol * std::abs(sum)) return sum;
  }
  throw ConvergenceError("hyp0f1: no convergence within " + std::to_string(cfg.max_terms) +
                         " terms (b=" + std::to_string(b) + ", |z|=" + std::to_string(az) + ")");
}

/// Real-argument convenience overload.
inline double hyp0f1(double b, double z, const SeriesConfig& cfg = {}) {
  return hyp0f1(b, std::complex<double>(z, 0.0), cfg).real();
}

/// Modified Bessel function of the first kind, I_nu(x) = (x/2)^nu / Gamma(nu+1) 0F1(;nu+1;x^2/4).
inline double bessel_i(double nu, double x, const SeriesConfig& cfg = {}) {
  if (!(x >= 0.0)) throw DomainError("bessel_i: x must be >= 0");
  if (!(nu > -1.0)) throw DomainError("bessel_i: nu must be > -1");
  if (x == 0.0) {
    if (nu > 0.0) return 0.0;
    if (nu == 0.0) return 1.0;
    throw OverflowError("bessel_i: I_nu(0) is infinite for nu < 0");
  }
  const double log_prefactor = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  if (log_prefactor + x > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("bessel_i: result exceeds the double range");
  return std::exp(log_prefactor) * hyp0f1(nu + 1.0, 0.25 * x * x, cfg);
}

namespace detail {

inline void check_bessel_k_domain(double nu, double x) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("bessel_k: nu must lie in (0,1), got " + std::to_string(nu));
  if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0, got " + std::to_string(x));
}

/// K_nu = pi / (2 sin(nu pi)) (I_{-nu} - I_nu).  Accurate where the two I terms
/// do not cancel badly, i.e. small x.
inline double bessel_k_reflection(double nu, double x, const SeriesConfig& cfg = {}) {
  check_bessel_k_domain(nu, x);
  const double pi = std::numbers::pi;
  return pi / (2.0 * std::sin(nu * pi)) * (bessel_i(-nu, x, cfg) - bessel_i(nu, x, cfg));
}

/// Steed's continued fraction for K_mu, K_{mu+1} with |mu| <= 1/2, followed by one
/// upward recurrence step when nu >= 1/2.  Intended for x >= 2.
inline double bessel_k_steed(double nu, double x, const SeriesConfig& cfg = {}) {
  check_bessel_k_domain(nu, x);
  const int shift = static_cast<int>(nu + 0.5);
  const double mu = nu - shift;
  const double eps = std::numeric_limits<double>::epsilon();

  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  bool converged = false;
  const int budget = std::max(cfg.max_terms, 1000);
  for (int i = 1; i <= budget; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("bessel_k: Steed continued fraction did not converge");
  h *= a1;
  double k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
  for (int i = 1; i <= shift; ++i) {
    const double next = (mu + i) * (2.0 / x) * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  return k_mu;
}

/// Large-x expansion sqrt(pi/2x) e^{-x} sum_k a_k(nu) / x^k.  At least eight terms
/// are summed; the sum then continues while terms keep shrinking and stops at the
/// smallest one (optimal truncation) or at machine precision.
inline double bessel_k_asymptotic(double nu, double x, const SeriesConfig& cfg = {}) {
  check_bessel_k_domain(nu, x);
  constexpr int kMinTerms = 8;
  const double mu4 = 4.0 * nu * nu;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= cfg.max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu4 - odd * odd) / (8.0 * k * x);
    if (next == 0.0) break;
    if (k > kMinTerms && std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (k >= kMinTerms && std::abs(term) < std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum;
}

}  // namespace detail

/// Modified Bessel function of the second kind for 0 < nu < 1 and x > 0.
///
/// x <= 2 uses the reflection formula on the ascending I series; 2 < x <
/// asymptotic_switch uses Steed's continued fraction (the reflection formula
/// loses ~e^{2x} in cancellation there); x >= asymptotic_switch uses the
/// large-argument expansion.
inline double bessel_k(double nu, double x, const SeriesConfig& cfg = {}) {
  cfg.validate();
  detail::check_bessel_k_domain(nu, x);
  if (x >= cfg.asymptotic_switch) return detail::bessel_k_asymptotic(nu, x, cfg);
  if (x <= 2.0) return detail::bessel_k_reflection(nu, x, cfg);
  return detail::bessel_k_steed(nu, x, cfg);
}

/// Integral over the real line of x^j exp(-x^{2n}/n):
/// zero for odd j, n^{(j+1)/(2n) - 1} Gamma((j+1)/(2n)) for even j.
inline double gaussian_moment(const SusyParams& params, int j) {
  if (j < 0) throw DomainError("gaussian_moment: j must be non-negative");
  if (j % 2 != 0) return 0.0;
  const double n = params.n();
  const double s = (j + 1.0) / (2.0 * n);
  return std::exp((s - 1.0) * std::log(n) + log_gamma(s));
}

}  // namespace susyb
