#pragma once

// Real-line representation of the coupled SUSY: functions p(x) exp(-x^{2n}/(2n))
// held as sparse exponent -> coefficient maps, and the ladder operators
//
//   a  = (1/sqrt2)(x^{1-n} d/dx + x^n),   b  = (1/sqrt2)(d/dx x^{1-n} + x^n),
//   a* = (1/sqrt2)(-d/dx x^{1-n} + x^n),  b* = (1/sqrt2)(-x^{1-n} d/dx + x^n).

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "susyb/errors.hpp"
#include "susyb/params.hpp"
#include "susyb/specfun.hpp"

namespace susyb {

/// f(x) = sum_k coeffs[k] x^k exp(-x^{2n}/(2n)).  Exponents obey the sector
/// congruence, coefficients are finite and exact zeros are dropped.
class WeightedPoly {
 public:
  using Coefficients = std::map<int, double>;

  WeightedPoly(SusyParams params, Sector sector, Coefficients coeffs = {})
      : params_(params), sector_(sector) {
    for (const auto& [k, c] : coeffs) {
      if (!std::isfinite(c)) throw DomainError("WeightedPoly: non-finite coefficient at exponent " + std::to_string(k));
      if (c == 0.0) continue;
      if (!admits_exponent(params_, sector_, k))
        throw LatticeViolation("WeightedPoly: exponent " + std::to_string(k) + " is not admitted by sector " +
                               std::string(to_string(sector_)) + " for n=" + std::to_string(params_.n()));
      coeffs_.emplace(k, c);
    }
  }

  const SusyParams& params() const noexcept { return params_; }
  Sector sector() const noexcept { return sector_; }
  const Coefficients& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int max_exponent() const noexcept { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  double coefficient(int k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  WeightedPoly scaled(double s) const {
    Coefficients out;
    for (const auto& [k, c] : coeffs_) out[k] = s * c;
    return {params_, sector_, std::move(out)};
  }

  friend WeightedPoly operator+(const WeightedPoly& f, const WeightedPoly& g) { return combine(f, g, 1.0); }
  friend WeightedPoly operator-(const WeightedPoly& f, const WeightedPoly& g) { return combine(f, g, -1.0); }
  friend WeightedPoly operator*(double s, const WeightedPoly& f) { return f.scaled(s); }

 private:
  static WeightedPoly combine(const WeightedPoly& f, const WeightedPoly& g, double sign) {
    if (!(f.params_ == g.params_) || f.sector_ != g.sector_)
      throw SectorMismatch("WeightedPoly: operands differ in n or sector");
    Coefficients out = f.coeffs_;
    for (const auto& [k, c] : g.coeffs_) out[k] += sign * c;
    return {f.params_, f.sector_, std::move(out)};
  }

  SusyParams params_;
  Sector sector_;
  Coefficients coeffs_;
};

enum class LadderOp { a, b, a_star, b_star };

inline std::string_view to_string(LadderOp op) noexcept {
  switch (op) {
    case LadderOp::a: return "a";
    case LadderOp::b: return "b";
    case LadderOp::a_star: return "a_star";
    case LadderOp::b_star: return "b_star";
  }
  return "?";
}

/// a, b* : one -> two;  b, a* : two -> one.
inline Sector domain(LadderOp op) noexcept {
  return (op == LadderOp::a || op == LadderOp::b_star) ? Sector::one : Sector::two;
}
inline Sector codomain(LadderOp op) noexcept { return other(domain(op)); }

/// Exact coefficient action of a ladder operator.  With G = x^{2n}/(2n) the
/// integrating-factor forms are
///   a (p e^-G)  = (1/sqrt2) x^{1-n} p' e^-G
///   b*(p e^-G)  = (1/sqrt2) (2 x^n p - x^{1-n} p') e^-G
///   b (q e^-G)  = (1/sqrt2) (x^{1-n} q' - (n-1) x^{-n} q) e^-G
///   a*(q e^-G)  = (1/sqrt2) (2 x^n q - x^{1-n} q' + (n-1) x^{-n} q) e^-G
inline WeightedPoly apply_ladder(LadderOp op, const WeightedPoly& f) {
  if (f.sector() != domain(op))
    throw SectorMismatch("apply_ladder: operator " + std::string(to_string(op)) + " acts on sector " +
                         std::string(to_string(domain(op))) + ", got " + std::string(to_string(f.sector())));
  const int n = f.params().n();
  const double r = 1.0 / std::numbers::sqrt2;
  std::map<int, double> out;
  for (const auto& [k, c] : f.coeffs()) {
    // Lowering part: coefficient times x^{k-n}.
    double down = 0.0;
    switch (op) {
      case LadderOp::a: down = k; break;
      case LadderOp::b_star: down = -k; break;
      case LadderOp::b: down = k - n + 1; break;
      case LadderOp::a_star: down = -(k - n + 1); break;
    }
    if (down != 0.0) out[k - n] += r * down * c;
    if (op == LadderOp::a_star || op == LadderOp::b_star) out[k + n] += 2.0 * r * c;
  }
  WeightedPoly::Coefficients kept;
  for (const auto& [k, c] : out) {
    if (c == 0.0) continue;
    if (k < 0)
      throw LatticeViolation("apply_ladder: operator " + std::string(to_string(op)) + " produced exponent " +
                             std::to_string(k));
    kept.emplace(k, c);
  }
  return {f.params(), codomain(op), std::move(kept)};
}

/// L^2(R, dx) pairing via the closed-form moments of exp(-x^{2n}/n).
inline double inner_product(const WeightedPoly& f, const WeightedPoly& g) {
  if (!(f.params() == g.params()) || f.sector() != g.sector())
    throw SectorMismatch("inner_product: operands differ in n or sector");
  if (f.is_zero() || g.is_zero()) return 0.0;
  std::vector<double> moments(f.max_exponent() + g.max_exponent() + 1);
  for (std::size_t j = 0; j < moments.size(); ++j) moments[j] = gaussian_moment(f.params(), static_cast<int>(j));
  double sum = 0.0;
  for (const auto& [j, fj] : f.coeffs())
    for (const auto& [k, gk] : g.coeffs()) sum += fj * gk * moments[j + k];
  return sum;
}

inline double norm(const WeightedPoly& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

/// psi_0 (sector one) or tilde psi_0 (sector two), both of unit norm.
inline WeightedPoly ground_state(const SusyParams& params, Sector sector) {
  const double n = params.n();
  if (sector == Sector::one) {
    const double c = std::exp((0.5 - 0.25 / n) * std::log(n) - 0.5 * log_gamma(0.5 / n));
    return {params, Sector::one, {{0, c}}};
  }
  const double c = std::exp((0.25 / n) * std::log(n) - 0.5 * log_gamma(1.0 - 0.5 / n));
  return {params, Sector::two, {{params.n() - 1, c}}};
}

namespace detail {

/// Unnormalized raising chain: (a*b*)^k psi_0, (a*b*)^k a* tilde psi_0 in sector one,
/// (b*a*)^k tilde psi_0, (b*a*)^k b* psi_0 in sector two, with l = 2k or 2k+1.
inline WeightedPoly raised_state(const SusyParams& params, Sector sector, int l) {
  if (l < 0) throw DomainError("eigenfunction: level must be non-negative");
  const bool odd = (l % 2) != 0;
  WeightedPoly f = ground_state(params, odd ? other(sector) : sector);
  if (odd) f = apply_ladder(sector == Sector::one ? LadderOp::a_star : LadderOp::b_star, f);
  for (int k = 0; k < l / 2; ++k) {
    if (sector == Sector::one)
      f = apply_ladder(LadderOp::a_star, apply_ladder(LadderOp::b_star, f));
    else
      f = apply_ladder(LadderOp::b_star, apply_ladder(LadderOp::a_star, f));
  }
  return f;
}

}  // namespace detail

/// Normalized eigenfunction psi_l (sector one) or tilde psi_l (sector two),
/// with a positive leading coefficient.
inline WeightedPoly eigenfunction(const SusyParams& params, Sector sector, int l) {
  const WeightedPoly raw = detail::raised_state(params, sector, l);
  double scale = 1.0 / norm(raw);
  if (raw.coeffs().rbegin()->second < 0.0) scale = -scale;
  return raw.scaled(scale);
}

enum class Parity { even, odd };

/// Right-hand side of the Rodrigues formulae
///   (a*b*)^l e^{-G}          = 2^{-l} e^{G} (d/dx x^{2-2n} d/dx)^l e^{-2G}
///   (a*b*)^l (2x^{2n-1}e^{-G}) = 2^{-l} e^{G} (d/dx x^{2-2n} d/dx)^l (2x^{2n-1} e^{-2G})
/// evaluated by symbolic differentiation of polynomial x e^{-2G} forms.  Unnormalized.
inline WeightedPoly rodrigues_eigenfunction(const SusyParams& params, int l, Parity parity) {
  if (l < 0) throw DomainError("rodrigues_eigenfunction: level must be non-negative");
  const int n = params.n();
  // p(x) exp(-x^{2n}/n) with possibly negative intermediate exponents.
  std::map<int, double> p;
  if (parity == Parity::even)
    p[0] = 1.0;
  else
    p[2 * n - 1] = 2.0;

  // d/dx (p e^{-2G}) = (p' - 2 x^{2n-1} p) e^{-2G}
  const auto differentiate = [n](const std::map<int, double>& in) {
    std::map<int, double> out;
    for (const auto& [k, c] : in) {
      if (k != 0) out[k - 1] += k * c;
      out[k + 2 * n - 1] -= 2.0 * c;
    }
    return out;
  };
  for (int step = 0; step < l; ++step) {
    std::map<int, double> q = differentiate(p);
    std::map<int, double> shifted;
    for (const auto& [k, c] : q)
      if (c != 0.0) shifted[k + 2 - 2 * n] = c;
    p = differentiate(shifted);
  }
  const double scale = std::ldexp(1.0, -l);
  WeightedPoly::Coefficients kept;
  for (const auto& [k, c] : p) {
    if (c == 0.0) continue;
    if (k < 0) throw LatticeViolation("rodrigues_eigenfunction: negative exponent " + std::to_string(k));
    kept.emplace(k, scale * c);
  }
  return {params, Sector::one, std::move(kept)};
}

/// Eigenvalue of a*a on psi_l (sector one) or of b*b on tilde psi_l (sector two).
inline double eigenvalue(const SusyParams& params, Sector sector, int l) {
  if (l < 0) throw DomainError("eigenvalue: level must be non-negative");
  const int n = params.n();
  const int k = l / 2;
  const bool odd = (l % 2) != 0;
  if (sector == Sector::one) return odd ? 2.0 * n * k + params.delta() : 2.0 * n * k;
  return odd ? 2.0 * n * k + 1.0 : 2.0 * n * k;
}

/// Point value f(x); the Gaussian factor is applied once and underflow yields 0.
inline double eval_real(const WeightedPoly& f, double x) {
  if (f.is_zero()) return 0.0;
  const int n = f.params().n();
  const double envelope = std::exp(-std::pow(x, 2 * n) / (2.0 * n));
  if (envelope == 0.0) return 0.0;
  // Horner over the sparse exponents, highest first.
  double acc = 0.0;
  int prev = f.max_exponent();
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = acc * std::pow(x, prev - it->first) + it->second;
    prev = it->first;
  }
  acc *= std::pow(x, prev);
  return acc * envelope;
}

}  // namespace susyb
