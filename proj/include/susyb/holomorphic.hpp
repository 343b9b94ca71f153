#pragma once

// Holomorphic sectors F_1 = closure of span{1, z^{2n-1}, z^{2n}, z^{4n-1}, ...} and
// F_2 = closure of span{z^{n-1}, z^n, z^{3n-1}, z^{3n}, ...} with their Bessel-K
// weights, orthonormal monomial bases, ladder operators and reproducing kernels.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>

#include "susyb/errors.hpp"
#include "susyb/params.hpp"
#include "susyb/specfun.hpp"

namespace susyb {

using complex = std::complex<double>;

/// Integer power of a complex number by repeated squaring.
inline complex ipow(complex z, int k) {
  complex result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

/// F(z) = sum_k coeffs[k] z^k over the sector lattice.
class HoloVector {
 public:
  using Coefficients = std::map<int, complex>;

  HoloVector(SusyParams params, Sector sector, Coefficients coeffs = {}) : params_(params), sector_(sector) {
    for (const auto& [k, c] : coeffs) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("HoloVector: non-finite coefficient at exponent " + std::to_string(k));
      if (c == 0.0) continue;
      if (!admits_exponent(params_, sector_, k))
        throw LatticeViolation("HoloVector: exponent " + std::to_string(k) + " is not admitted by sector " +
                               std::string(to_string(sector_)) + " for n=" + std::to_string(params_.n()));
      coeffs_.emplace(k, c);
    }
  }

  const SusyParams& params() const noexcept { return params_; }
  Sector sector() const noexcept { return sector_; }
  const Coefficients& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int max_exponent() const noexcept { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  complex coefficient(int k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? complex{} : it->second;
  }

  friend HoloVector operator+(const HoloVector& f, const HoloVector& g) { return combine(f, g, 1.0); }
  friend HoloVector operator-(const HoloVector& f, const HoloVector& g) { return combine(f, g, -1.0); }
  friend HoloVector operator*(complex s, const HoloVector& f) {
    Coefficients out;
    for (const auto& [k, c] : f.coeffs_) out[k] = s * c;
    return {f.params_, f.sector_, std::move(out)};
  }

 private:
  static HoloVector combine(const HoloVector& f, const HoloVector& g, double sign) {
    if (!(f.params_ == g.params_) || f.sector_ != g.sector_)
      throw SectorMismatch("HoloVector: operands differ in n or sector");
    Coefficients out = f.coeffs_;
    for (const auto& [k, c] : g.coeffs_) out[k] += sign * c;
    return {f.params_, f.sector_, std::move(out)};
  }

  SusyParams params_;
  Sector sector_;
  Coefficients coeffs_;
};

/// Normalization constant of e_l (sector one) or tilde e_l (sector two):
/// e_l(z) = basis_constant * z^{basis_exponent}.
inline double basis_constant(const SusyParams& params, Sector sector, int l) {
  if (l < 0) throw DomainError("basis_constant: level must be non-negative");
  const double n = params.n();
  const double two_n = 2.0 * n;
  const double log_two_n = std::log(two_n);
  const int k = l / 2;
  const bool odd = (l % 2) != 0;
  double power = 0.0;  // exponent of 2n in the denominator
  double shift = 0.0;  // argument offset of Gamma(k + shift)
  if (sector == Sector::one) {
    power = odd ? 2.0 * k + 2.0 - 1.0 / n : 2.0 * k;
    shift = odd ? 2.0 - 1.0 / two_n : 1.0 / two_n;
  } else {
    power = odd ? 2.0 * k + 1.0 : 2.0 * k + 1.0 - 1.0 / n;
    shift = odd ? 1.0 + 1.0 / two_n : 1.0 - 1.0 / two_n;
  }
  const double log_sq = log_gamma(1.0 / two_n) - power * log_two_n - log_gamma(k + shift) - log_gamma(k + 1.0);
  return std::exp(0.5 * log_sq);
}

inline HoloVector basis_vector(const SusyParams& params, Sector sector, int l) {
  return {params, sector, {{basis_exponent(params, sector, l), complex(basis_constant(params, sector, l), 0.0)}}};
}

enum class HoloLadderOp { frak_a, frak_b, frak_a_star, frak_b_star };

inline std::string_view to_string(HoloLadderOp op) noexcept {
  switch (op) {
    case HoloLadderOp::frak_a: return "frak_a";
    case HoloLadderOp::frak_b: return "frak_b";
    case HoloLadderOp::frak_a_star: return "frak_a_star";
    case HoloLadderOp::frak_b_star: return "frak_b_star";
  }
  return "?";
}

inline Sector domain(HoloLadderOp op) noexcept {
  return (op == HoloLadderOp::frak_a || op == HoloLadderOp::frak_b_star) ? Sector::one : Sector::two;
}
inline Sector codomain(HoloLadderOp op) noexcept { return other(domain(op)); }

/// frak_a = z^{1-n} d/dz, frak_b = d/dz z^{1-n}, both adjoints multiply by z^n.
inline HoloVector apply_holo_ladder(HoloLadderOp op, const HoloVector& f) {
  if (f.sector() != domain(op))
    throw SectorMismatch("apply_holo_ladder: operator " + std::string(to_string(op)) + " acts on sector " +
                         std::string(to_string(domain(op))));
  const int n = f.params().n();
  HoloVector::Coefficients out;
  for (const auto& [k, c] : f.coeffs()) {
    switch (op) {
      case HoloLadderOp::frak_a_star:
      case HoloLadderOp::frak_b_star: out[k + n] += c; break;
      case HoloLadderOp::frak_a:
      case HoloLadderOp::frak_b: {
        const double factor = op == HoloLadderOp::frak_a ? k : k - n + 1;
        if (factor == 0.0) break;
        if (k - n < 0)
          throw LatticeViolation("apply_holo_ladder: exponent " + std::to_string(k - n) + " is negative");
        out[k - n] += factor * c;
        break;
      }
    }
  }
  return {f.params(), codomain(op), std::move(out)};
}

/// Coefficients of F relative to the orthonormal basis, keyed by level l.
inline std::map<int, complex> basis_coefficients(const HoloVector& f) {
  std::map<int, complex> out;
  for (const auto& [k, c] : f.coeffs()) {
    const int l = basis_level(f.params(), f.sector(), k);
    out[l] = c / basis_constant(f.params(), f.sector(), l);
  }
  return out;
}

/// <F, G> = sum_l F_l conj(G_l) in the orthonormal basis; conjugate-linear in G.
inline complex holo_inner_product(const HoloVector& f, const HoloVector& g) {
  if (!(f.params() == g.params()) || f.sector() != g.sector())
    throw SectorMismatch("holo_inner_product: operands differ in n or sector");
  complex sum{};
  for (const auto& [k, fc] : f.coeffs()) {
    const auto it = g.coeffs().find(k);
    if (it == g.coeffs().end()) continue;
    const double c = basis_constant(f.params(), f.sector(), basis_level(f.params(), f.sector(), k));
    sum += fc * std::conj(it->second) / (c * c);
  }
  return sum;
}

inline double holo_norm(const HoloVector& f) { return std::sqrt(std::max(0.0, holo_inner_product(f, f).real())); }

/// Shared prefactor 2 / ((2n)^{1/(2n)} pi Gamma(1/(2n))) of rho_1 and rho_2.
inline double weight_prefactor(const SusyParams& params) {
  const double two_n = 2.0 * params.n();
  return 2.0 * std::exp(-std::log(two_n) / two_n - log_gamma(1.0 / two_n)) / std::numbers::pi;
}

/// Order of the Bessel K factor in rho_1 (1 - 1/(2n)) or rho_2 (1/(2n)).
inline double weight_order(const SusyParams& params, Sector sector) {
  const double inv = 1.0 / (2.0 * params.n());
  return sector == Sector::one ? 1.0 - inv : inv;
}

/// rho(z) = C |z|^{2n-1} K_nu(|z|^{2n}/n), with the removable point z = 0 taken as its limit.
inline double weight(const SusyParams& params, Sector sector, complex z, const SeriesConfig& cfg = {}) {
  const int n = params.n();
  const double r = std::abs(z);
  const double two_n = 2.0 * n;
  const double arg = std::pow(r, 2 * n) / n;
  if (r == 0.0 || arg == 0.0) {
    if (sector == Sector::one)
      return std::exp(log_gamma(1.0 - 1.0 / two_n) + (1.0 - 1.0 / n) * std::log(two_n) - log_gamma(1.0 / two_n)) /
             std::numbers::pi;
    return n == 1 ? 1.0 / std::numbers::pi : 0.0;
  }
  return weight_prefactor(params) * std::pow(r, 2 * n - 1) * bessel_k(weight_order(params, sector), arg, cfg);
}

/// Reproducing kernel F_w(z) (sector one) or tilde F_w(z) (sector two) in 0F1 form.
inline complex reproducing_kernel(const SusyParams& params, Sector sector, complex w, complex z,
                                  const SeriesConfig& cfg = {}) {
  const int n = params.n();
  const double two_n = 2.0 * n;
  const complex t = z * std::conj(w);
  const complex arg = ipow(t, 2 * n) / (two_n * two_n);
  const double lg = log_gamma(1.0 / two_n);
  if (sector == Sector::one) {
    const double b2 = 2.0 - 1.0 / two_n;
    const double c2 = std::exp(lg - log_gamma(b2) - (2.0 - 1.0 / n) * std::log(two_n));
    return hyp0f1(1.0 / two_n, arg, cfg) + c2 * ipow(t, 2 * n - 1) * hyp0f1(b2, arg, cfg);
  }
  const double b1 = 1.0 - 1.0 / two_n;
  const double c1 = std::exp(lg - log_gamma(b1) - (1.0 - 1.0 / n) * std::log(two_n));
  return c1 * ipow(t, n - 1) * hyp0f1(b1, arg, cfg) + ipow(t, n) * hyp0f1(1.0 + 1.0 / two_n, arg, cfg);
}

/// Horner evaluation over the sparse exponent set.
inline complex eval_holo(const HoloVector& f, complex z) {
  if (f.is_zero()) return {};
  complex acc{};
  int prev = f.max_exponent();
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = acc * ipow(z, prev - it->first) + it->second;
    prev = it->first;
  }
  return acc * ipow(z, prev);
}

}  // namespace susyb
