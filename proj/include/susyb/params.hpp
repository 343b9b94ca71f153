#pragma once

#include <string>
#include <string_view>

#include "susyb/errors.hpp"

namespace susyb {

/// Index of the coupled-SUSY family a*a = bb* + gamma, aa* = b*b + delta with
/// gamma = -1 and delta = 2n - 1.  n = 1 is the harmonic oscillator.
class SusyParams {
 public:
  explicit SusyParams(int n) : n_(n) {
    if (n < 1) throw DomainError("SusyParams: n must be >= 1, got " + std::to_string(n));
  }

  int n() const noexcept { return n_; }
  int gamma() const noexcept { return -1; }
  int delta() const noexcept { return 2 * n_ - 1; }
  /// Exponent period of the sector lattices, delta - gamma.
  int period() const noexcept { return 2 * n_; }

  friend bool operator==(const SusyParams&, const SusyParams&) = default;

 private:
  int n_;
};

/// Sector one hosts psi_l / e_l, sector two hosts the tilde functions.
enum class Sector { one, two };

inline std::string_view to_string(Sector s) noexcept { return s == Sector::one ? "one" : "two"; }

inline Sector parse_sector(std::string_view text) {
  if (text == "one") return Sector::one;
  if (text == "two") return Sector::two;
  throw DomainError("unknown sector '" + std::string(text) + "' (expected one|two)");
}

inline Sector other(Sector s) noexcept { return s == Sector::one ? Sector::two : Sector::one; }

/// Sector one admits exponents = 0 or 2n-1 (mod 2n); sector two admits n-1 or n (mod 2n).
inline bool admits_exponent(const SusyParams& p, Sector s, int k) noexcept {
  if (k < 0) return false;
  const int r = k % p.period();
  if (s == Sector::one) return r == 0 || r == 2 * p.n() - 1;
  return r == p.n() - 1 || r == p.n();
}

/// Monomial exponent carried by the l-th basis element of a sector.
/// Shared by psi_l (leading exponent) and e_l (sole exponent).
inline int basis_exponent(const SusyParams& p, Sector s, int l) {
  if (l < 0) throw DomainError("basis level must be non-negative");
  const int n = p.n();
  const int k = l / 2;
  const bool odd = (l % 2) != 0;
  if (s == Sector::one) return odd ? 2 * n * k + 2 * n - 1 : 2 * n * k;
  return odd ? 2 * n * k + n : 2 * n * k + n - 1;
}

/// Inverse of basis_exponent.  Returns -1 when the exponent is off-lattice.
inline int basis_level(const SusyParams& p, Sector s, int exponent) noexcept {
  if (!admits_exponent(p, s, exponent)) return -1;
  const int n = p.n();
  const int r = exponent % (2 * n);
  if (s == Sector::one) {
    if (r == 0) return 2 * (exponent / (2 * n));
    return 2 * ((exponent - (2 * n - 1)) / (2 * n)) + 1;
  }
  if (r == n - 1) return 2 * ((exponent - (n - 1)) / (2 * n));
  return 2 * ((exponent - n) / (2 * n)) + 1;
}

}  // namespace susyb
