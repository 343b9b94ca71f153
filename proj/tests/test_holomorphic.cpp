#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "generators.hpp"
#include "reference_values.hpp"
#include "susyb/holomorphic.hpp"
#include "susyb/quadrature.hpp"
#include "susyb/verify.hpp"

using namespace susyb;
using enum HoloLadderOp;

namespace {

HoloVector chain(std::initializer_list<HoloLadderOp> ops, const HoloVector& f) { return detail::holo_chain(ops, f); }

/// Brute-force sum_{l < L} e_l(z) conj(e_l(w)).
complex kernel_partial_sum(const SusyParams& p, Sector s, complex w, complex z, int levels = 60) {
  complex sum{};
  for (int l = 0; l < levels; ++l) {
    const HoloVector e = basis_vector(p, s, l);
    sum += eval_holo(e, z) * std::conj(eval_holo(e, w));
  }
  return sum;
}

/// Radial decay constant sqrt(2n/pi) / ((2n)^{1/(2n)} Gamma(1/(2n))).
double asymptotic_constant(int n) {
  const double two_n = 2.0 * n;
  return std::sqrt(two_n / std::numbers::pi) / (std::pow(two_n, 1.0 / two_n) * std::tgamma(1.0 / two_n));
}

}  // namespace

TEST(BasisVector, Values) {
  for (int n = 1; n <= 4; ++n) {
    const HoloVector e0 = basis_vector(SusyParams(n), Sector::one, 0);
    EXPECT_NEAR(std::abs(e0.coefficient(0) - 1.0), 0.0, 1e-15);
  }
  for (int l = 0; l <= 20; ++l) {
    const HoloVector e = basis_vector(SusyParams(1), Sector::one, l);
    EXPECT_NEAR(e.coefficient(l).real(), 1.0 / std::sqrt(std::tgamma(l + 1.0)), 1e-15 / std::sqrt(std::tgamma(l + 1.0)) * 10);
    const HoloVector t = basis_vector(SusyParams(1), Sector::two, l);
    EXPECT_LT(std::abs(t.coefficient(l) - e.coefficient(l)), 1e-14 * std::abs(e.coefficient(l)));
  }
  const HoloVector t0 = basis_vector(SusyParams(2), Sector::two, 0);
  EXPECT_NEAR(t0.coefficient(1).real(), ref::tilde_e0_constant_n2, 1e-14);
  EXPECT_NEAR(t0.coefficient(1).real(), std::sqrt(std::tgamma(0.25) / (2.0 * std::tgamma(0.75))), 1e-14);
}

TEST(HoloVector, RejectsOffLattice) {
  EXPECT_THROW(HoloVector(SusyParams(2), Sector::one, {{2, 1.0}}), LatticeViolation);
  EXPECT_THROW(HoloVector(SusyParams(3), Sector::two, {{0, 1.0}}), LatticeViolation);
}

TEST(HoloLadder, Monomials) {
  const SusyParams p(2);
  EXPECT_TRUE(apply_holo_ladder(frak_a, basis_vector(p, Sector::one, 0)).is_zero());
  EXPECT_TRUE(apply_holo_ladder(frak_b, HoloVector(p, Sector::two, {{1, 1.0}})).is_zero());
  for (int n = 1; n <= 4; ++n) {
    const HoloVector g = apply_holo_ladder(frak_a, HoloVector(SusyParams(n), Sector::one, {{2 * n, 1.0}}));
    EXPECT_EQ(g.sector(), Sector::two);
    EXPECT_EQ(g.coefficient(n), complex(2.0 * n));
  }
  EXPECT_THROW(apply_holo_ladder(frak_a, basis_vector(p, Sector::two, 0)), SectorMismatch);
  EXPECT_THROW(apply_holo_ladder(frak_b_star, basis_vector(p, Sector::two, 0)), SectorMismatch);
}

TEST(HoloLadder, CoupledSusyRelationsOnRandomInputs) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const SusyParams p(rng.integer(1, 5));
    const HoloVector F = gen::holo_vector(rng, p, Sector::one, 10);
    EXPECT_LT(coeff_residual(chain({frak_a_star, frak_a}, F), chain({frak_b, frak_b_star}, F) - F, coeff_scale(F)),
              1e-12);
    const HoloVector G = gen::holo_vector(rng, p, Sector::two, 10);
    EXPECT_LT(coeff_residual(chain({frak_a, frak_a_star}, G),
                             chain({frak_b_star, frak_b}, G) + complex(2.0 * p.n() - 1.0) * G, coeff_scale(G)),
              1e-12);
  }
}

TEST(HoloLadder, AgreesWithDerivativeDefinitions) {
  gen::Rng rng(8);
  for (int n = 1; n <= 3; ++n) {
    const SusyParams p(n);
    const HoloVector F = gen::holo_vector(rng, p, Sector::one, 6);
    const HoloVector G = gen::holo_vector(rng, p, Sector::two, 6);
    const complex z(0.7, 0.4);
    const complex h(1e-5, 0.0);
    const auto d = [&](auto fn) { return (fn(z + h) - fn(z - h)) / (2.0 * h); };
    const auto f = [&](complex t) { return eval_holo(F, t); };
    const auto g = [&](complex t) { return std::pow(t, 1 - n) * eval_holo(G, t); };
    EXPECT_LT(std::abs(eval_holo(apply_holo_ladder(frak_a, F), z) - std::pow(z, 1 - n) * d(f)), 1e-7);
    EXPECT_LT(std::abs(eval_holo(apply_holo_ladder(frak_b, G), z) - d(g)), 1e-7);
    EXPECT_LT(std::abs(eval_holo(apply_holo_ladder(frak_a_star, G), z) - std::pow(z, n) * eval_holo(G, z)), 1e-13);
  }
}

TEST(HoloInnerProduct, BasisAndMonomials) {
  const SusyParams p(2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const complex v = holo_inner_product(basis_vector(p, Sector::one, i), basis_vector(p, Sector::one, j));
      EXPECT_NEAR(std::abs(v - (i == j ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  // ||z^{2n}||^2 = 1/c_2^2 = (2n)^2 Gamma(1 + 1/(2n)) / Gamma(1/(2n)).
  const HoloVector z4(p, Sector::one, {{4, 1.0}});
  EXPECT_NEAR(holo_inner_product(z4, z4).real(), 16.0 * std::tgamma(1.25) / std::tgamma(0.25), 1e-13);
  // Same quantity by polar quadrature.
  const PolarRule rule = build_polar_rule(p, Sector::one, 8, 1e-12);
  const complex q = integrate_polar([](complex z, complex zb) { return std::pow(z, 4) * std::pow(zb, 4); }, rule,
                                    Sector::one);
  EXPECT_NEAR(q.real(), 16.0 * std::tgamma(1.25) / std::tgamma(0.25), 1e-10);
  EXPECT_THROW(holo_inner_product(basis_vector(p, Sector::one, 0), basis_vector(p, Sector::two, 0)), SectorMismatch);
}

TEST(HoloInnerProduct, ConjugateLinearInSecond) {
  gen::Rng rng(4);
  const SusyParams p(3);
  const HoloVector F = gen::holo_vector(rng, p, Sector::two, 5);
  const HoloVector G = gen::holo_vector(rng, p, Sector::two, 5);
  const complex s(0.3, -1.2);
  const double scale = std::max(1.0, std::abs(holo_inner_product(F, G)));
  EXPECT_LT(std::abs(holo_inner_product(F, s * G) - std::conj(s) * holo_inner_product(F, G)), 1e-13 * scale);
  EXPECT_LT(std::abs(holo_inner_product(s * F, G) - s * holo_inner_product(F, G)), 1e-13 * scale);
}

TEST(Weight, HarmonicOscillatorWeight) {
  for (Sector s : {Sector::one, Sector::two})
    for (double r : {0.0, 0.5, 1.0, 2.0, 3.0})
      EXPECT_NEAR(weight(SusyParams(1), s, std::polar(r, 0.3)), std::exp(-r * r) / std::numbers::pi, 1e-12);
}

TEST(Weight, ZeroLimits) {
  EXPECT_EQ(weight(SusyParams(2), Sector::two, 0.0), 0.0);
  for (int n = 2; n <= 4; ++n) {
    const SusyParams p(n);
    // The weight is continuous at the origin: compare with a tiny radius.
    EXPECT_NEAR(weight(p, Sector::one, 1e-4), weight(p, Sector::one, 0.0), 1e-6);
    EXPECT_NEAR(weight(p, Sector::two, 1e-4), 0.0, 1e-6);
  }
}

TEST(Weight, AsymptoticDecay) {
  const int n = 2;
  const double r = 3.0;
  const double lead = asymptotic_constant(n) * std::pow(r, n - 1) * std::exp(-std::pow(r, 2 * n) / n);
  EXPECT_LT(std::abs(weight(SusyParams(n), Sector::one, r) / lead - 1.0), 0.02);
  EXPECT_LT(std::abs(weight(SusyParams(n), Sector::two, r) / lead - 1.0), 0.02);
}

TEST(Weight, PositiveAwayFromOrigin) {
  gen::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const SusyParams p(rng.integer(1, 5));
    const complex z = rng.disc(1.5);
    EXPECT_GT(weight(p, Sector::one, z), 0.0);
    if (z != 0.0) EXPECT_GT(weight(p, Sector::two, z), 0.0);
  }
}

TEST(Weight, AdjointnessUnderMeasure) {
  // <frak_a F, G>_2 = <F, z^n G>_1 with both sides integrated against the weights.
  gen::Rng rng(15);
  for (int n = 1; n <= 3; ++n) {
    const SusyParams p(n);
    const HoloVector F = gen::holo_vector(rng, p, Sector::one, 5);
    const HoloVector G = gen::holo_vector(rng, p, Sector::two, 5);
    const HoloVector aF = apply_holo_ladder(frak_a, F);
    const HoloVector zG = apply_holo_ladder(frak_a_star, G);
    const int top = std::max(F.max_exponent(), zG.max_exponent());
    const PolarRule r1 = build_polar_rule(p, Sector::one, top, 1e-11);
    const PolarRule r2 = build_polar_rule(p, Sector::two, top, 1e-11);
    const complex lhs = integrate_polar(
        [&](complex z, complex) { return eval_holo(aF, z) * std::conj(eval_holo(G, z)); }, r2, Sector::two);
    const complex rhs = integrate_polar(
        [&](complex z, complex) { return eval_holo(F, z) * std::conj(eval_holo(zG, z)); }, r1, Sector::one);
    EXPECT_LT(std::abs(lhs - rhs), 1e-7 * std::max(1.0, std::abs(rhs))) << n;
    EXPECT_LT(std::abs(lhs - holo_inner_product(aF, G)), 1e-7 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(ReproducingKernel, Values) {
  for (int n = 1; n <= 3; ++n)
    EXPECT_LT(std::abs(reproducing_kernel(SusyParams(n), Sector::one, complex(0.8, 0.3), 0.0) - 1.0), 1e-15);
  for (Sector s : {Sector::one, Sector::two}) {
    const complex w(0.4, -1.1), z(1.3, 0.6);
    EXPECT_LT(std::abs(reproducing_kernel(SusyParams(1), s, w, z) - std::exp(z * std::conj(w))), 1e-12);
  }
  const SusyParams p2(2);
  EXPECT_LT(std::abs(reproducing_kernel(p2, Sector::one, 1.0, 1.0) - kernel_partial_sum(p2, Sector::one, 1.0, 1.0)),
            1e-12);
}

TEST(ReproducingKernel, MatchesPartialSums) {
  gen::Rng rng(19);
  for (int n = 1; n <= 3; ++n)
    for (Sector s : {Sector::one, Sector::two})
      for (int trial = 0; trial < 6; ++trial) {
        const complex z = rng.disc(2.0), w = rng.disc(2.0);
        const complex closed = reproducing_kernel(SusyParams(n), s, w, z);
        EXPECT_LT(std::abs(closed - kernel_partial_sum(SusyParams(n), s, w, z)), 1e-10 * std::max(1.0, std::abs(closed)));
      }
}

TEST(ReproducingKernel, HermitianSymmetry) {
  gen::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const SusyParams p(rng.integer(1, 4));
    const Sector s = rng.integer(0, 1) ? Sector::one : Sector::two;
    const complex z = rng.disc(2.0), w = rng.disc(2.0);
    const complex kzw = reproducing_kernel(p, s, w, z);
    EXPECT_LT(std::abs(kzw - std::conj(reproducing_kernel(p, s, z, w))), 1e-13 * std::max(1.0, std::abs(kzw)));
  }
}

TEST(ReproducingKernel, ReproducingPropertyBothPaths) {
  gen::Rng rng(29);
  for (int n = 1; n <= 3; ++n)
    for (Sector s : {Sector::one, Sector::two}) {
      const SusyParams p(n);
      const PolarRule rule = build_polar_rule(p, s, basis_exponent(p, s, 6) + 64, 1e-11);
      for (int trial = 0; trial < 10; ++trial) {
        const HoloVector F = gen::holo_vector(rng, p, s, 6);
        const complex w = rng.disc(1.5);
        const complex value = eval_holo(F, w);
        // Coefficient path: <F, F_w> = sum_l F_l conj(conj(e_l(w))) over F's support.
        complex coeff{};
        for (const auto& [l, c] : basis_coefficients(F)) coeff += c * eval_holo(basis_vector(p, s, l), w);
        EXPECT_LT(std::abs(coeff - value), 1e-12 * std::max(1.0, std::abs(value)));
        // Quadrature path against the closed-form kernel.
        const complex quad = integrate_polar(
            [&](complex z, complex) { return eval_holo(F, z) * std::conj(reproducing_kernel(p, s, w, z)); }, rule, s);
        EXPECT_LT(std::abs(quad - value), 1e-8 * std::max(1.0, std::abs(value))) << n << ' ' << trial;
      }
    }
}

TEST(EvalHolo, Values) {
  const SusyParams p(3);
  EXPECT_EQ(eval_holo(basis_vector(p, Sector::one, 0), complex(2.0, 5.0)), complex(1.0));
  EXPECT_EQ(eval_holo(HoloVector(p, Sector::one), complex(2.0, 5.0)), complex(0.0));
  EXPECT_EQ(eval_holo(HoloVector(p, Sector::one, {{5, complex(0.3, 0.1)}}), complex(1.0)), complex(0.3, 0.1));
}
