#include <gtest/gtest.h>

#include <cmath>

#include "gaugekit/bracket.hpp"
#include "gaugekit/error.hpp"
#include "support/oracles.hpp"

namespace gaugekit {
namespace {

std::vector<PhasePoint> phase_points(std::uint64_t seed, std::size_t n, int isospin_dim) {
  Rng rng(seed);
  return sample_phase_points(Box{}, {}, {-2.0, 2.0}, isospin_dim, {-2.0, 2.0}, n, rng);
}

AbelianField symmetric_gauge() { return AbelianField::parse({"0", "-B*x2/2", "B*x1/2", "0"}, ParamSet{{"B", 1.5}}); }

TEST(PoissonBracket, CanonicalPairs) {
  for (const PhasePoint& p : phase_points(1, 20, 0)) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        const auto x_mu = PhaseFunction::position(mu);
        EXPECT_EQ(poisson_bracket(x_mu, PhaseFunction::momentum(nu))(p), Metric::eta(mu, nu));
        EXPECT_EQ(poisson_bracket(x_mu, PhaseFunction::position(nu))(p), 0.0);
        EXPECT_EQ(poisson_bracket(PhaseFunction::momentum(mu), PhaseFunction::momentum(nu))(p), 0.0);
      }
    }
  }
}

TEST(PoissonBracket, Su2IsospinExample) {
  PhasePoint p;
  p.isospin = {0, 0, 5};
  const LieAlgebra su2 = LieAlgebra::su2();
  EXPECT_EQ(poisson_bracket(PhaseFunction::isospin(0), PhaseFunction::isospin(1), su2)(p), -5.0);
  EXPECT_LE(verify_isospin_algebra(su2, phase_points(2, 100, 3)).worst.value, 1e-15);
}

TEST(PoissonBracket, AntisymmetricAndLeibniz) {
  const LieAlgebra su2 = LieAlgebra::su2();
  const PhaseFunction f(parse("x1*x2") * Expr::momentum(0) + Expr::isospin(0) * Expr::isospin(2));
  const PhaseFunction g(sin(Expr::coordinate(0)) * Expr::momentum(1) + Expr::isospin(1));
  const PhaseFunction h(Expr::momentum(2) * Expr::isospin(0) + Expr::coordinate(3));
  for (const PhasePoint& p : phase_points(3, 30, 3)) {
    EXPECT_NEAR(poisson_bracket(f, g, su2)(p), -poisson_bracket(g, f, su2)(p), 1e-13);
    const double leibniz = poisson_bracket(f, g * h, su2)(p);
    const double expanded = (poisson_bracket(f, g, su2) * h + g * poisson_bracket(f, h, su2))(p);
    EXPECT_LE(testing::relative_error(leibniz, expanded), 1e-13);
  }
}

TEST(VerifyPx, ZeroPotentialAndMassTwo) {
  const MinimalCoupling c(AbelianField{}, 2.0);
  EXPECT_EQ(verify_px(c, phase_points(4, 100, 0)).worst.value, 0.0);
  PhasePoint p;
  EXPECT_EQ((2.0 * c.bracket(PhaseFunction::position(0), c.velocity(0)))(p), 1.0);
}

TEST(VerifyPx, AnyPotential) {
  Rng rng(5);
  const MinimalCoupling c(AbelianField(testing::random_abelian_potential(rng, true)), 1.3);
  EXPECT_LE(verify_px(c, phase_points(6, 100, 0)).worst.normalized(), 1e-14);
  const MinimalCoupling ym(YangMillsField(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2)), 0.8);
  EXPECT_LE(verify_px(ym, phase_points(7, 100, 3)).worst.normalized(), 1e-14);
}

TEST(BracketFieldStrength, ZeroPotential) {
  const MinimalCoupling c(AbelianField{}, 1.0);
  EXPECT_EQ(bracket_field_strength(c, PhasePoint{}), CovariantTensor{});
}

TEST(BracketFieldStrength, SymmetricGaugeMatchesAbelianModule) {
  const AbelianField a = symmetric_gauge();
  const MinimalCoupling c(a, 1.7);
  for (const PhasePoint& p : phase_points(8, 50, 0)) {
    const CovariantTensor br = bracket_field_strength(c, p);
    const CovariantTensor direct = field_strength(a, p.x);
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) EXPECT_LE(std::fabs(br(mu, nu) - direct(mu, nu)), 1e-13);
    }
  }
}

TEST(BracketFieldStrength, PureGaugeVanishes) {
  const Expr chi = parse("sin(x0*x1) + x2^2*x3");
  std::array<Expr, 4> a;
  for (int mu = 0; mu < 4; ++mu) a[static_cast<std::size_t>(mu)] = differentiate(chi, mu);
  const MinimalCoupling c(AbelianField(a), 1.0);
  for (const PhasePoint& p : phase_points(9, 50, 0)) EXPECT_LE(bracket_field_strength(c, p).max_abs(), 1e-13);
}

TEST(BracketFieldStrength, ConsistencyAcrossRoutes) {
  Rng rng(10);
  const MinimalCoupling ab(AbelianField(testing::random_abelian_potential(rng, false)), 1.0);
  EXPECT_LE(field_strength_consistency(ab, phase_points(11, 100, 0)).worst.normalized(), 1e-12);
  const MinimalCoupling ym(YangMillsField(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2), {}, 0.9), 1.4);
  EXPECT_LE(field_strength_consistency(ym, phase_points(12, 100, 3)).worst.normalized(), 1e-12);
}

TEST(Jacobi, Examples) {
  const std::vector<PhasePoint> pts = phase_points(13, 100, 3);
  EXPECT_EQ(jacobi_residual(PhaseFunction::position(0), PhaseFunction::momentum(0), PhaseFunction::position(1),
                            std::nullopt, pts)
                .worst.value,
            0.0);
  Rng rng(14);
  const MinimalCoupling c(AbelianField(testing::random_abelian_potential(rng, true)), 1.0);
  EXPECT_LE(jacobi_residual(c.velocity(0), c.velocity(1), PhaseFunction::position(2), std::nullopt, pts)
                .worst.normalized(),
            1e-12);
  EXPECT_LE(jacobi_residual(PhaseFunction::isospin(0), PhaseFunction::isospin(1), PhaseFunction::isospin(2),
                            LieAlgebra::su2(), pts)
                .worst.value,
            1e-14);
}

TEST(Jacobi, MixedYangMillsVelocities) {
  Rng rng(15);
  const MinimalCoupling c(YangMillsField(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2)), 1.0);
  EXPECT_LE(jacobi_residual(c.velocity(0), c.velocity(1), c.velocity(2), LieAlgebra::su2(), phase_points(16, 50, 3),
                            c.params())
                .worst.normalized(),
            1e-11);
}

TEST(VerifyIb, ZeroAndAbelian) {
  EXPECT_EQ(verify_ib(MinimalCoupling(YangMillsField(LieAlgebra::su2(), std::vector<Expr>(12)), 1.0),
                      phase_points(17, 50, 3))
                .worst.value,
            0.0);
  Rng rng(18);
  const MinimalCoupling u1(YangMillsField(LieAlgebra::u1(), testing::random_lie_valued(rng, 1, 2)), 1.0);
  EXPECT_LE(verify_ib(u1, phase_points(19, 50, 1)).worst.value, 1e-15);
}

TEST(VerifyIb, ConstantSu2PotentialAgainstIndexSum) {
  Rng rng(20);
  std::vector<Expr> a;
  std::vector<double> av;
  for (int i = 0; i < 12; ++i) {
    av.push_back(rng.uniform(-1.0, 1.0));
    a.emplace_back(av.back());
  }
  const LieAlgebra su2 = LieAlgebra::su2();
  const MinimalCoupling c(YangMillsField(su2, a), 1.0);
  PhasePoint p;
  p.isospin = {1, 2, 3};
  p.pi = {0.3, -0.2, 0.1, 0.5};
  EXPECT_LE(verify_ib(c, std::span<const PhasePoint>(&p, 1)).worst.normalized(), 1e-13);
  // Both sides by hand: m {I^a, xdot_mu} vs A_{mu b} I^c f^{ab}_c.
  for (int aa = 0; aa < 3; ++aa) {
    for (int mu = 0; mu < 4; ++mu) {
      double rhs = 0.0;
      for (int b = 0; b < 3; ++b) {
        for (int cc = 0; cc < 3; ++cc) rhs += av[static_cast<std::size_t>(mu * 3 + b)] * p.isospin[static_cast<std::size_t>(cc)] * su2.f(aa, b, cc);
      }
      EXPECT_LE(std::fabs(c.bracket(PhaseFunction::isospin(aa), c.velocity(mu))(p) - rhs), 1e-13);
    }
  }
}

TEST(Hamiltonian, GeneratesTheLorentzForce) {
  Rng rng(21);
  const MinimalCoupling ab(AbelianField(testing::random_abelian_potential(rng, true)), 1.2);
  EXPECT_LE(hamiltonian_generation_residual(ab, phase_points(22, 100, 0)).worst.normalized(), 1e-12);
  const MinimalCoupling ym(YangMillsField(LieAlgebra::su2(), testing::random_lie_valued(rng, 3, 2)), 0.7);
  EXPECT_LE(hamiltonian_generation_residual(ym, phase_points(23, 100, 3)).worst.normalized(), 1e-12);
}

TEST(MinimalCoupling, RejectsBadMassAndShortIsospin) {
  EXPECT_THROW(MinimalCoupling(AbelianField{}, 0.0), std::invalid_argument);
  const MinimalCoupling c(YangMillsField(LieAlgebra::su2(), std::vector<Expr>(12)), 1.0);
  EXPECT_THROW(verify_px(c, phase_points(24, 3, 2)), std::invalid_argument);
}

}  // namespace
}  // namespace gaugekit
