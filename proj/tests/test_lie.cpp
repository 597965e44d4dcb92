#include <gtest/gtest.h>

#include "gaugekit/lie.hpp"
#include "gaugekit/sampling.hpp"
#include "support/oracles.hpp"

namespace gaugekit {
namespace {

int eps3(int a, int b, int c) { return testing::permutation_sign({0, a + 1, b + 1, c + 1}); }

TEST(LieAlgebra, Su2IsEpsilon) {
  const LieAlgebra su2 = LieAlgebra::su2();
  ASSERT_EQ(su2.dimension(), 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) EXPECT_EQ(su2.f(a, b, c), eps3(a, b, c));
    }
  }
  EXPECT_EQ(su2.nonzero_entries().size(), 6u);
}

// Antisymmetry and Jacobi by a brute-force loop over all index tuples.
bool brute_force_valid(const LieAlgebra& g) {
  const int n = g.dimension();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (std::fabs(g.f(a, b, c) + g.f(b, a, c)) > 1e-12) return false;
        for (int e = 0; e < n; ++e) {
          double s = 0.0;
          for (int d = 0; d < n; ++d) {
            s += g.f(a, b, d) * g.f(d, c, e) + g.f(b, c, d) * g.f(d, a, e) + g.f(c, a, d) * g.f(d, b, e);
          }
          if (std::fabs(s) > 1e-12) return false;
        }
      }
    }
  }
  return true;
}

TEST(Validate, Su2AndU1Pass) {
  EXPECT_TRUE(validate(LieAlgebra::su2()).passed());
  EXPECT_TRUE(brute_force_valid(LieAlgebra::su2()));
  EXPECT_TRUE(validate(LieAlgebra::u1()).passed());
  EXPECT_TRUE(validate(LieAlgebra::abelian(4)).passed());
}

TEST(Validate, DiagonalEntryFailsAntisymmetryAtThatIndex) {
  const std::vector<StructureConstant> entries{{0, 0, 0, 1.0}};
  const AlgebraValidation r = validate(LieAlgebra::from_entries(2, entries));
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.antisymmetry.passed);
  EXPECT_EQ(r.antisymmetry.worst_index, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(r.antisymmetry.worst_value, 2.0);
}

TEST(Validate, PerturbedSu2Fails) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(27);
    const LieAlgebra su2 = LieAlgebra::su2();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) f[static_cast<std::size_t>((a * 3 + b) * 3 + c)] = su2.f(a, b, c);
      }
    }
    f[rng.index(27)] += 0.1;
    const LieAlgebra g(3, f);
    EXPECT_FALSE(validate(g).passed());
    EXPECT_EQ(validate(g).passed(), brute_force_valid(g));
  }
}

TEST(Validate, AntisymmetricButNonJacobiIsCaught) {
  // f^{12}_1 = 1, f^{13}_2 = 1 (and antisymmetric partners): not a Lie algebra.
  const std::vector<StructureConstant> entries{{0, 1, 0, 1.0}, {1, 0, 0, -1.0}, {0, 2, 1, 1.0}, {2, 0, 1, -1.0}};
  const LieAlgebra g = LieAlgebra::from_entries(3, entries);
  const AlgebraValidation r = validate(g);
  EXPECT_TRUE(r.antisymmetry.passed);
  EXPECT_EQ(r.jacobi.passed, brute_force_valid(g));
  EXPECT_FALSE(r.jacobi.passed);
  EXPECT_EQ(r.jacobi.worst_index.size(), 4u);
}

TEST(Validate, DimensionMismatchThrows) {
  EXPECT_THROW(LieAlgebra(2, std::vector<double>(7, 0.0)), std::invalid_argument);
  EXPECT_THROW(LieAlgebra(0, {}), std::invalid_argument);
  const std::vector<StructureConstant> bad{{0, 3, 0, 1.0}};
  EXPECT_THROW(LieAlgebra::from_entries(3, bad), std::out_of_range);
}

TEST(BracketCoefficients, Su2Signs) {
  const LieAlgebra su2 = LieAlgebra::su2();
  EXPECT_EQ(bracket_coefficients(su2, 0, 1), (std::vector<double>{0, 0, -1}));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const auto ab = bracket_coefficients(su2, a, b);
      const auto ba = bracket_coefficients(su2, b, a);
      for (int c = 0; c < 3; ++c) EXPECT_EQ(ab[static_cast<std::size_t>(c)], -ba[static_cast<std::size_t>(c)]);
      if (a == b) EXPECT_EQ(ab, (std::vector<double>{0, 0, 0}));
    }
  }
  EXPECT_EQ(bracket_coefficients(LieAlgebra::u1(), 0, 0), (std::vector<double>{0}));
  EXPECT_THROW(bracket_coefficients(su2, 0, 3), std::out_of_range);
}

TEST(LieAlgebra, Casimir) {
  const std::vector<double> i{1.0, 2.0, 2.0};
  EXPECT_EQ(LieAlgebra::su2().casimir(i), 9.0);
}

}  // namespace
}  // namespace gaugekit
