#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gaugekit {

//! One nonzero structure constant f^{ab}_c (0-based indices).
struct StructureConstant {
  int a = 0;
  int b = 0;
  int c = 0;
  double value = 0.0;
};

//! Finite-dimensional Lie algebra given by structure constants f^{ab}_c.
//
//  Construction only checks shapes; `validate` checks the algebraic
//  identities. The Casimir metric is the identity.
class LieAlgebra {
 public:
  // f holds n^3 entries, f[(a*n + b)*n + c] = f^{ab}_c.
  LieAlgebra(int dimension, std::vector<double> f);

  static LieAlgebra from_entries(int dimension, std::span<const StructureConstant> entries);
  static LieAlgebra u1();
  static LieAlgebra su2();
  // n copies of u(1): all structure constants zero.
  static LieAlgebra abelian(int dimension);

  int dimension() const { return n_; }
  double f(int a, int b, int c) const { return f_[static_cast<std::size_t>((a * n_ + b) * n_ + c)]; }
  bool is_abelian() const { return nonzero_.empty(); }
  // Entries with f^{ab}_c != 0, in (a, b, c) lexicographic order.
  const std::vector<StructureConstant>& nonzero_entries() const { return nonzero_; }

  // delta_ab I^a I^b
  double casimir(std::span<const double> isospin) const;

 private:
  int n_;
  std::vector<double> f_;
  std::vector<StructureConstant> nonzero_;
};

struct IdentityCheck {
  std::string name;
  bool passed = true;
  double worst_value = 0.0;
  std::vector<int> worst_index;  // 0-based
};

struct AlgebraValidation {
  IdentityCheck antisymmetry;
  IdentityCheck jacobi;

  bool passed() const { return antisymmetry.passed && jacobi.passed; }
};

inline constexpr double kAlgebraTolerance = 1e-12;

// Antisymmetry f^{ab}_c = -f^{ba}_c and the Jacobi identity, both to
// kAlgebraTolerance absolute.
AlgebraValidation validate(const LieAlgebra& algebra);

// (-f^{ab}_c)_c, the coefficients of {I^a, I^b} = -f^{ab}_c I^c.
// Throws std::out_of_range for a bad index.
std::vector<double> bracket_coefficients(const LieAlgebra& algebra, int a, int b);

}  // namespace gaugekit
