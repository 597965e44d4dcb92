#include "gaugekit/lie.hpp"

#include <cmath>
#include <stdexcept>

#include "gaugekit/tensor.hpp"

namespace gaugekit {

LieAlgebra::LieAlgebra(int dimension, std::vector<double> f) : n_(dimension), f_(std::move(f)) {
  if (n_ < 1) throw std::invalid_argument("Lie algebra dimension must be positive");
  const auto expected = static_cast<std::size_t>(n_) * n_ * n_;
  if (f_.size() != expected) {
    throw std::invalid_argument("structure constant array has " + std::to_string(f_.size()) +
                                " entries, expected " + std::to_string(expected));
  }
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      for (int c = 0; c < n_; ++c) {
        const double v = this->f(a, b, c);
        if (!std::isfinite(v)) throw std::invalid_argument("structure constants must be finite");
        if (v != 0.0) nonzero_.push_back({a, b, c, v});
      }
    }
  }
}

LieAlgebra LieAlgebra::from_entries(int dimension, std::span<const StructureConstant> entries) {
  if (dimension < 1) throw std::invalid_argument("Lie algebra dimension must be positive");
  const auto n = static_cast<std::size_t>(dimension);
  std::vector<double> f(n * n * n, 0.0);
  for (const auto& e : entries) {
    if (e.a < 0 || e.b < 0 || e.c < 0 || e.a >= dimension || e.b >= dimension || e.c >= dimension) {
      throw std::out_of_range("structure constant index out of range");
    }
    f[(static_cast<std::size_t>(e.a) * n + e.b) * n + e.c] = e.value;
  }
  return LieAlgebra(dimension, std::move(f));
}

LieAlgebra LieAlgebra::u1() { return abelian(1); }

LieAlgebra LieAlgebra::abelian(int dimension) {
  const auto n = static_cast<std::size_t>(dimension < 1 ? 0 : dimension);
  return LieAlgebra(dimension, std::vector<double>(n * n * n, 0.0));
}

LieAlgebra LieAlgebra::su2() {
  std::vector<double> f(27, 0.0);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) f[(a * 3 + b) * 3 + c] = levi_civita3(a + 1, b + 1, c + 1);
    }
  }
  return LieAlgebra(3, std::move(f));
}

double LieAlgebra::casimir(std::span<const double> isospin) const {
  double s = 0.0;
  for (double v : isospin) s += v * v;
  return s;
}

AlgebraValidation validate(const LieAlgebra& alg) {
  const int n = alg.dimension();
  AlgebraValidation out;
  out.antisymmetry.name = "antisymmetry";
  out.jacobi.name = "jacobi";

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const double v = std::fabs(alg.f(a, b, c) + alg.f(b, a, c));
        if (out.antisymmetry.worst_index.empty() || v > out.antisymmetry.worst_value) {
          out.antisymmetry.worst_value = v;
          out.antisymmetry.worst_index = {a, b, c};
        }
      }
    }
  }
  out.antisymmetry.passed = out.antisymmetry.worst_value <= kAlgebraTolerance;

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int e = 0; e < n; ++e) {
            s += alg.f(a, b, e) * alg.f(e, c, d) + alg.f(b, c, e) * alg.f(e, a, d) +
                 alg.f(c, a, e) * alg.f(e, b, d);
          }
          const double v = std::fabs(s);
          if (out.jacobi.worst_index.empty() || v > out.jacobi.worst_value) {
            out.jacobi.worst_value = v;
            out.jacobi.worst_index = {a, b, c, d};
          }
        }
      }
    }
  }
  out.jacobi.passed = out.jacobi.worst_value <= kAlgebraTolerance;
  return out;
}

std::vector<double> bracket_coefficients(const LieAlgebra& alg, int a, int b) {
  const int n = alg.dimension();
  if (a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("algebra index out of range");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] = -alg.f(a, b, c);
  return out;
}

}  // namespace gaugekit
