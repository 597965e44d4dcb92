#pragma once

#include <array>
#include <cstddef>

namespace gaugekit {

//! Index position of a tensor slot.
enum class Index { upper, lower };

//! Minkowski metric eta = diag(+1, -1, -1, -1); it is its own inverse.
struct Metric {
  static constexpr std::array<double, 4> diagonal{1.0, -1.0, -1.0, -1.0};

  static constexpr double eta(int mu, int nu) { return mu == nu ? diagonal[mu] : 0.0; }
};

// Totally antisymmetric symbol with lower indices, epsilon_{0123} = +1.
int levi_civita(int a, int b, int c, int d);
// Three-index symbol epsilon_{ijk} over spatial indices 1..3, epsilon_{123} = +1.
int levi_civita3(int i, int j, int k);

template <Index I>
struct FourVector {
  std::array<double, 4> c{};

  constexpr double& operator[](int mu) { return c[static_cast<std::size_t>(mu)]; }
  constexpr double operator[](int mu) const { return c[static_cast<std::size_t>(mu)]; }

  friend bool operator==(const FourVector&, const FourVector&) = default;
};

using ContravariantVector = FourVector<Index::upper>;
using CovariantVector = FourVector<Index::lower>;

constexpr CovariantVector lower(const ContravariantVector& v) {
  CovariantVector out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = Metric::diagonal[mu] * v[mu];
  return out;
}

constexpr ContravariantVector raise(const CovariantVector& v) {
  ContravariantVector out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = Metric::diagonal[mu] * v[mu];
  return out;
}

constexpr double contract(const ContravariantVector& a, const CovariantVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// u^mu eta_{mu nu} u^nu
constexpr double minkowski_square(const ContravariantVector& u) {
  return u[0] * u[0] - u[1] * u[1] - u[2] * u[2] - u[3] * u[3];
}

//! 4x4 tensor with an index position per slot.
//
//  `set_antisymmetric` stores [nu][mu] as the exact negation of [mu][nu] and
//  zeroes the diagonal; field strengths are only ever built that way.
template <Index A, Index B>
class RankTwoTensor {
 public:
  constexpr double operator()(int mu, int nu) const { return m_[mu][nu]; }
  constexpr double& operator()(int mu, int nu) { return m_[mu][nu]; }

  constexpr void set_antisymmetric(int mu, int nu, double value) {
    if (mu == nu) {
      m_[mu][mu] = 0.0;
      return;
    }
    m_[mu][nu] = value;
    m_[nu][mu] = -value;
  }

  constexpr bool is_antisymmetric() const {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        if (m_[mu][nu] != -m_[nu][mu]) return false;
      }
    }
    return true;
  }

  double max_abs() const;

  friend bool operator==(const RankTwoTensor&, const RankTwoTensor&) = default;

 private:
  std::array<std::array<double, 4>, 4> m_{};
};

using CovariantTensor = RankTwoTensor<Index::lower, Index::lower>;
using ContravariantTensor = RankTwoTensor<Index::upper, Index::upper>;

template <Index A, Index B>
double RankTwoTensor<A, B>::max_abs() const {
  double m = 0.0;
  for (const auto& row : m_) {
    for (double v : row) m = v < 0 ? (m < -v ? -v : m) : (m < v ? v : m);
  }
  return m;
}

ContravariantTensor raise_both(const CovariantTensor& t);

// F_{mu nu} u^nu
CovariantVector contract_second(const CovariantTensor& t, const ContravariantVector& u);

// tilde-F_{mu nu} = 1/2 epsilon_{mu nu alpha beta} F^{alpha beta}.
// Throws std::invalid_argument unless F is antisymmetric to within 1e-12 of
// its largest component.
CovariantTensor dual(const CovariantTensor& f);

}  // namespace gaugekit
