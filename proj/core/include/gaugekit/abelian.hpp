#pragma once

#include <array>
#include <memory>
#include <string>

#include "gaugekit/expr.hpp"
#include "gaugekit/residual.hpp"
#include "gaugekit/sampling.hpp"
#include "gaugekit/tensor.hpp"

namespace gaugekit {

//! Exact values of a potential and its coordinate derivatives at one point.
//
//  Index layout: a[mu] = A_mu, d1[mu][a] = d_a A_mu,
//  d2[mu][a][b] = d_b d_a A_mu, d3[mu][a][b][c] = d_c d_b d_a A_mu, each
//  built by differentiating in exactly that order. Entries above the
//  requested order are left zero.
struct PotentialJet {
  std::array<double, 4> a{};
  std::array<std::array<double, 4>, 4> d1{};
  std::array<std::array<std::array<double, 4>, 4>, 4> d2{};
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> d3{};
};

//! Electromagnetic potential A_mu(x) (covariant components) with a coupling
//  scale g that multiplies every component.
class AbelianField {
 public:
  AbelianField();  // A = 0
  AbelianField(std::array<Expr, 4> potential, ParamSet params = {}, double coupling = 1.0);

  static AbelianField parse(const std::array<std::string, 4>& components, ParamSet params = {},
                            double coupling = 1.0);

  const std::array<Expr, 4>& potential() const { return potential_; }
  const ParamSet& params() const { return params_; }
  double coupling() const { return coupling_; }

  // order in 0..3; coupling applied.
  PotentialJet jet(const Point4& x, int order) const;

 private:
  struct Tables;
  static std::shared_ptr<const Tables> build_tables(const std::array<Expr, 4>& potential, const ParamSet& params);

  std::array<Expr, 4> potential_;
  ParamSet params_;
  double coupling_ = 1.0;
  std::shared_ptr<const Tables> tables_;
};

// A_mu + d_mu chi, same parameters and coupling.
AbelianField gauge_transformed(const AbelianField& field, const Expr& chi);

// F_{mu nu} = d_mu A_nu - d_nu A_mu.
CovariantTensor field_strength(const AbelianField& field, const Point4& x);

struct EMVectors {
  std::array<double, 3> e{};
  std::array<double, 3> h{};
};

// E_i = F_{0i}, H_i = dual(F)_{0i}. Cross-checked against
// em_vectors_direct; disagreement beyond 1e-12 relative throws
// ConsistencyError.
EMVectors em_vectors(const AbelianField& field, const Point4& x);

// Three-vector formulas E = -d_0 A - grad A_0 (A^i = -A_i, contravariant)
// and H = curl of the covariant spatial components (A_1, A_2, A_3), which
// is the reading consistent with epsilon_{0123} = +1.
EMVectors em_vectors_direct(const AbelianField& field, const Point4& x);

// max over (mu, nu, alpha) of |d_mu F_{nu alpha} + d_nu F_{alpha mu} + d_alpha F_{mu nu}|.
Residual bianchi_residual(const AbelianField& field, const Point4& x);

// j_mu = eta^{nu rho} d_rho F_{mu nu}.
CovariantVector current(const AbelianField& field, const Point4& x);

// |d^mu j_mu| from exact third derivatives.
Residual continuity_residual(const AbelianField& field, const Point4& x);

// max_l |dH_l/dt - epsilon_{jkl} dE_j/dx_k|, with x_k the covariant spatial
// coordinate (x_k = -x^k) and t = x^0.
Residual faraday_residual(const AbelianField& field, const Point4& x);

// |dH_l/dx^l|
Residual div_h_residual(const AbelianField& field, const Point4& x);

}  // namespace gaugekit
