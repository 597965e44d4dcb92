#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gaugekit/abelian.hpp"
#include "gaugekit/expr.hpp"
#include "gaugekit/lie.hpp"
#include "gaugekit/nonabelian.hpp"
#include "gaugekit/residual.hpp"
#include "gaugekit/sampling.hpp"
#include "gaugekit/tensor.hpp"

namespace gaugekit {

//! Point of the extended phase space: x^mu, pi_mu and I^a.
struct PhasePoint {
  Point4 x{};
  std::array<double, 4> pi{};
  std::vector<double> isospin;

  VariableValues values() const { return {x, pi, isospin}; }
};

//! Scalar function on phase space with exact partial derivatives.
//
//  Backed by an Expr over coordinate, momentum and isospin variables, so
//  every partial derivative is again a PhaseFunction.
class PhaseFunction {
 public:
  PhaseFunction() = default;
  explicit PhaseFunction(Expr e) : e_(std::move(e)) {}

  // x_mu = eta_{mu nu} x^nu
  static PhaseFunction position(int mu);
  static PhaseFunction momentum(int mu);
  static PhaseFunction isospin(int a);

  const Expr& expr() const { return e_; }

  // d/dx^mu
  PhaseFunction d_position(int mu) const { return PhaseFunction(differentiate(e_, Variable{VarKind::coordinate, mu})); }
  // d/dpi_mu
  PhaseFunction d_momentum(int mu) const { return PhaseFunction(differentiate(e_, Variable{VarKind::momentum, mu})); }
  PhaseFunction d_isospin(int a) const { return PhaseFunction(differentiate(e_, Variable{VarKind::isospin, a})); }

  double operator()(const PhasePoint& p, const ParamSet& params = {}) const;

  friend PhaseFunction operator+(const PhaseFunction& a, const PhaseFunction& b) { return PhaseFunction(a.e_ + b.e_); }
  friend PhaseFunction operator-(const PhaseFunction& a, const PhaseFunction& b) { return PhaseFunction(a.e_ - b.e_); }
  friend PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b) { return PhaseFunction(a.e_ * b.e_); }
  friend PhaseFunction operator*(double s, const PhaseFunction& a) { return PhaseFunction(Expr(s) * a.e_); }
  friend PhaseFunction operator-(const PhaseFunction& a) { return PhaseFunction(-a.e_); }

 private:
  Expr e_;
};

// {f, g} = eta_{rho sigma} (d^rho f dbar^sigma g - d^rho g dbar^sigma f), with
// d^rho = d/dx_rho = eta^{rho nu} d/dx^nu and dbar^sigma = d/dpi_sigma.
PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g);

// Spacetime part plus the Lie-Poisson part
// -f^{ab}_c I^c (df/dI^a)(dg/dI^b), so that {I^a, I^b} = -f^{ab}_c I^c.
PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const LieAlgebra& algebra);

//! A test particle minimally coupled to a potential: pi_mu = m xdot_mu + A_mu.
//
//  For an Abelian field A_mu depends on x only; for a Yang-Mills field
//  A_mu = A_{mu b}(x) I^b. The coupling scale of the field is applied.
class MinimalCoupling {
 public:
  MinimalCoupling(const AbelianField& field, double mass);
  MinimalCoupling(const YangMillsField& field, double mass);

  double mass() const { return mass_; }
  const ParamSet& params() const { return params_; }
  const std::optional<LieAlgebra>& algebra() const { return algebra_; }
  int isospin_dimension() const { return algebra_ ? algebra_->dimension() : 0; }

  const PhaseFunction& potential(int mu) const { return potential_[static_cast<std::size_t>(mu)]; }
  // xdot_mu = (pi_mu - A_mu) / m
  PhaseFunction velocity(int mu) const;
  // H = 1/2 m xdot_nu xdot^nu
  PhaseFunction hamiltonian() const;

  PhaseFunction bracket(const PhaseFunction& f, const PhaseFunction& g) const;

  // F_{mu nu} at a phase point from the field module directly: the Abelian
  // field strength, or F_{mu nu c} I^c for a Yang-Mills field.
  CovariantTensor direct_field_strength(const PhasePoint& p) const;

 private:
  double mass_;
  ParamSet params_;
  std::optional<LieAlgebra> algebra_;
  std::array<PhaseFunction, 4> potential_;
  std::optional<AbelianField> abelian_;
  std::optional<YangMillsField> yang_mills_;
};

//! Worst residual over a sample set and where it occurred.
struct SampleResidual {
  Residual worst;
  std::size_t sample = 0;
};

// max |m {x_mu, xdot_nu} - eta_{mu nu} + dbar_mu A_nu|, dbar_mu = d/dpi^mu.
SampleResidual verify_px(const MinimalCoupling& coupling, std::span<const PhasePoint> samples);

// m^2 {xdot_mu, xdot_nu}, cross-checked against
// (d_mu A_nu - d_nu A_mu) + {A_mu, A_nu}; throws ConsistencyError when the two
// disagree beyond 1e-12 relative.
CovariantTensor bracket_field_strength(const MinimalCoupling& coupling, const PhasePoint& p);

// Worst disagreement between the bracket route, the curl-plus-bracket route
// and direct_field_strength. Does not throw on mismatch.
SampleResidual field_strength_consistency(const MinimalCoupling& coupling,
                                          std::span<const PhasePoint> samples);

// max |{f,{g,h}} + {g,{h,f}} + {h,{f,g}}|.
SampleResidual jacobi_residual(const PhaseFunction& f, const PhaseFunction& g, const PhaseFunction& h,
                               const std::optional<LieAlgebra>& algebra, std::span<const PhasePoint> samples,
                               const ParamSet& params = {});

// max |{I^a, I^b} + f^{ab}_c I^c| through the bracket engine.
SampleResidual verify_isospin_algebra(const LieAlgebra& algebra, std::span<const PhasePoint> samples);

// max |m {I^a, xdot_mu} - A_{mu b} I^c f^{ab}_c|, the right-hand side summed
// by explicit index loops. Requires a Yang-Mills coupling.
SampleResidual verify_ib(const MinimalCoupling& coupling, std::span<const PhasePoint> samples);

// max |{m xdot_mu, H} - F_{mu nu} xdot^nu| with F from direct_field_strength.
SampleResidual hamiltonian_generation_residual(const MinimalCoupling& coupling,
                                               std::span<const PhasePoint> samples);

// Phase points with x from `box` (outside `exclusions`), pi and I uniform in
// the given ranges.
std::vector<PhasePoint> sample_phase_points(const Box& box, std::span<const SingularRegion> exclusions,
                                            std::pair<double, double> momentum_range, int isospin_dimension,
                                            std::pair<double, double> isospin_range, std::size_t count,
                                            Rng& rng);

}  // namespace gaugekit
