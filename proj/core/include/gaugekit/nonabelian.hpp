#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaugekit/abelian.hpp"
#include "gaugekit/expr.hpp"
#include "gaugekit/lie.hpp"
#include "gaugekit/residual.hpp"
#include "gaugekit/sampling.hpp"
#include "gaugekit/tensor.hpp"

namespace gaugekit {

class InvalidAlgebraError : public std::invalid_argument {
 public:
  InvalidAlgebraError(const std::string& message, AlgebraValidation report)
      : std::invalid_argument(message), report_(std::move(report)) {}

  const AlgebraValidation& report() const noexcept { return report_; }

 private:
  AlgebraValidation report_;
};

//! Lie-algebra-valued 4x4 tensor T_{mu nu c}, antisymmetric in (mu, nu).
class LieValuedTensor {
 public:
  explicit LieValuedTensor(int dimension)
      : n_(dimension), v_(static_cast<std::size_t>(16 * dimension), 0.0) {}

  int dimension() const { return n_; }
  double operator()(int mu, int nu, int c) const { return v_[index(mu, nu, c)]; }

  void set_antisymmetric(int mu, int nu, int c, double value) {
    if (mu == nu) {
      v_[index(mu, mu, c)] = 0.0;
      return;
    }
    v_[index(mu, nu, c)] = value;
    v_[index(nu, mu, c)] = -value;
  }

  // T_{mu nu c} I^c
  CovariantTensor contracted(std::span<const double> isospin) const;
  // Component c as an ordinary tensor.
  CovariantTensor component(int c) const;

 private:
  std::size_t index(int mu, int nu, int c) const {
    return static_cast<std::size_t>((mu * 4 + nu) * n_ + c);
  }

  int n_;
  std::vector<double> v_;
};

//! Exact values of A_{mu b}(x) and its derivatives at one point.
//
//  a(mu, b); d1(mu, b, alpha) = d_alpha A_{mu b};
//  d2(mu, b, alpha, beta) = d_beta d_alpha A_{mu b}.
struct GaugeJet {
  int n = 0;
  std::vector<double> values;
  std::vector<double> first;
  std::vector<double> second;

  double a(int mu, int b) const { return values[static_cast<std::size_t>(mu * n + b)]; }
  double d1(int mu, int b, int al) const { return first[static_cast<std::size_t>((mu * n + b) * 4 + al)]; }
  double d2(int mu, int b, int al, int be) const {
    return second[static_cast<std::size_t>(((mu * n + b) * 4 + al) * 4 + be)];
  }
};

//! Non-Abelian potential A_{mu a}(x) over a validated Lie algebra.
//
//  Components are stored row-major, components[mu * n + a]. The coupling g
//  multiplies every component, so the quadratic term scales as g^2.
class YangMillsField {
 public:
  // Throws InvalidAlgebraError if the algebra fails validation.
  YangMillsField(LieAlgebra algebra, std::vector<Expr> components, ParamSet params = {},
                 double coupling = 1.0);

  static YangMillsField parse(LieAlgebra algebra, const std::vector<std::string>& components,
                              ParamSet params = {}, double coupling = 1.0);

  const LieAlgebra& algebra() const { return algebra_; }
  int dimension() const { return algebra_.dimension(); }
  const Expr& component(int mu, int a) const {
    return components_[static_cast<std::size_t>(mu * dimension() + a)];
  }
  const std::vector<Expr>& components() const { return components_; }
  const ParamSet& params() const { return params_; }
  double coupling() const { return coupling_; }

  // order in 0..2; coupling applied.
  GaugeJet jet(const Point4& x, int order) const;

 private:
  struct Tables;

  LieAlgebra algebra_;
  std::vector<Expr> components_;
  ParamSet params_;
  double coupling_ = 1.0;
  std::shared_ptr<const Tables> tables_;
};

// The potential A_{. a} of one algebra direction as an Abelian field.
AbelianField abelian_component(const YangMillsField& field, int a);

// F_{mu nu c} = d_mu A_{nu c} - d_nu A_{mu c} - A_{mu a} A_{nu b} f^{ab}_c.
LieValuedTensor ym_field_strength(const YangMillsField& field, const Point4& x);

// (D_alpha T)_c = d_alpha T_c - f^{ba}_c A_{alpha b} T_a for a Lie-valued
// scalar T given symbolically (n components, evaluated with the field's
// parameters).
std::vector<double> covariant_derivative(const YangMillsField& field, std::span<const Expr> t,
                                         int alpha, const Point4& x);

// max over (alpha, mu, nu, c) of the cyclic sum of (D_alpha F_{mu nu})_c.
Residual ym_bianchi_residual(const YangMillsField& field, const Point4& x);

//! Extra force term G_{mu a}(x), components[mu * n + a].
class GaugeTerm {
 public:
  GaugeTerm(int dimension, std::vector<Expr> components, const ParamSet& params);

  int dimension() const { return n_; }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& component(int mu, int a) const { return components_[static_cast<std::size_t>(mu * n_ + a)]; }

  // G_{mu a} at x, row-major.
  std::vector<double> values(const Point4& x) const;
  // d_alpha G_{mu a} at x, index ((mu * n + a) * 4 + alpha).
  std::vector<double> first_derivatives(const Point4& x) const;

 private:
  int n_;
  std::vector<Expr> components_;
  std::shared_ptr<const CompiledExpr> value_tape_;
  std::shared_ptr<const CompiledExpr> derivative_tape_;
};

// max over (mu, nu, a) of |(D_mu G_nu)_a - (D_nu G_mu)_a|.
Residual gauge_term_residual(const YangMillsField& field, const GaugeTerm& g, const Point4& x);

inline constexpr double kGaugeTermTolerance = 1e-9;

//! A gauge term that passed gauge_term_residual <= kGaugeTermTolerance
//  (normalized) at every sampled point. Only certified terms enter the
//  Wong force law.
class CertifiedGaugeTerm {
 public:
  const GaugeTerm& term() const { return term_; }
  double worst_residual() const { return worst_; }

 private:
  friend CertifiedGaugeTerm certify_gauge_term(const YangMillsField&, GaugeTerm, std::span<const Point4>);
  CertifiedGaugeTerm(GaugeTerm t, double worst) : term_(std::move(t)), worst_(worst) {}

  GaugeTerm term_;
  double worst_;
};

// Throws std::invalid_argument naming the worst point when the condition fails.
CertifiedGaugeTerm certify_gauge_term(const YangMillsField& field, GaugeTerm g,
                                      std::span<const Point4> points);

}  // namespace gaugekit
