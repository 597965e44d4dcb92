#include "gaugekit/nonabelian.hpp"

#include <cmath>
#include <sstream>

namespace gaugekit {

CovariantTensor LieValuedTensor::contracted(std::span<const double> isospin) const {
  CovariantTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      double s = 0.0;
      for (int c = 0; c < n_; ++c) s += (*this)(mu, nu, c) * isospin[static_cast<std::size_t>(c)];
      out.set_antisymmetric(mu, nu, s);
    }
  }
  return out;
}

CovariantTensor LieValuedTensor::component(int c) const {
  CovariantTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) out.set_antisymmetric(mu, nu, (*this)(mu, nu, c));
  }
  return out;
}

struct YangMillsField::Tables {
  CompiledExpr values;
  CompiledExpr first;
  CompiledExpr second;
};

YangMillsField::YangMillsField(LieAlgebra algebra, std::vector<Expr> components, ParamSet params,
                               double coupling)
    : algebra_(std::move(algebra)),
      components_(std::move(components)),
      params_(std::move(params)),
      coupling_(coupling) {
  const AlgebraValidation report = validate(algebra_);
  if (!report.passed()) {
    throw InvalidAlgebraError("Lie algebra fails " +
                                  std::string(report.antisymmetry.passed ? "jacobi" : "antisymmetry") +
                                  " check",
                              report);
  }
  const auto n = static_cast<std::size_t>(algebra_.dimension());
  if (components_.size() != 4 * n) {
    throw std::invalid_argument("Yang-Mills potential needs 4 x " + std::to_string(n) + " components");
  }
  if (!std::isfinite(coupling_)) throw std::invalid_argument("coupling must be finite");

  std::vector<Expr> first;
  first.reserve(components_.size() * 4);
  for (const Expr& e : components_) {
    for (int al = 0; al < 4; ++al) first.push_back(differentiate(e, al));
  }
  std::vector<Expr> second;
  second.reserve(first.size() * 4);
  for (const Expr& e : first) {
    for (int be = 0; be < 4; ++be) second.push_back(differentiate(e, be));
  }
  auto t = std::make_shared<Tables>();
  t->values = CompiledExpr(components_, params_);
  t->first = CompiledExpr(first, params_);
  t->second = CompiledExpr(second, params_);
  tables_ = std::move(t);
}

YangMillsField YangMillsField::parse(LieAlgebra algebra, const std::vector<std::string>& components,
                                     ParamSet params, double coupling) {
  std::vector<Expr> exprs;
  exprs.reserve(components.size());
  for (const auto& s : components) exprs.push_back(gaugekit::parse(s));
  return YangMillsField(std::move(algebra), std::move(exprs), std::move(params), coupling);
}

GaugeJet YangMillsField::jet(const Point4& x, int order) const {
  if (order < 0 || order > 2) throw std::out_of_range("jet order must be in 0..2");
  GaugeJet j;
  j.n = dimension();
  const VariableValues v{x, {}, {}};
  const auto scale = [this](std::vector<double>& buf) {
    for (double& e : buf) e *= coupling_;
  };
  j.values.resize(tables_->values.output_count());
  tables_->values.evaluate_into(v, j.values);
  scale(j.values);
  if (order >= 1) {
    j.first.resize(tables_->first.output_count());
    tables_->first.evaluate_into(v, j.first);
    scale(j.first);
  }
  if (order >= 2) {
    j.second.resize(tables_->second.output_count());
    tables_->second.evaluate_into(v, j.second);
    scale(j.second);
  }
  return j;
}

AbelianField abelian_component(const YangMillsField& field, int a) {
  if (a < 0 || a >= field.dimension()) throw std::out_of_range("algebra index out of range");
  std::array<Expr, 4> comps;
  for (int mu = 0; mu < 4; ++mu) comps[mu] = field.component(mu, a);
  return AbelianField(std::move(comps), field.params(), field.coupling());
}

namespace {

const std::vector<StructureConstant>& constants_of(const YangMillsField& field) {
  return field.algebra().nonzero_entries();
}

// F_{mu nu c} from a jet of order >= 1.
LieValuedTensor strength_from(const GaugeJet& j, const std::vector<StructureConstant>& fs) {
  LieValuedTensor out(j.n);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      for (int c = 0; c < j.n; ++c) {
        double quad = 0.0;
        for (const auto& k : fs) {
          if (k.c == c) quad += j.a(mu, k.a) * j.a(nu, k.b) * k.value;
        }
        out.set_antisymmetric(mu, nu, c, (j.d1(nu, c, mu) - j.d1(mu, c, nu)) - quad);
      }
    }
  }
  return out;
}

}  // namespace

LieValuedTensor ym_field_strength(const YangMillsField& field, const Point4& x) {
  return strength_from(field.jet(x, 1), constants_of(field));
}

std::vector<double> covariant_derivative(const YangMillsField& field, std::span<const Expr> t,
                                         int alpha, const Point4& x) {
  const int n = field.dimension();
  if (static_cast<int>(t.size()) != n) throw std::invalid_argument("covariant_derivative: T needs n components");
  if (alpha < 0 || alpha > 3) throw std::out_of_range("covariant_derivative: alpha outside 0..3");
  std::vector<Expr> exprs(t.begin(), t.end());
  for (const Expr& e : t) exprs.push_back(differentiate(e, alpha));
  const CompiledExpr tape(exprs, field.params());
  std::vector<double> vals(exprs.size());
  tape.evaluate_into(VariableValues{x, {}, {}}, vals);
  const GaugeJet j = field.jet(x, 0);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] = vals[static_cast<std::size_t>(n + c)];
  // f^{ba}_c A_{alpha b} T_a
  for (const auto& k : constants_of(field)) {
    const int b = k.a;
    const int a = k.b;
    out[static_cast<std::size_t>(k.c)] -= k.value * j.a(alpha, b) * vals[static_cast<std::size_t>(a)];
  }
  return out;
}

Residual ym_bianchi_residual(const YangMillsField& field, const Point4& x) {
  const GaugeJet j = field.jet(x, 2);
  const auto& fs = constants_of(field);
  const int n = j.n;
  const LieValuedTensor f = strength_from(j, fs);

  // dF[(alpha * 16 + mu * 4 + nu) * n + c] = d_alpha F_{mu nu c}
  std::vector<double> dF(static_cast<std::size_t>(64 * n), 0.0);
  Residual r;
  for (int al = 0; al < 4; ++al) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        for (int c = 0; c < n; ++c) {
          double quad = 0.0;
          for (const auto& k : fs) {
            if (k.c != c) continue;
            quad += k.value * (j.d1(mu, k.a, al) * j.a(nu, k.b) + j.a(mu, k.a) * j.d1(nu, k.b, al));
          }
          const double d = (j.d2(nu, c, mu, al) - j.d2(mu, c, nu, al)) - quad;
          dF[static_cast<std::size_t>((al * 16 + mu * 4 + nu) * n + c)] = d;
        }
      }
    }
  }
  const auto covariant = [&](int al, int mu, int nu, int c) {
    double s = dF[static_cast<std::size_t>((al * 16 + mu * 4 + nu) * n + c)];
    for (const auto& k : fs) {
      if (k.c != c) continue;
      // f^{ba}_c A_{alpha b} F_{mu nu a}: k.a plays b, k.b plays a.
      s -= k.value * j.a(al, k.a) * f(mu, nu, k.b);
    }
    return s;
  };
  for (int al = 0; al < 4; ++al) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        for (int c = 0; c < n; ++c) {
          const double t1 = covariant(al, mu, nu, c);
          const double t2 = covariant(mu, nu, al, c);
          const double t3 = covariant(nu, al, mu, c);
          r.add_term_magnitude(t1);
          r.add_term_magnitude(t2);
          r.add_term_magnitude(t3);
          r.value = std::max(r.value, std::fabs(t1 + t2 + t3));
        }
      }
    }
  }
  return r;
}

GaugeTerm::GaugeTerm(int dimension, std::vector<Expr> components, const ParamSet& params)
    : n_(dimension), components_(std::move(components)) {
  if (n_ < 1) throw std::invalid_argument("gauge term dimension must be positive");
  if (components_.size() != static_cast<std::size_t>(4 * n_)) {
    throw std::invalid_argument("gauge term needs 4 x " + std::to_string(n_) + " components");
  }
  std::vector<Expr> first;
  first.reserve(components_.size() * 4);
  for (const Expr& e : components_) {
    for (int al = 0; al < 4; ++al) first.push_back(differentiate(e, al));
  }
  value_tape_ = std::make_shared<const CompiledExpr>(components_, params);
  derivative_tape_ = std::make_shared<const CompiledExpr>(first, params);
}

std::vector<double> GaugeTerm::values(const Point4& x) const {
  std::vector<double> out(value_tape_->output_count());
  value_tape_->evaluate_into(VariableValues{x, {}, {}}, out);
  return out;
}

std::vector<double> GaugeTerm::first_derivatives(const Point4& x) const {
  std::vector<double> out(derivative_tape_->output_count());
  derivative_tape_->evaluate_into(VariableValues{x, {}, {}}, out);
  return out;
}

Residual gauge_term_residual(const YangMillsField& field, const GaugeTerm& g, const Point4& x) {
  const int n = field.dimension();
  if (g.dimension() != n) throw std::invalid_argument("gauge term dimension does not match the algebra");
  const GaugeJet j = field.jet(x, 0);
  const std::vector<double> gv = g.values(x);
  const std::vector<double> gd = g.first_derivatives(x);
  const auto& fs = constants_of(field);
  const auto G = [&](int mu, int a) { return gv[static_cast<std::size_t>(mu * n + a)]; };
  const auto dG = [&](int mu, int a, int al) { return gd[static_cast<std::size_t>((mu * n + a) * 4 + al)]; };

  Residual r;
  // (D_mu G_nu)_a = d_mu G_{nu a} - f^{bc}_a A_{mu b} G_{nu c}
  const auto cov = [&](int mu, int nu, int a) {
    double s = dG(nu, a, mu);
    r.add_term_magnitude(s);
    for (const auto& k : fs) {
      if (k.c != a) continue;
      const double t = k.value * j.a(mu, k.a) * G(nu, k.b);
      r.add_term_magnitude(t);
      s -= t;
    }
    return s;
  };
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int a = 0; a < n; ++a) r.value = std::max(r.value, std::fabs(cov(mu, nu, a) - cov(nu, mu, a)));
    }
  }
  return r;
}

CertifiedGaugeTerm certify_gauge_term(const YangMillsField& field, GaugeTerm g,
                                      std::span<const Point4> points) {
  double worst = 0.0;
  for (const Point4& x : points) {
    const Residual r = gauge_term_residual(field, g, x);
    if (!(r.normalized() <= kGaugeTermTolerance)) {
      std::ostringstream msg;
      msg << "gauge term violates (D_mu G_nu)_a - (D_nu G_mu)_a = 0: residual " << r.value << " at ("
          << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ")";
      throw std::invalid_argument(msg.str());
    }
    worst = std::max(worst, r.normalized());
  }
  return CertifiedGaugeTerm(std::move(g), worst);
}

}  // namespace gaugekit
