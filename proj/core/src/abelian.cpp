#include "gaugekit/abelian.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaugekit/error.hpp"

namespace gaugekit {

struct AbelianField::Tables {
  // One tape per derivative order; outputs in row-major PotentialJet order.
  std::array<CompiledExpr, 4> order;
};

AbelianField::AbelianField() : AbelianField(std::array<Expr, 4>{}) {}

AbelianField::AbelianField(std::array<Expr, 4> potential, ParamSet params, double coupling)
    : potential_(std::move(potential)), params_(std::move(params)), coupling_(coupling) {
  if (!std::isfinite(coupling_)) throw std::invalid_argument("coupling must be finite");
  tables_ = build_tables(potential_, params_);
}

AbelianField AbelianField::parse(const std::array<std::string, 4>& components, ParamSet params,
                                 double coupling) {
  std::array<Expr, 4> a;
  for (int mu = 0; mu < 4; ++mu) a[mu] = gaugekit::parse(components[mu]);
  return AbelianField(std::move(a), std::move(params), coupling);
}

std::shared_ptr<const AbelianField::Tables> AbelianField::build_tables(const std::array<Expr, 4>& potential,
                                                                      const ParamSet& params) {
  std::vector<Expr> o0(potential.begin(), potential.end());
  std::vector<Expr> o1;
  std::vector<Expr> o2;
  std::vector<Expr> o3;
  o1.reserve(16);
  o2.reserve(64);
  o3.reserve(256);
  for (int mu = 0; mu < 4; ++mu) {
    for (int a = 0; a < 4; ++a) o1.push_back(differentiate(potential[mu], a));
  }
  for (const Expr& e : o1) {
    for (int b = 0; b < 4; ++b) o2.push_back(differentiate(e, b));
  }
  for (const Expr& e : o2) {
    for (int c = 0; c < 4; ++c) o3.push_back(differentiate(e, c));
  }
  auto t = std::make_shared<AbelianField::Tables>();
  t->order[0] = CompiledExpr(o0, params);
  t->order[1] = CompiledExpr(o1, params);
  t->order[2] = CompiledExpr(o2, params);
  t->order[3] = CompiledExpr(o3, params);
  return t;
}

PotentialJet AbelianField::jet(const Point4& x, int order) const {
  if (order < 0 || order > 3) throw std::out_of_range("jet order must be in 0..3");
  PotentialJet j;
  const VariableValues v{x, {}, {}};
  const double g = coupling_;
  {
    tables_->order[0].evaluate_into(v, j.a);
    for (double& e : j.a) e *= g;
  }
  if (order >= 1) {
    std::array<double, 16> buf;
    tables_->order[1].evaluate_into(v, buf);
    for (int i = 0; i < 16; ++i) j.d1[i / 4][i % 4] = g * buf[i];
  }
  if (order >= 2) {
    std::array<double, 64> buf;
    tables_->order[2].evaluate_into(v, buf);
    for (int i = 0; i < 64; ++i) j.d2[i / 16][(i / 4) % 4][i % 4] = g * buf[i];
  }
  if (order >= 3) {
    std::array<double, 256> buf;
    tables_->order[3].evaluate_into(v, buf);
    for (int i = 0; i < 256; ++i) j.d3[i / 64][(i / 16) % 4][(i / 4) % 4][i % 4] = g * buf[i];
  }
  return j;
}

AbelianField gauge_transformed(const AbelianField& field, const Expr& chi) {
  std::array<Expr, 4> a = field.potential();
  for (int mu = 0; mu < 4; ++mu) a[mu] = a[mu] + differentiate(chi, mu);
  return AbelianField(std::move(a), field.params(), field.coupling());
}

namespace {

CovariantTensor strength_from(const PotentialJet& j) {
  CovariantTensor f;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) f.set_antisymmetric(mu, nu, j.d1[nu][mu] - j.d1[mu][nu]);
  }
  return f;
}

// d_alpha F_{mu nu}
double d_strength(const PotentialJet& j, int alpha, int mu, int nu) {
  return j.d2[nu][mu][alpha] - j.d2[mu][nu][alpha];
}

}  // namespace

CovariantTensor field_strength(const AbelianField& field, const Point4& x) {
  return strength_from(field.jet(x, 1));
}

EMVectors em_vectors_direct(const AbelianField& field, const Point4& x) {
  const PotentialJet j = field.jet(x, 1);
  EMVectors out;
  for (int i = 1; i <= 3; ++i) {
    const double a_upper_dt = -j.d1[i][0];  // d_0 A^i
    out.e[i - 1] = -a_upper_dt - j.d1[0][i];
  }
  out.h[0] = j.d1[3][2] - j.d1[2][3];
  out.h[1] = j.d1[1][3] - j.d1[3][1];
  out.h[2] = j.d1[2][1] - j.d1[1][2];
  return out;
}

EMVectors em_vectors(const AbelianField& field, const Point4& x) {
  const CovariantTensor f = field_strength(field, x);
  const CovariantTensor fd = dual(f);
  EMVectors out;
  for (int i = 1; i <= 3; ++i) {
    out.e[i - 1] = f(0, i);
    out.h[i - 1] = fd(0, i);
  }
  const EMVectors direct = em_vectors_direct(field, x);
  const double tol = 1e-12 * (1.0 + f.max_abs());
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(direct.e[i] - out.e[i]) > tol || std::fabs(direct.h[i] - out.h[i]) > tol) {
      throw ConsistencyError("em_vectors: tensor extraction disagrees with E = -d0 A - grad A0, H = curl A");
    }
  }
  return out;
}

Residual bianchi_residual(const AbelianField& field, const Point4& x) {
  const PotentialJet j = field.jet(x, 2);
  Residual r;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int al = 0; al < 4; ++al) {
        const double t1 = d_strength(j, mu, nu, al);
        const double t2 = d_strength(j, nu, al, mu);
        const double t3 = d_strength(j, al, mu, nu);
        r.add_term_magnitude(t1);
        r.add_term_magnitude(t2);
        r.add_term_magnitude(t3);
        r.value = std::max(r.value, std::fabs(t1 + t2 + t3));
      }
    }
  }
  return r;
}

CovariantVector current(const AbelianField& field, const Point4& x) {
  const PotentialJet j = field.jet(x, 2);
  CovariantVector out;
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += Metric::diagonal[nu] * d_strength(j, nu, mu, nu);
    out[mu] = s;
  }
  return out;
}

Residual continuity_residual(const AbelianField& field, const Point4& x) {
  const PotentialJet j = field.jet(x, 3);
  Residual r;
  double sum = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      // d_mu d_nu F_{mu nu}
      const double t = Metric::diagonal[mu] * Metric::diagonal[nu] * (j.d3[nu][mu][nu][mu] - j.d3[mu][nu][nu][mu]);
      r.add_term_magnitude(j.d3[nu][mu][nu][mu]);
      r.add_term_magnitude(j.d3[mu][nu][nu][mu]);
      sum += t;
    }
  }
  r.value = std::fabs(sum);
  return r;
}

Residual faraday_residual(const AbelianField& field, const Point4& x) {
  const PotentialJet j = field.jet(x, 2);
  Residual r;
  // H_l = F_{jk} for cyclic (l, j, k).
  static constexpr int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& c : cyc) {
    const int l = c[0];
    const double dh_dt = d_strength(j, 0, c[1], c[2]);
    r.add_term_magnitude(dh_dt);
    double curl = 0.0;
    for (int jj = 1; jj <= 3; ++jj) {
      for (int k = 1; k <= 3; ++k) {
        const int eps = levi_civita3(jj, k, l);
        if (eps == 0) continue;
        // dE_j/dx_k = -d_k F_{0j}
        const double de = -d_strength(j, k, 0, jj);
        r.add_term_magnitude(de);
        curl += eps * de;
      }
    }
    r.value = std::max(r.value, std::fabs(dh_dt - curl));
  }
  return r;
}

Residual div_h_residual(const AbelianField& field, const Point4& x) {
  const PotentialJet j = field.jet(x, 2);
  Residual r;
  const double t1 = d_strength(j, 1, 2, 3);
  const double t2 = d_strength(j, 2, 3, 1);
  const double t3 = d_strength(j, 3, 1, 2);
  r.add_term_magnitude(t1);
  r.add_term_magnitude(t2);
  r.add_term_magnitude(t3);
  r.value = std::fabs(t1 + t2 + t3);
  return r;
}

}  // namespace gaugekit
