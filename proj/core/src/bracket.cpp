#include "gaugekit/bracket.hpp"

#include <cmath>
#include <stdexcept>

#include "gaugekit/error.hpp"

namespace gaugekit {

PhaseFunction PhaseFunction::position(int mu) {
  return PhaseFunction(Expr(Metric::diagonal[static_cast<std::size_t>(mu)]) * Expr::coordinate(mu));
}

PhaseFunction PhaseFunction::momentum(int mu) { return PhaseFunction(Expr::momentum(mu)); }

PhaseFunction PhaseFunction::isospin(int a) { return PhaseFunction(Expr::isospin(a)); }

double PhaseFunction::operator()(const PhasePoint& p, const ParamSet& params) const {
  return CompiledExpr(e_, params)(p.values());
}

PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g) {
  Expr sum;
  for (int mu = 0; mu < 4; ++mu) {
    sum = sum + (f.d_position(mu).expr() * g.d_momentum(mu).expr() -
                 g.d_position(mu).expr() * f.d_momentum(mu).expr());
  }
  return PhaseFunction(sum);
}

PhaseFunction poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const LieAlgebra& algebra) {
  Expr sum = poisson_bracket(f, g).expr();
  const int n = algebra.dimension();
  std::vector<Expr> df(static_cast<std::size_t>(n));
  std::vector<Expr> dg(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    df[static_cast<std::size_t>(a)] = f.d_isospin(a).expr();
    dg[static_cast<std::size_t>(a)] = g.d_isospin(a).expr();
  }
  for (const auto& k : algebra.nonzero_entries()) {
    const Expr& fa = df[static_cast<std::size_t>(k.a)];
    const Expr& gb = dg[static_cast<std::size_t>(k.b)];
    if (fa.is_zero() || gb.is_zero()) continue;
    sum = sum - Expr(k.value) * Expr::isospin(k.c) * fa * gb;
  }
  return PhaseFunction(sum);
}

// ---------------------------------------------------------------------------
// MinimalCoupling

MinimalCoupling::MinimalCoupling(const AbelianField& field, double mass)
    : mass_(mass), params_(field.params()), abelian_(field) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw std::invalid_argument("mass must be positive");
  for (int mu = 0; mu < 4; ++mu) {
    potential_[static_cast<std::size_t>(mu)] = PhaseFunction(Expr(field.coupling()) * field.potential()[mu]);
  }
}

MinimalCoupling::MinimalCoupling(const YangMillsField& field, double mass)
    : mass_(mass), params_(field.params()), algebra_(field.algebra()), yang_mills_(field) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw std::invalid_argument("mass must be positive");
  for (int mu = 0; mu < 4; ++mu) {
    Expr sum;
    for (int b = 0; b < field.dimension(); ++b) {
      sum = sum + Expr(field.coupling()) * field.component(mu, b) * Expr::isospin(b);
    }
    potential_[static_cast<std::size_t>(mu)] = PhaseFunction(sum);
  }
}

PhaseFunction MinimalCoupling::velocity(int mu) const {
  return PhaseFunction((Expr::momentum(mu) - potential(mu).expr()) / Expr(mass_));
}

PhaseFunction MinimalCoupling::hamiltonian() const {
  Expr sum;
  for (int nu = 0; nu < 4; ++nu) {
    const Expr v = velocity(nu).expr();
    sum = sum + Expr(Metric::diagonal[static_cast<std::size_t>(nu)]) * v * v;
  }
  return PhaseFunction(Expr(0.5 * mass_) * sum);
}

PhaseFunction MinimalCoupling::bracket(const PhaseFunction& f, const PhaseFunction& g) const {
  return algebra_ ? poisson_bracket(f, g, *algebra_) : poisson_bracket(f, g);
}

CovariantTensor MinimalCoupling::direct_field_strength(const PhasePoint& p) const {
  if (abelian_) return field_strength(*abelian_, p.x);
  const LieValuedTensor f = ym_field_strength(*yang_mills_, p.x);
  return f.contracted(p.isospin);
}

// ---------------------------------------------------------------------------
// Residual sweeps

namespace {

std::vector<double> run(const CompiledExpr& tape, const PhasePoint& p) {
  std::vector<double> out(tape.output_count());
  tape.evaluate_into(p.values(), out);
  return out;
}

void check_isospin(const MinimalCoupling& c, const PhasePoint& p) {
  if (static_cast<int>(p.isospin.size()) < c.isospin_dimension()) {
    throw std::invalid_argument("phase point has fewer isospin components than the algebra dimension");
  }
}

struct StrengthRoutes {
  CompiledExpr bracket_route;  // 16 entries, m^2 {xdot_mu, xdot_nu}
  CompiledExpr curl_route;     // 16 entries, (d_mu A_nu - d_nu A_mu) + {A_mu, A_nu}
};

StrengthRoutes build_strength_routes(const MinimalCoupling& c) {
  std::vector<Expr> br;
  std::vector<Expr> cu;
  std::array<PhaseFunction, 4> v;
  for (int mu = 0; mu < 4; ++mu) v[static_cast<std::size_t>(mu)] = c.velocity(mu);
  const double m2 = c.mass() * c.mass();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      br.push_back(Expr(m2) * c.bracket(v[static_cast<std::size_t>(mu)], v[static_cast<std::size_t>(nu)]).expr());
      const PhaseFunction& a_mu = c.potential(mu);
      const PhaseFunction& a_nu = c.potential(nu);
      cu.push_back((a_nu.d_position(mu).expr() - a_mu.d_position(nu).expr()) + c.bracket(a_mu, a_nu).expr());
    }
  }
  return {CompiledExpr(br, c.params()), CompiledExpr(cu, c.params())};
}

CovariantTensor to_tensor(const std::vector<double>& v) {
  CovariantTensor t;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) t(mu, nu) = v[static_cast<std::size_t>(mu * 4 + nu)];
  }
  return t;
}

}  // namespace

SampleResidual verify_px(const MinimalCoupling& c, std::span<const PhasePoint> samples) {
  std::vector<Expr> lhs;
  std::vector<Expr> bar;
  for (int mu = 0; mu < 4; ++mu) {
    const PhaseFunction x_mu = PhaseFunction::position(mu);
    for (int nu = 0; nu < 4; ++nu) {
      lhs.push_back(Expr(c.mass()) * c.bracket(x_mu, c.velocity(nu)).expr());
      // dbar_mu A_nu = d/dpi^mu A_nu = eta_{mu mu} d/dpi_mu A_nu
      bar.push_back(Expr(Metric::diagonal[static_cast<std::size_t>(mu)]) * c.potential(nu).d_momentum(mu).expr());
    }
  }
  const CompiledExpr lhs_tape(lhs, c.params());
  const CompiledExpr bar_tape(bar, c.params());
  SampleResidual out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    check_isospin(c, samples[s]);
    const auto l = run(lhs_tape, samples[s]);
    const auto b = run(bar_tape, samples[s]);
    Residual r;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        const auto i = static_cast<std::size_t>(mu * 4 + nu);
        const double eta = Metric::eta(mu, nu);
        r.add_term_magnitude(l[i]);
        r.add_term_magnitude(eta);
        r.add_term_magnitude(b[i]);
        r.value = std::max(r.value, std::fabs(l[i] - eta + b[i]));
      }
    }
    if (s == 0 || r.normalized() > out.worst.normalized()) out = {r, s};
  }
  return out;
}

CovariantTensor bracket_field_strength(const MinimalCoupling& c, const PhasePoint& p) {
  check_isospin(c, p);
  const StrengthRoutes routes = build_strength_routes(c);
  const CovariantTensor br = to_tensor(run(routes.bracket_route, p));
  const CovariantTensor cu = to_tensor(run(routes.curl_route, p));
  const double tol = 1e-12 * (1.0 + std::max(br.max_abs(), cu.max_abs()));
  CovariantTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      if (std::fabs(br(mu, nu) - cu(mu, nu)) > tol) {
        throw ConsistencyError("bracket field strength m^2{xdot_mu, xdot_nu} disagrees with dA - dA + {A, A}");
      }
      out.set_antisymmetric(mu, nu, br(mu, nu));
    }
  }
  return out;
}

SampleResidual field_strength_consistency(const MinimalCoupling& c, std::span<const PhasePoint> samples) {
  const StrengthRoutes routes = build_strength_routes(c);
  SampleResidual out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    check_isospin(c, samples[s]);
    const CovariantTensor br = to_tensor(run(routes.bracket_route, samples[s]));
    const CovariantTensor cu = to_tensor(run(routes.curl_route, samples[s]));
    const CovariantTensor direct = c.direct_field_strength(samples[s]);
    Residual r;
    r.scale = std::max({br.max_abs(), cu.max_abs(), direct.max_abs()});
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        r.value = std::max({r.value, std::fabs(br(mu, nu) - cu(mu, nu)), std::fabs(br(mu, nu) - direct(mu, nu))});
      }
    }
    if (s == 0 || r.normalized() > out.worst.normalized()) out = {r, s};
  }
  return out;
}

SampleResidual jacobi_residual(const PhaseFunction& f, const PhaseFunction& g, const PhaseFunction& h,
                               const std::optional<LieAlgebra>& algebra, std::span<const PhasePoint> samples,
                               const ParamSet& params) {
  const auto br = [&](const PhaseFunction& a, const PhaseFunction& b) {
    return algebra ? poisson_bracket(a, b, *algebra) : poisson_bracket(a, b);
  };
  const std::vector<Expr> terms{br(f, br(g, h)).expr(), br(g, br(h, f)).expr(), br(h, br(f, g)).expr()};
  const CompiledExpr tape(terms, params);
  SampleResidual out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto t = run(tape, samples[s]);
    Residual r;
    for (double v : t) r.add_term_magnitude(v);
    r.value = std::fabs(t[0] + t[1] + t[2]);
    if (s == 0 || r.normalized() > out.worst.normalized()) out = {r, s};
  }
  return out;
}

SampleResidual verify_isospin_algebra(const LieAlgebra& algebra, std::span<const PhasePoint> samples) {
  const int n = algebra.dimension();
  std::vector<Expr> lhs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      lhs.push_back(poisson_bracket(PhaseFunction::isospin(a), PhaseFunction::isospin(b), algebra).expr());
    }
  }
  const CompiledExpr tape(lhs, ParamSet{});
  SampleResidual out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const PhasePoint& p = samples[s];
    if (static_cast<int>(p.isospin.size()) < n) throw std::invalid_argument("phase point lacks isospin components");
    const auto l = run(tape, p);
    Residual r;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        double rhs = 0.0;
        for (int c = 0; c < n; ++c) rhs -= algebra.f(a, b, c) * p.isospin[static_cast<std::size_t>(c)];
        const double v = l[static_cast<std::size_t>(a * n + b)];
        r.add_term_magnitude(v);
        r.add_term_magnitude(rhs);
        r.value = std::max(r.value, std::fabs(v - rhs));
      }
    }
    if (s == 0 || r.normalized() > out.worst.normalized()) out = {r, s};
  }
  return out;
}

SampleResidual verify_ib(const MinimalCoupling& c, std::span<const PhasePoint> samples) {
  if (!c.algebra()) throw std::invalid_argument("verify_ib requires a Yang-Mills coupling");
  const LieAlgebra& alg = *c.algebra();
  const int n = alg.dimension();
  std::vector<Expr> lhs;
  for (int a = 0; a < n; ++a) {
    for (int mu = 0; mu < 4; ++mu) {
      lhs.push_back(Expr(c.mass()) * c.bracket(PhaseFunction::isospin(a), c.velocity(mu)).expr());
    }
  }
  const CompiledExpr lhs_tape(lhs, c.params());
  // A_{mu b}(x) with coupling applied, read back from the coupling's potential:
  // A_mu = sum_b A_{mu b} I^b, so A_{mu b} = dA_mu/dI^b.
  std::vector<Expr> amb;
  for (int mu = 0; mu < 4; ++mu) {
    for (int b = 0; b < n; ++b) amb.push_back(c.potential(mu).d_isospin(b).expr());
  }
  const CompiledExpr a_tape(amb, c.params());

  SampleResidual out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const PhasePoint& p = samples[s];
    check_isospin(c, p);
    const auto l = run(lhs_tape, p);
    const auto A = run(a_tape, p);
    Residual r;
    for (int a = 0; a < n; ++a) {
      for (int mu = 0; mu < 4; ++mu) {
        double rhs = 0.0;
        for (int b = 0; b < n; ++b) {
          for (int cc = 0; cc < n; ++cc) {
            rhs += A[static_cast<std::size_t>(mu * n + b)] * p.isospin[static_cast<std::size_t>(cc)] * alg.f(a, b, cc);
          }
        }
        const double v = l[static_cast<std::size_t>(a * 4 + mu)];
        r.add_term_magnitude(v);
        r.add_term_magnitude(rhs);
        r.value = std::max(r.value, std::fabs(v - rhs));
      }
    }
    if (s == 0 || r.normalized() > out.worst.normalized()) out = {r, s};
  }
  return out;
}

SampleResidual hamiltonian_generation_residual(const MinimalCoupling& c, std::span<const PhasePoint> samples) {
  const PhaseFunction h = c.hamiltonian();
  std::vector<Expr> lhs;
  std::vector<Expr> vel;
  for (int mu = 0; mu < 4; ++mu) {
    lhs.push_back(c.bracket(c.mass() * c.velocity(mu), h).expr());
    vel.push_back(c.velocity(mu).expr());
  }
  const CompiledExpr lhs_tape(lhs, c.params());
  const CompiledExpr vel_tape(vel, c.params());
  SampleResidual out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const PhasePoint& p = samples[s];
    check_isospin(c, p);
    const auto l = run(lhs_tape, p);
    const auto v = run(vel_tape, p);
    CovariantVector v_lower;
    for (int mu = 0; mu < 4; ++mu) v_lower[mu] = v[static_cast<std::size_t>(mu)];
    const CovariantVector rhs = contract_second(c.direct_field_strength(p), raise(v_lower));
    Residual r;
    for (int mu = 0; mu < 4; ++mu) {
      r.add_term_magnitude(l[static_cast<std::size_t>(mu)]);
      r.add_term_magnitude(rhs[mu]);
      r.value = std::max(r.value, std::fabs(l[static_cast<std::size_t>(mu)] - rhs[mu]));
    }
    if (s == 0 || r.normalized() > out.worst.normalized()) out = {r, s};
  }
  return out;
}

std::vector<PhasePoint> sample_phase_points(const Box& box, std::span<const SingularRegion> exclusions,
                                            std::pair<double, double> momentum_range, int isospin_dimension,
                                            std::pair<double, double> isospin_range, std::size_t count,
                                            Rng& rng) {
  const std::vector<Point4> xs = sample_points(box, exclusions, count, rng);
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (const Point4& x : xs) {
    PhasePoint p;
    p.x = x;
    for (double& v : p.pi) v = rng.uniform(momentum_range.first, momentum_range.second);
    p.isospin.resize(static_cast<std::size_t>(isospin_dimension));
    for (double& v : p.isospin) v = rng.uniform(isospin_range.first, isospin_range.second);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace gaugekit
