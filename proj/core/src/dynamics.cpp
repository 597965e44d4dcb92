#include "gaugekit/dynamics.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "gaugekit/error.hpp"

namespace gaugekit {

void validate(const ParticleState& s) {
  if (!(s.mass > 0.0) || !std::isfinite(s.mass)) throw std::invalid_argument("mass must be positive and finite");
  for (int mu = 0; mu < 4; ++mu) {
    if (!std::isfinite(s.x[mu]) || !std::isfinite(s.u[mu])) throw std::invalid_argument("initial state is not finite");
  }
  if (!std::isfinite(s.tau)) throw std::invalid_argument("initial proper time is not finite");
  const double uu = minkowski_square(s.u);
  if (!(std::fabs(uu - 1.0) <= kNormalizationTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial velocity must satisfy u.u = 1 (got " << uu << ")";
    throw std::invalid_argument(msg.str());
  }
}

void validate(const WongState& s) {
  validate(s.particle);
  for (double v : s.isospin) {
    if (!std::isfinite(v)) throw std::invalid_argument("initial isospin is not finite");
  }
}

Monitors monitors(const ParticleState& s) {
  Monitors m;
  m.uu = minkowski_square(s.u);
  m.hamiltonian = 0.5 * s.mass * m.uu;
  return m;
}

Monitors monitors(const WongState& s) {
  Monitors m = monitors(s.particle);
  double c = 0.0;
  for (double v : s.isospin) c += v * v;
  m.casimir = c;
  return m;
}

double Trajectory::max_uu_drift() const {
  double d = 0.0;
  for (const auto& s : samples) d = std::max(d, std::fabs(s.monitors.uu - 1.0));
  return d;
}

double Trajectory::max_casimir_drift() const {
  if (samples.empty() || !samples.front().monitors.casimir) return 0.0;
  const double c0 = *samples.front().monitors.casimir;
  double d = 0.0;
  for (const auto& s : samples) d = std::max(d, std::fabs(*s.monitors.casimir - c0));
  return d;
}

namespace {

// State vector layout: x^0..x^3, u^0..u^3, I^1..I^n.
using State = std::vector<double>;
using Rhs = std::function<void(const State&, State&)>;

State pack(const ParticleState& p, const std::vector<double>& isospin) {
  State y;
  y.reserve(8 + isospin.size());
  for (int mu = 0; mu < 4; ++mu) y.push_back(p.x[mu]);
  for (int mu = 0; mu < 4; ++mu) y.push_back(p.u[mu]);
  y.insert(y.end(), isospin.begin(), isospin.end());
  return y;
}

TrajectorySample unpack(const State& y, double tau, double mass, bool has_isospin) {
  TrajectorySample s;
  s.tau = tau;
  for (int mu = 0; mu < 4; ++mu) {
    s.x[mu] = y[static_cast<std::size_t>(mu)];
    s.u[mu] = y[static_cast<std::size_t>(4 + mu)];
  }
  s.isospin.assign(y.begin() + 8, y.end());
  if (has_isospin) {
    s.monitors = monitors(WongState{ParticleState{tau, s.x, s.u, mass}, s.isospin});
  } else {
    s.monitors = monitors(ParticleState{tau, s.x, s.u, mass});
  }
  return s;
}

ContravariantVector position_of(const State& y) {
  return ContravariantVector{{y[0], y[1], y[2], y[3]}};
}

Trajectory run(const Rhs& rhs, State y, double tau0, double mass, bool has_isospin, const IntegratorOptions& opt) {
  if (!(opt.dtau > 0.0) || !std::isfinite(opt.dtau)) throw std::invalid_argument("dtau must be positive");
  Trajectory traj;
  traj.mass = mass;
  traj.dtau = opt.dtau;
  traj.samples.reserve(opt.steps + 1);

  if (in_any(opt.exclusions, position_of(y).c)) {
    traj.failure = TrajectoryFailure{0, "initial position lies in a singular region"};
    return traj;
  }
  traj.samples.push_back(unpack(y, tau0, mass, has_isospin));

  const std::size_t dim = y.size();
  State k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  const double h = opt.dtau;
  for (std::size_t step = 1; step <= opt.steps; ++step) {
    try {
      rhs(y, k1);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
      rhs(tmp, k4);
    } catch (const DomainError& e) {
      traj.failure = TrajectoryFailure{step, e.what()};
      return traj;
    }
    for (std::size_t i = 0; i < dim; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if (opt.renormalize) {
      const double uu = y[4] * y[4] - y[5] * y[5] - y[6] * y[6] - y[7] * y[7];
      if (uu > 0.0) {
        const double s = 1.0 / std::sqrt(uu);
        for (std::size_t i = 4; i < 8; ++i) y[i] *= s;
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (!std::isfinite(y[i])) {
        traj.failure = TrajectoryFailure{step, "non-finite state"};
        return traj;
      }
    }
    if (in_any(opt.exclusions, position_of(y).c)) {
      traj.failure = TrajectoryFailure{step, "trajectory entered a singular region"};
      return traj;
    }
    traj.samples.push_back(unpack(y, tau0 + static_cast<double>(step) * h, mass, has_isospin));
  }
  return traj;
}

}  // namespace

Trajectory integrate_lorentz(const AbelianField& field, const ParticleState& s0, const IntegratorOptions& opt) {
  validate(s0);
  const double inv_m = 1.0 / s0.mass;
  const Rhs rhs = [&](const State& y, State& dy) {
    const Point4 x{y[0], y[1], y[2], y[3]};
    const CovariantTensor f = field_strength(field, x);
    for (int mu = 0; mu < 4; ++mu) {
      double force = 0.0;
      for (int nu = 0; nu < 4; ++nu) force += f(mu, nu) * y[static_cast<std::size_t>(4 + nu)];
      dy[static_cast<std::size_t>(mu)] = y[static_cast<std::size_t>(4 + mu)];
      dy[static_cast<std::size_t>(4 + mu)] = Metric::diagonal[static_cast<std::size_t>(mu)] * inv_m * force;
    }
  };
  return run(rhs, pack(s0, {}), s0.tau, s0.mass, false, opt);
}

Trajectory integrate_wong(const YangMillsField& field, const CertifiedGaugeTerm* gauge_term, const WongState& s0,
                          const IntegratorOptions& opt) {
  validate(s0);
  const int n = field.dimension();
  if (static_cast<int>(s0.isospin.size()) != n) {
    throw std::invalid_argument("isospin must have one component per algebra generator");
  }
  if (gauge_term && gauge_term->term().dimension() != n) {
    throw std::invalid_argument("gauge term dimension does not match the algebra");
  }
  const double inv_m = 1.0 / s0.particle.mass;
  const auto& fs = field.algebra().nonzero_entries();
  const Rhs rhs = [&](const State& y, State& dy) {
    const Point4 x{y[0], y[1], y[2], y[3]};
    const std::span<const double> isospin(y.data() + 8, static_cast<std::size_t>(n));
    const CovariantTensor f = ym_field_strength(field, x).contracted(isospin);
    std::vector<double> g;
    if (gauge_term) g = gauge_term->term().values(x);
    for (int mu = 0; mu < 4; ++mu) {
      double force = 0.0;
      for (int nu = 0; nu < 4; ++nu) force += f(mu, nu) * y[static_cast<std::size_t>(4 + nu)];
      if (gauge_term) {
        for (int a = 0; a < n; ++a) force += g[static_cast<std::size_t>(mu * n + a)] * isospin[static_cast<std::size_t>(a)];
      }
      dy[static_cast<std::size_t>(mu)] = y[static_cast<std::size_t>(4 + mu)];
      dy[static_cast<std::size_t>(4 + mu)] = Metric::diagonal[static_cast<std::size_t>(mu)] * inv_m * force;
    }
    for (int a = 0; a < n; ++a) dy[static_cast<std::size_t>(8 + a)] = 0.0;
    if (!fs.empty()) {
      const GaugeJet j = field.jet(x, 0);
      // A_{nu b} u^nu
      std::vector<double> au(static_cast<std::size_t>(n), 0.0);
      for (int b = 0; b < n; ++b) {
        for (int nu = 0; nu < 4; ++nu) au[static_cast<std::size_t>(b)] += j.a(nu, b) * y[static_cast<std::size_t>(4 + nu)];
      }
      for (const auto& k : fs) {
        dy[static_cast<std::size_t>(8 + k.a)] +=
            k.value * au[static_cast<std::size_t>(k.b)] * isospin[static_cast<std::size_t>(k.c)];
      }
    }
  };
  return run(rhs, pack(s0.particle, s0.isospin), s0.particle.tau, s0.particle.mass, true, opt);
}

}  // namespace gaugekit
