#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gaugekit/abelian.hpp"
#include "gaugekit/nonabelian.hpp"
#include "gaugekit/sampling.hpp"
#include "gaugekit/tensor.hpp"

namespace gaugekit {

inline constexpr double kNormalizationTolerance = 1e-9;

//! Test particle in proper time: x^mu, u^mu = dx^mu/dtau, mass m.
struct ParticleState {
  double tau = 0.0;
  ContravariantVector x;
  ContravariantVector u{{1.0, 0.0, 0.0, 0.0}};
  double mass = 1.0;
};

//! Particle with isospin I^a.
struct WongState {
  ParticleState particle;
  std::vector<double> isospin;
};

// Throws std::invalid_argument unless m > 0, the state is finite and
// |u.u - 1| <= kNormalizationTolerance.
void validate(const ParticleState& s);
void validate(const WongState& s);

struct Monitors {
  double uu = 0.0;
  double hamiltonian = 0.0;  // 1/2 m u.u
  std::optional<double> casimir;
};

Monitors monitors(const ParticleState& s);
Monitors monitors(const WongState& s);

struct TrajectorySample {
  double tau = 0.0;
  ContravariantVector x;
  ContravariantVector u;
  std::vector<double> isospin;
  Monitors monitors;
};

struct TrajectoryFailure {
  std::size_t step = 0;  // the step that could not be completed
  std::string message;
};

//! Samples at tau_k = tau_0 + k dtau. On failure the samples before the
//  failing step are kept.
struct Trajectory {
  double mass = 1.0;
  double dtau = 0.0;
  std::vector<TrajectorySample> samples;
  std::optional<TrajectoryFailure> failure;

  bool ok() const { return !failure.has_value(); }
  // max |u.u - 1| over the samples
  double max_uu_drift() const;
  // max |C - C_0| over the samples, 0 without isospin
  double max_casimir_drift() const;
};

struct IntegratorOptions {
  double dtau = 1e-3;
  std::size_t steps = 0;
  // Rescale u to u.u = 1 after every step. Off by default so drift shows.
  bool renormalize = false;
  std::vector<SingularRegion> exclusions;
};

// m du_mu/dtau = F_{mu nu} u^nu with classical fixed-step RK4.
Trajectory integrate_lorentz(const AbelianField& field, const ParticleState& s0, const IntegratorOptions& opt);

// m du_mu/dtau = F_{mu nu a} I^a u^nu + G_{mu a} I^a,
// dI^a/dtau = f^{ab}_c A_{nu b} u^nu I^c.
Trajectory integrate_wong(const YangMillsField& field, const CertifiedGaugeTerm* gauge_term, const WongState& s0,
                          const IntegratorOptions& opt);

}  // namespace gaugekit
