#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaugekit/abelian.hpp"
#include "gaugekit/expr.hpp"
#include "gaugekit/lie.hpp"
#include "gaugekit/sampling.hpp"

namespace gaugekit::cli {

//! Invalid configuration. The message is prefixed with the offending key
//  path, e.g. "field.potential[1]: undefined parameter: B".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldKind { abelian, yangmills };

struct VerificationSpec {
  std::size_t points = 200;
  std::size_t phase_points = 100;
  Box box;
  std::pair<double, double> momentum_range{-1.0, 1.0};
  std::pair<double, double> isospin_range{-1.0, 1.0};
  std::uint64_t seed = 1;
};

struct SimulationSpec {
  double mass = 1.0;
  Point4 x0{};
  Point4 u0{1.0, 0.0, 0.0, 0.0};
  std::vector<double> isospin;
  double dtau = 1e-3;
  std::size_t steps = 1000;
  bool renormalize = false;
};

struct OutputSpec {
  std::string path;  // empty: standard output
  std::string format = "csv";
};

struct RunConfig {
  FieldKind kind = FieldKind::abelian;
  ParamSet params;
  double coupling = 1.0;
  std::array<Expr, 4> abelian_potential;
  // Yang-Mills: algebra and components[mu * n + a]. The algebra is not
  // validated here so that `verify` can report a broken one.
  std::optional<LieAlgebra> algebra;
  std::vector<Expr> ym_potential;
  std::optional<std::vector<Expr>> gauge_term;
  std::vector<SingularRegion> exclusions;
  VerificationSpec verification;
  std::optional<SimulationSpec> simulation;
  OutputSpec output;
  // FNV-1a 64-bit digest of the configuration text, 16 hex digits.
  std::string digest;
};

// Throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace gaugekit::cli
