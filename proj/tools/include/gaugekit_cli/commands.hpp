#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gaugekit/sampling.hpp"
#include "gaugekit_cli/config.hpp"

namespace gaugekit::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kConfigError = 2 };

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::string> format;
  double tolerance_scale = 1.0;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;  // normalized: value / (1 + scale)
  std::optional<Point4> worst_point;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::size_t domain_errors = 0;
  std::string note;

  bool passed() const { return domain_errors == 0 && residual <= tolerance; }
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

VerificationReport run_verification(const RunConfig& config, double tolerance_scale = 1.0);

// One grid axis: a fixed value, or `count` evenly spaced values in [lo, hi].
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 1;

  double at(std::size_t i) const;
};

// "a0,a1,a2,a3", each axis either "value" or "lo:hi:count". Throws ConfigError.
std::array<GridAxis, 4> parse_grid(const std::string& spec);

// The subcommands. Diagnostics go to `err`; reports and tables go to `out`
// unless an output path is set.
int cmd_verify(const std::string& config_path, const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& config_path, const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_fields(const std::string& config_path, const std::string& grid, const CommandOptions& opt, std::ostream& out,
               std::ostream& err);

}  // namespace gaugekit::cli
