#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gaugekit/version.hpp"
#include "gaugekit_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace gaugekit::cli;

  CLI::App app{"gaugekit: gauge potentials, field identities and test-particle dynamics"};
  app.set_version_flag("--version", gaugekit::kVersion);
  app.require_subcommand(1);

  CommandOptions opt;
  std::uint64_t seed = 0;
  std::string output;
  std::string format;
  std::string config;
  std::string grid;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "JSON configuration file")->required();
    sub->add_option("--seed", seed, "Override verification.seed");
    sub->add_option("--output", output, "Output path (default: config output.path, else stdout)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tolerance-scale", opt.tolerance_scale, "Multiply every default tolerance")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* verify = app.add_subcommand("verify", "Run the identity and bracket residual suite");
  add_common(verify);
  CLI::App* simulate = app.add_subcommand("simulate", "Integrate a test-particle trajectory");
  add_common(simulate);
  CLI::App* fields = app.add_subcommand("fields", "Tabulate field strengths over a grid");
  add_common(fields);
  fields->add_option("--grid", grid, "x0,x1,x2,x3 with each axis a value or lo:hi:count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opt.seed = seed;
  if (sub->count("--output")) opt.output = output;
  if (sub->count("--format")) opt.format = format;

  if (sub == verify) return cmd_verify(config, opt, std::cout, std::cerr);
  if (sub == simulate) return cmd_simulate(config, opt, std::cout, std::cerr);
  return cmd_fields(config, grid, opt, std::cout, std::cerr);
}
