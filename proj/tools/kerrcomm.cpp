#include <iostream>

#include "CLI11.hpp"
#include "kerrcomm/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = kerrcomm::cli;

  CLI::App app{"Steady-state entanglement in Kerr-modified cavity optomagnomechanics"};
  app.set_version_flag("--version", cli::version());
  app.require_subcommand(1);

  std::string config;
  cli::Options options;
  std::string out_dir;

  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--config", config, "YAML run description")->required();
    if (with_out) sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", options.threads, "worker threads (0 = OpenMP default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--oracle", options.oracle, "cross-check every result with the oracle solvers");
  };

  auto* point = app.add_subcommand("point", "evaluate one operating point");
  add_common(point, true);
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write sweep.csv");
  add_common(sweep, true);
  auto* validate = app.add_subcommand("validate", "check a config file without computing");
  add_common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }
  options.out = out_dir;

  if (point->parsed()) return cli::point(config, options, std::cout, std::cerr);
  if (sweep->parsed()) return cli::sweep(config, options, std::cout, std::cerr);
  return cli::validate(config, std::cout, std::cerr);
}
