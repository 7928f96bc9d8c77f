// dcd: command-line front end for the experiment runner.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dcd/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Degenerate convection-diffusion simulator and theorem harness"};
  app.require_subcommand(1);

  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  const char* kinds[] = {"solve", "properties", "gn-check", "periodic-decay", "sandwich", "example1", "extremal"};
  for (const char* k : kinds) {
    CLI::App* sub = app.add_subcommand(k, std::string("run a ") + k + " experiment");
    sub->add_option("--config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "seed for randomized initial data");
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dcd::kExitInvalid;
  }

  dcd::RunOptions opts;
  opts.kind = *dcd::parse_kind(app.get_subcommands().front()->get_name());
  opts.config = config;
  opts.out = out;
  opts.seed = seed;
  opts.quiet = quiet;
  return dcd::run_experiment(opts, std::cout, std::cerr);
}
