#include "CLI11.hpp"

#include "hybridflow/cli.hpp"

#include <functional>
#include <iostream>

int main(int argc, char** argv) {
  using hybridflow::cli::Options;

  CLI::App app{"hybridflow: optimal execution across a fast book and a slow floor"};
  app.require_subcommand(1);

  Options opt;
  std::function<int(const Options&, std::ostream&, std::ostream&)> runner;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment JSON file")->required();
    sub->add_option("--out", opt.out_path, "write the report to this path instead of stdout");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "check a config and print derived quantities");
  add_common(validate);
  validate->callback([&] { runner = hybridflow::cli::run_validate; });

  auto* optimize = app.add_subcommand("optimize", "solve for the optimal order");
  add_common(optimize);
  optimize->add_option("--mode", opt.mode, "fast, floor or hybrid")
      ->check(CLI::IsMember({"fast", "floor", "hybrid"}));
  optimize->callback([&] { runner = hybridflow::cli::run_optimize; });

  auto* sweep = app.add_subcommand("sweep", "re-solve along a parameter grid");
  add_common(sweep);
  sweep->callback([&] { runner = hybridflow::cli::run_sweep; });

  auto* curves = app.add_subcommand("curves", "tabulate the liquidity supply schedule");
  add_common(curves);
  curves->callback([&] { runner = hybridflow::cli::run_curves; });

  auto* simulate = app.add_subcommand("simulate", "verify the closed forms by simulation");
  add_common(simulate);
  simulate->add_option("--seed", opt.seed, "master seed (beats mc.seed and HYBRIDFLOW_SEED)");
  simulate->add_option("--threads", opt.threads, "worker count; 0 = default, 1 = serial")
      ->check(CLI::NonNegativeNumber);
  simulate->callback([&] { runner = hybridflow::cli::run_simulate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hybridflow::cli::kExitConfig;
  }

  return runner(opt, std::cout, std::cerr);
}
