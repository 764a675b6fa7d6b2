#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace reputax::cli;

  CLI::App app{"reputax: tax policy under government reputation"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::uint64_t seed = 0;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "flat key = value run configuration")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory (created if missing)");
    sub->add_option("--seed", seed, "simulation seed, overrides the config");
  };

  common(app.add_subcommand("solve-static", "static policy schedule and trust cutoff"));
  common(app.add_subcommand("solve-dynamic", "value iteration, policy and shape diagnostics"));
  auto* sweep = app.add_subcommand("sweep", "comparative-statics sweep");
  common(sweep);
  sweep->add_option("axis", opts.axis, "garble | enforce | persist | mixinfo")
      ->required()
      ->check(CLI::IsMember({"garble", "enforce", "persist", "mixinfo"}));
  common(app.add_subcommand("simulate", "Monte Carlo paths and history check"));
  common(app.add_subcommand("replicate-figures", "static schedule vs reference coordinates"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  opts.command = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--seed") > 0) opts.seed = seed;
  return run(opts, std::cout, std::cerr);
}
