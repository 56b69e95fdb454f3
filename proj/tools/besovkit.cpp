#include <iostream>

#include <CLI11.hpp>

#include "besov/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"besovkit: dyadic decompositions, Sigma-space diagnostics and flow experiments"};
  besov::cli::RunOptions opts;
  std::uint64_t seed = 0;
  app.add_option("--config", opts.config, "JSON config file")->required();
  app.add_option("--out", opts.out, "output directory")->default_val(".");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_flag("--quiet", opts.quiet, "suppress progress output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : besov::cli::kInvalidConfig;
  }
  if (*seed_opt) opts.seed = seed;
  return besov::cli::run(opts, std::cerr);
}
