#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "experiments.hpp"
#include "scd/types.hpp"

int main(int argc, char** argv) {
  using namespace scd::cli;
  CLI::App app{"Special canonical distillability experiments"};
  app.require_subcommand(1);

  std::string config;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out = ".";
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "flat JSON run config");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--workers", workers, "worker threads, 0 = all")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "output directory");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto* sub = app.get_subcommands().front();

  try {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = load_config(sub->get_name(),
                                sub->count("--config") ? std::optional<std::filesystem::path>(config) : std::nullopt,
                                sub->count("--seed") ? std::optional<std::uint64_t>(seed) : std::nullopt,
                                sub->count("--workers") ? std::optional<int>(workers) : std::nullopt, out);
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
    const CommandResult result = run_command(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto manifest = write_manifest(cfg, result, wall);
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    std::cout << manifest.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const scd::UnknownVerdictError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const scd::NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
