#include <CLI11.hpp>

#include <iostream>

#include "pmm/cli/config.hpp"
#include "pmm/cli/experiment.hpp"
#include "pmm/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAnomaly = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective method of multipliers: TV denoising and CS reconstruction experiments"};
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int max_iter = 0;
  bool quiet = false;
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--seed", seed, "random seed (overrides config)")->check(CLI::NonNegativeNumber);
  app.add_option("--max-iter", max_iter, "iteration limit (overrides config)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "suppress progress output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    pmm::cli::ExperimentConfig cfg = pmm::cli::load_config(config_path);
    if (!out_dir.empty()) cfg.out = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (max_iter > 0) cfg.max_iterations = max_iter;
    cfg.validate();

    const auto result = pmm::cli::run_experiment(cfg, quiet ? nullptr : &std::cerr);
    if (!quiet) std::cerr << "wrote " << (cfg.out / "summary.txt").string() << '\n';
    return result.exit_code == 0 ? kExitOk : kExitAnomaly;
  } catch (const pmm::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pmm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const pmm::NumericalAnomaly& e) {
    std::cerr << "solver anomaly: " << e.what() << '\n';
    return kExitAnomaly;
  }
}
