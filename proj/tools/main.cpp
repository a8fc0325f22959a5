#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cellsim/scenario.hpp"

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("CELLSIM_OUT_DIR")) return env;
  return ".";
}

std::string resolve_out(const std::string& path, const std::string& fallback_name) {
  if (path.empty()) return default_out_dir() + "/" + fallback_name;
  if (std::filesystem::path(path).is_relative()) return default_out_dir() + "/" + path;
  return path;
}

cellsim::ScenarioConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return cellsim::ScenarioConfig{};
  return cellsim::load_config(config_path);
}

void apply_overrides(cellsim::ScenarioConfig& cfg, const std::optional<std::string>& strategy,
                     const std::optional<std::uint64_t>& seed,
                     const std::optional<std::size_t>& samples) {
  if (strategy) cfg.strategy = cellsim::parse_strategy(*strategy);
  if (seed) cfg.seed = *seed;
  if (samples) cfg.monte_carlo_samples = *samples;
  cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cellsim - dynamic channel borrowing simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string out_path;
  int seed_count = 4;

  auto* run = app.add_subcommand("run", "run the distance-sweep experiment, emit CSV + summary");
  run->add_option("--config", config_path, "config file (JSON); defaults used when omitted");
  run->add_option("--strategy", strategy, "none|blocking|bifurcation|auto");
  run->add_option("--seed", seed, "RNG seed override");
  run->add_option("--samples", samples, "Monte-Carlo sample count override");
  run->add_option("--out", out_path, "output CSV path");

  auto* sweep = app.add_subcommand("sweep", "run a multi-seed batch, one CSV per seed");
  sweep->add_option("--config", config_path, "config file (JSON)");
  sweep->add_option("--strategy", strategy, "none|blocking|bifurcation|auto");
  sweep->add_option("--seed", seed, "base seed (consecutive seeds follow)");
  sweep->add_option("--samples", samples, "Monte-Carlo sample count override");
  sweep->add_option("--seeds", seed_count, "number of seeds in the batch")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "output directory");

  auto* validate = app.add_subcommand("validate", "check a config file and print its hash");
  validate->add_option("--config", config_path, "config file (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      cellsim::ScenarioConfig cfg = load_or_default(config_path);
      char hash_hex[32];
      std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                    static_cast<unsigned long long>(cfg.hash()));
      std::cout << "config ok  hash=" << hash_hex << "\n";
      return 0;
    }

    if (run->parsed()) {
      cellsim::ScenarioConfig cfg = load_or_default(config_path);
      apply_overrides(cfg, strategy, seed, samples);
      const cellsim::MetricsReport report = cellsim::run_scenario(cfg);
      const std::string path = resolve_out(out_path, "report.csv");
      if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
        std::filesystem::create_directories(parent);
      }
      cellsim::emit_csv(report, path);
      std::cout << cellsim::emit_summary(report);
      std::cout << "csv written to " << path << "\n";
      return 0;
    }

    if (sweep->parsed()) {
      cellsim::ScenarioConfig cfg = load_or_default(config_path);
      apply_overrides(cfg, strategy, seed, samples);
      const std::string dir = out_path.empty() ? default_out_dir() : resolve_out(out_path, "");
      std::filesystem::create_directories(dir);
      for (int i = 0; i < seed_count; ++i) {
        cellsim::ScenarioConfig instance = cfg;
        instance.seed = cfg.seed + static_cast<std::uint64_t>(i);
        const cellsim::MetricsReport report = cellsim::run_scenario(instance);
        const std::string path = dir + "/report_seed" + std::to_string(instance.seed) + ".csv";
        cellsim::emit_csv(report, path);
        std::cout << "seed " << instance.seed << " -> " << path << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
