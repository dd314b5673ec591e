#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "tdlab/acceptance.hpp"
#include "tdlab/config.hpp"
#include "tdlab/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitCheckFailed = 3;

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw tdlab::ConfigError("--seeds: empty seed list");
  return seeds;
}

int run_command(const std::string& config_path, const std::string& seeds_csv,
                const std::string& out_dir) {
  tdlab::RunConfig config = tdlab::load_run_config(config_path);
  if (!seeds_csv.empty()) config.seeds = parse_seed_list(seeds_csv);
  if (!out_dir.empty()) config.output_dir = out_dir;
  tdlab::ExperimentOutput output = tdlab::run_experiment(config);
  for (const std::string& path : output.csv_paths) std::cout << "wrote " << path << "\n";
  for (const std::string& path : output.svg_paths) std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int check_command() {
  auto results = tdlab::run_acceptance_suite(std::cout);
  return tdlab::all_passed(results) ? kExitOk : kExitCheckFailed;
}

int sweep_command(const std::string& config_path, const std::string& grid_path,
                  const std::string& out_dir) {
  tdlab::RunConfig base = tdlab::load_run_config(config_path);
  if (!out_dir.empty()) base.output_dir = out_dir;
  auto combos = tdlab::sweep_grid(tdlab::IniFile::parse_file(grid_path));
  for (const auto& combo : combos) {
    tdlab::RunConfig config = base;
    std::string label;
    for (const auto& [key, value] : combo) {
      tdlab::apply_override(config, key, value);
      if (!label.empty()) label += "_";
      label += key.substr(key.find('.') + 1) + "=" + value;
    }
    config.output_dir = base.output_dir + "/" + label;
    std::cout << "sweep combo " << label << "\n";
    tdlab::ExperimentOutput output = tdlab::run_experiment(config);
    for (const std::string& path : output.csv_paths) std::cout << "  wrote " << path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TD-error laboratory: explicit vs implicit temporal-difference errors"};
  app.require_subcommand(1);

  std::string config_path, seeds_csv, out_dir, grid_path;

  CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", config_path, "INI config file")->required();
  run->add_option("--seeds", seeds_csv, "comma-separated run seeds (overrides config)");
  run->add_option("--out", out_dir, "output directory (overrides config and TDLAB_OUT)");

  CLI::App* check = app.add_subcommand("check", "run the acceptance suite");

  CLI::App* sweep = app.add_subcommand("sweep", "run a config across a parameter grid");
  sweep->add_option("--config", config_path, "INI config file")->required();
  sweep->add_option("--grid", grid_path, "INI grid file with a [grid] section")->required();
  sweep->add_option("--out", out_dir, "output directory (overrides config and TDLAB_OUT)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, seeds_csv, out_dir);
    if (check->parsed()) return check_command();
    if (sweep->parsed()) return sweep_command(config_path, grid_path, out_dir);
  } catch (const tdlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
