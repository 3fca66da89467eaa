// Command-line front end.
//
//   sasremap run <config> [--seed N] [--threads N] [--out DIR]
//   sasremap mesh <config> [--seed N] [--out DIR]
//   sasremap report <dir>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sasremap/sasremap.hpp"

namespace {

sasremap::RunConfig load(const std::string& path, std::optional<std::uint64_t> seed,
                         const std::optional<std::string>& out) {
  auto config = sasremap::parse_config(sasremap::detail::slurp(path));
  if (seed) config.mesh.seed = *seed;
  if (out) config.output.dir = *out;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative remap with a self-adjusting steepness limiter"};
  app.require_subcommand(1);

  std::string config_path;
  std::string report_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  int threads = 1;

  auto* run = app.add_subcommand("run", "generate meshes, remap the field and write the run directory");
  run->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "override mesh.seed");
  run->add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  run->add_option("--out", out, "override output.dir");

  auto* mesh = app.add_subcommand("mesh", "write the mesh series only");
  mesh->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  mesh->add_option("--seed", seed, "override mesh.seed");
  mesh->add_option("--out", out, "override output.dir");

  auto* report = app.add_subcommand("report", "recompute the report of a run directory from its CSV files");
  report->add_option("dir", report_dir, "run directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto config = load(config_path, seed, out);
      const auto ex = sasremap::run_to_directory(config, threads);
      sasremap::write_report(std::cout, ex.report);
      std::cerr << "wrote " << config.output.dir << "\n";
    } else if (*mesh) {
      const auto config = load(config_path, seed, out);
      const auto n = sasremap::write_mesh_series(config);
      std::cerr << "wrote " << n << " meshes to " << config.output.dir << "\n";
    } else if (*report) {
      sasremap::write_report(std::cout, sasremap::recompute_report(report_dir));
    }
  } catch (const sasremap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
