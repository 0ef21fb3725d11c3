// Batch front-end: solve | verify | sweep | oracle, driven by a config file.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sturmet/config.hpp"
#include "sturmet/pipeline.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 2 config error, 3 solver failure, 4 verification failure,\n"
    "5 degenerate/defective spectrum, 6 invalid problem (grid/weight), 7 metric\n"
    "construction failure.";

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> tol_overrides;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "problem configuration file")->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
  cmd->add_option("--tol", args.tol_overrides,
                  "tolerance override name=value (repeatable; see [tolerances] keys)");
  cmd->add_option("--workers", args.workers, "concurrent sweep workers");
}

int run_command(sturmet::PipelineKind kind, const CommonArgs& args) {
  using namespace sturmet;
  RunConfig config;
  try {
    config = load_config(args.config_path);
    config.pipeline = kind;
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (args.workers > 0) config.workers = args.workers;
    for (const auto& spec : args.tol_overrides) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got " + spec);
      double value = 0.0;
      try {
        value = std::stod(spec.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("--tol: bad value in " + spec);
      }
      config.tolerance_overrides[spec.substr(0, eq)] = value;
    }
    config.validate();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const RunResult result = run(config);
  if (!result.summary.empty()) std::cout << result.summary << '\n';
  for (const auto& f : result.files_written) std::cout << "wrote " << f << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sturmet: non-Hermitian Sturmian pencils, metric operators and identity checks"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  CommonArgs args;
  auto* solve = app.add_subcommand("solve", "assemble and solve the pencil, write the spectrum");
  auto* verify =
      app.add_subcommand("verify", "solve, build the metric and run the full identity suite");
  auto* sweep = app.add_subcommand("sweep", "eigencharge trajectories over kappa_sq or ell");
  auto* oracle =
      app.add_subcommand("oracle", "compare against the analytic charges under grid refinement");
  for (auto* cmd : {solve, verify, sweep, oracle}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return run_command(sturmet::PipelineKind::Solve, args);
  if (verify->parsed()) return run_command(sturmet::PipelineKind::Verify, args);
  if (sweep->parsed()) return run_command(sturmet::PipelineKind::Sweep, args);
  return run_command(sturmet::PipelineKind::Oracle, args);
}
