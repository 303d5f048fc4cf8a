// magcut: phase-only signal reconstruction from masked Fourier measurements.
//
// Subcommands: gen, measure, solve, bench, plot. All randomness flows from
// explicit --seed flags and config keys; outputs are listed in per-command
// manifests.

#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"
#include "magcut/errors.hpp"
#include "magcut/version.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 2 usage or configuration error, 3 I/O error, "
    "4 numerical or capacity error.";

}  // namespace

int main(int argc, char** argv) {
  using namespace magcut;
  using namespace magcut::cli;

  CLI::App app{std::string("magcut ") + kVersion +
               " - signal reconstruction from the phase of masked Fourier "
               "measurements"};
  app.require_subcommand(1);
  app.footer(kExitCodeHelp);

  GlobalOpts global;
  app.add_option("--out-dir", global.out_dir, "Directory for produced files")
      ->capture_default_str();
  app.add_option("--config", global.config_path,
                 "key = value configuration file (solver.*, refine.*, experiment.*)");
  app.add_flag("--no-timestamps", global.no_timestamps,
               "Omit timestamps and wall-clock fields for byte-stable outputs");
  app.add_option("--seed", global.seed, "Seed for masks (solve/measure) or signals (gen)")
      ->capture_default_str();

  GenArgs gen;
  CLI::App* cmd_gen_app = app.add_subcommand("gen", "Generate a test signal file");
  cmd_gen_app->fallthrough();
  cmd_gen_app
      ->add_option("--kind", gen.kind,
                   "complex-gaussian | real-gaussian | symmetric | phantom")
      ->capture_default_str();
  cmd_gen_app->add_option("--p", gen.p, "Signal length (1-D kinds)");
  cmd_gen_app->add_option("--rows", gen.h, "Image rows (2-D kinds)");
  cmd_gen_app->add_option("--cols", gen.w, "Image cols (2-D kinds)");
  cmd_gen_app->add_option("-o,--output", gen.output, "Output signal CSV")->required();

  MeasureArgs measure;
  CLI::App* cmd_measure_app =
      app.add_subcommand("measure", "Write the observed phase vector of a signal");
  cmd_measure_app->fallthrough();
  cmd_measure_app->add_option("--in", measure.input, "Input signal CSV")->required();
  cmd_measure_app->add_option("--masks", measure.masks, "Number of random masks m")
      ->required();
  cmd_measure_app->add_option("--mask-kind", measure.mask_kind, "gaussian | unimodular")
      ->capture_default_str();
  cmd_measure_app->add_option("-o,--output", measure.output, "Output phase CSV")
      ->required();

  SolveArgs solve;
  CLI::App* cmd_solve_app =
      app.add_subcommand("solve", "Reconstruct a signal from its measured phases");
  cmd_solve_app->fallthrough();
  cmd_solve_app->add_option("--in", solve.input, "Input signal CSV (ground truth)")
      ->required();
  cmd_solve_app->add_option("--masks", solve.masks, "Number of random masks m")
      ->required();
  cmd_solve_app->add_option("--mask-kind", solve.mask_kind, "gaussian | unimodular")
      ->capture_default_str();
  cmd_solve_app->add_flag("--refine", solve.refine,
                          "Polish the solution with the phase-substitution iteration");

  CLI::App* cmd_bench_app =
      app.add_subcommand("bench", "Run a seeded reconstruction sweep from --config");
  cmd_bench_app->fallthrough();

  PlotArgs plot;
  CLI::App* cmd_plot_app =
      app.add_subcommand("plot", "Render an SVG from a bench summary CSV");
  cmd_plot_app->fallthrough();
  cmd_plot_app->add_option("--summary", plot.summary, "summary.csv from bench")
      ->required();
  cmd_plot_app->add_option("-o,--output", plot.output, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_gen_app->parsed()) return cmd_gen(global, gen);
    if (cmd_measure_app->parsed()) return cmd_measure(global, measure);
    if (cmd_solve_app->parsed()) return cmd_solve(global, solve);
    if (cmd_bench_app->parsed()) return cmd_bench(global);
    if (cmd_plot_app->parsed()) return cmd_plot(global, plot);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {  // capacity / numerical / degenerate
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
