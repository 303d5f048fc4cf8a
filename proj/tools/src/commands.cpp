#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>

#include "magcut/cost_matrix.hpp"
#include "magcut/experiments.hpp"
#include "magcut/keyval.hpp"
#include "magcut/metrics.hpp"
#include "magcut/refine.hpp"
#include "magcut/rng.hpp"
#include "magcut/signal_io.hpp"
#include "magcut/solver.hpp"
#include "magcut/svg_plot.hpp"
#include "magcut/version.hpp"

namespace fs = std::filesystem;

namespace magcut::cli {

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

/// Collects the resolved configuration and produced files of one command.
class Manifest {
 public:
  Manifest(const GlobalOpts& g, const std::string& command) : g_(g) {
    kv_.set("tool", std::string("magcut ") + kVersion);
    kv_.set("command", command);
    if (!g.no_timestamps) kv_.set("started", iso_timestamp());
  }

  void set(const std::string& key, const std::string& value) { kv_.set(key, value); }
  void set_input(const std::string& path) {
    kv_.set("input." + std::to_string(inputs_++), path);
  }
  void add_output(const std::string& path) {
    kv_.set("output." + std::to_string(outputs_++), path);
  }

  void write(const std::string& path) {
    if (!g_.no_timestamps) kv_.set("finished", iso_timestamp());
    write_text_file(path, kv_.to_text());
  }

 private:
  const GlobalOpts& g_;
  KeyValues kv_;
  int inputs_ = 0;
  int outputs_ = 0;
};

KeyValues load_config(const GlobalOpts& g) {
  if (g.config_path.empty()) return {};
  return parse_keyval_file(g.config_path);
}

MaskKind mask_kind_from_string(const std::string& s) {
  if (s == "gaussian") return MaskKind::gaussian;
  if (s == "unimodular") return MaskKind::unimodular;
  throw ConfigError("unknown mask kind '" + s + "' (gaussian|unimodular)");
}

SolverConfig solver_config_from(const KeyValues& kv) {
  SolverConfig cfg;
  const std::string mu = kv.get_string("solver.mu", "auto");
  if (mu != "auto") cfg.mu = kv.get_double("solver.mu", 0.0);
  cfg.max_sweeps = kv.get_int("solver.max_sweeps", cfg.max_sweeps);
  cfg.inner_newton_iters = kv.get_int("solver.inner_newton_iters", cfg.inner_newton_iters);
  cfg.backtrack_shrink = kv.get_double("solver.backtrack_shrink", cfg.backtrack_shrink);
  cfg.min_step = kv.get_double("solver.min_step", cfg.min_step);
  cfg.direction_tol = kv.get_double("solver.direction_tol", cfg.direction_tol);
  cfg.cross_term_factor = kv.get_double("solver.cross_term_factor", cfg.cross_term_factor);
  cfg.randomized_sweep_order =
      kv.get_bool("solver.randomized_sweep_order", cfg.randomized_sweep_order);
  cfg.order_seed = kv.get_uint64("solver.order_seed", cfg.order_seed);
  return cfg;
}

RefineConfig refine_config_from(const KeyValues& kv) {
  RefineConfig cfg;
  cfg.max_iters = kv.get_int("refine.max_iters", cfg.max_iters);
  cfg.residual_tol = kv.get_double("refine.residual_tol", cfg.residual_tol);
  return cfg;
}

void manifest_solver_config(Manifest& m, const SolverConfig& cfg) {
  m.set("solver.mu", cfg.mu > 0 ? fmt_double(cfg.mu) : "auto");
  m.set("solver.max_sweeps", std::to_string(cfg.max_sweeps));
  m.set("solver.inner_newton_iters", std::to_string(cfg.inner_newton_iters));
  m.set("solver.backtrack_shrink", fmt_double(cfg.backtrack_shrink));
  m.set("solver.min_step", fmt_double(cfg.min_step));
  m.set("solver.direction_tol", fmt_double(cfg.direction_tol));
  m.set("solver.cross_term_factor", fmt_double(cfg.cross_term_factor));
  m.set("solver.randomized_sweep_order", cfg.randomized_sweep_order ? "true" : "false");
  m.set("solver.order_seed", std::to_string(cfg.order_seed));
}

void manifest_refine_config(Manifest& m, const RefineConfig& cfg) {
  m.set("refine.max_iters", std::to_string(cfg.max_iters));
  m.set("refine.residual_tol", fmt_double(cfg.residual_tol));
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / name).string();
}

}  // namespace

int cmd_gen(const GlobalOpts& g, const GenArgs& a) {
  Signal x;
  if (a.kind == "phantom") {
    if (a.h < 1 || a.w < 1) throw ConfigError("gen: phantom needs --h and --w");
    x = make_phantom(a.h, a.w);
  } else {
    const SignalKind kind = signal_kind_from_string(a.kind);
    if (kind == SignalKind::image)
      throw ConfigError("gen: cannot generate the 'image' kind");
    const SignalShape shape = (a.h > 0 && a.w > 0) ? SignalShape::two_d(a.h, a.w)
                                                   : SignalShape::one_d(a.p);
    x = make_signal(kind, shape, g.seed);
  }

  Manifest manifest(g, "gen");
  manifest.set("kind", a.kind);
  manifest.set("seed", std::to_string(g.seed));
  manifest.set("p", std::to_string(x.size()));
  write_signal_csv(x, a.output);
  manifest.add_output(a.output);
  manifest.write(a.output + ".manifest");
  std::cout << "wrote " << a.output << " (" << x.size() << " entries)\n";
  return 0;
}

int cmd_measure(const GlobalOpts& g, const MeasureArgs& a) {
  const Signal x = read_signal_csv(a.input);
  MeasurementOperator op(
      make_masks(x.size(), a.masks, g.seed, mask_kind_from_string(a.mask_kind)),
      x.shape);
  const PhaseVector u = phase_of(op.forward(x));
  if (u.all_degenerate())
    std::cout << "warning: measurement is identically zero; reconstruction impossible\n";

  Manifest manifest(g, "measure");
  manifest.set_input(a.input);
  manifest.set("masks", std::to_string(a.masks));
  manifest.set("mask_kind", a.mask_kind);
  manifest.set("seed", std::to_string(g.seed));
  write_phase_csv(u, a.output);
  manifest.add_output(a.output);
  manifest.write(a.output + ".manifest");

  int degenerate = 0;
  for (int i = 0; i < u.n(); ++i) degenerate += u.degenerate[i];
  std::cout << "wrote " << a.output << " (n=" << u.n() << ", degenerate=" << degenerate
            << ")\n";
  return 0;
}

int cmd_solve(const GlobalOpts& g, const SolveArgs& a) {
  const Signal x = read_signal_csv(a.input);
  const KeyValues kv = load_config(g);
  const SolverConfig solver_cfg = solver_config_from(kv);
  const RefineConfig refine_cfg = refine_config_from(kv);

  MeasurementOperator op(
      make_masks(x.size(), a.masks, g.seed, mask_kind_from_string(a.mask_kind)),
      x.shape);
  if (a.masks == 1)
    std::cout << "warning: square operator: cost matrix is zero; reconstruction "
                 "ambiguous\n";

  const PhaseVector u = phase_of(op.forward(x));
  CostMatrixOptions cm_opts;
  cm_opts.max_n = kv.get_int("costmatrix.max_n", cm_opts.max_n);
  const CostMatrix rem = build_cost_matrix(op, u, cm_opts);
  const SolveResult sr = solve(rem, solver_cfg);
  const ExtractResult ex = extract_rank_one(sr.B);
  Signal xhat = reconstruct(op, u, ex.b_hat);

  int refine_iterations = 0;
  bool refine_converged = false;
  std::vector<double> residuals;
  if (a.refine) {
    const RefineResult rr = refine_iterate(op, u, xhat, refine_cfg);
    xhat = rr.x;
    refine_iterations = rr.iterations;
    refine_converged = rr.converged;
    residuals = rr.residuals;
  }

  Manifest manifest(g, "solve");
  manifest.set_input(a.input);
  manifest.set("masks", std::to_string(a.masks));
  manifest.set("mask_kind", a.mask_kind);
  manifest.set("seed", std::to_string(g.seed));
  manifest.set("refine", a.refine ? "true" : "false");
  manifest_solver_config(manifest, solver_cfg);
  manifest_refine_config(manifest, refine_cfg);

  const std::string xhat_path = out_path(g, "xhat.csv");
  write_signal_csv(xhat, xhat_path);
  manifest.add_output(xhat_path);

  const std::string trace_path = out_path(g, "solver_trace.csv");
  write_text_file(trace_path, sr.trace.to_csv(!g.no_timestamps));
  manifest.add_output(trace_path);

  if (a.refine) {
    std::string csv = "iteration,residual\n";
    for (size_t k = 0; k < residuals.size(); ++k)
      csv += std::to_string(k) + "," + fmt_double(residuals[k]) + "\n";
    const std::string res_path = out_path(g, "refine_residuals.csv");
    write_text_file(res_path, csv);
    manifest.add_output(res_path);
  }
  manifest.write(out_path(g, "manifest.txt"));

  const ErrorPair err = relative_error(x, xhat);
  std::printf(
      "report: raw_error=%.17g scale_resolved_error=%.17g tightness=%.6g sweeps=%d "
      "refine_iterations=%d refine_converged=%d\n",
      err.raw, err.scale_resolved, ex.tightness, sr.trace.total_sweeps(),
      refine_iterations, refine_converged ? 1 : 0);
  return 0;
}

int cmd_bench(const GlobalOpts& g) {
  if (g.config_path.empty()) throw ConfigError("bench: --config is required");
  const KeyValues kv = load_config(g);
  if (kv.empty()) throw ConfigError("bench: config file is empty");

  ExperimentConfig cfg;
  cfg.p = kv.get_int("experiment.p", 0);
  for (const std::string& s : kv.get_list("experiment.sampling_numbers"))
    cfg.sampling_numbers.push_back(std::stoi(s));
  cfg.trials = kv.get_int("experiment.trials", cfg.trials);
  cfg.seed0 = kv.get_uint64("experiment.seed0", cfg.seed0);
  const std::string kind = kv.get_string("experiment.signal_kind", "complex_gaussian");
  cfg.signal_kind = signal_kind_from_string(kind);
  cfg.image_path = kv.get_string("experiment.image", "");
  if (kind.rfind("image:", 0) == 0) cfg.image_path = kind.substr(6);
  cfg.h = kv.get_int("experiment.h", 0);
  cfg.w = kv.get_int("experiment.w", 0);
  for (const std::string& s : kv.get_list("experiment.methods"))
    cfg.methods.push_back(method_from_string(s));
  cfg.mask_kind = mask_kind_from_string(kv.get_string("masks.kind", "gaussian"));
  cfg.solver = solver_config_from(kv);
  cfg.refine = refine_config_from(kv);
  cfg.no_timestamps = g.no_timestamps;
  if (cfg.signal_kind == SignalKind::image && cfg.p == 0 && !cfg.image_path.empty()) {
    const Signal img = load_image_signal(cfg.image_path);
    cfg.p = img.size();
    cfg.h = img.shape.h;
    cfg.w = img.shape.w;
  }
  cfg.validate();

  // Per-cell progress counter on stderr; the data pass below is the same
  // deterministic product run_sweep would do in one go.
  const int cells = static_cast<int>(cfg.methods.size() * cfg.sampling_numbers.size());
  int done = 0;
  std::cerr << "bench: " << cells << " cells x " << cfg.trials << " trials\n";

  SweepOutput out;
  for (Method method : cfg.methods)
    for (int s_n : cfg.sampling_numbers) {
      ExperimentConfig cell_cfg = cfg;
      cell_cfg.methods = {method};
      cell_cfg.sampling_numbers = {s_n};
      SweepOutput cell = run_sweep(cell_cfg);
      out.results.insert(out.results.end(), cell.results.begin(), cell.results.end());
      out.stats.cells.insert(out.stats.cells.end(), cell.stats.cells.begin(),
                             cell.stats.cells.end());
      ++done;
      std::cerr << "bench: [" << done << "/" << cells << "] " << to_string(method)
                << " s_n=" << s_n << " done\n";
    }

  Manifest manifest(g, "bench");
  manifest.set_input(g.config_path);
  for (const auto& [k, v] : kv.items()) manifest.set("config." + k, v);

  const std::string results_path = out_path(g, "results.csv");
  write_text_file(results_path, results_to_csv(out.results));
  manifest.add_output(results_path);
  const std::string summary_path = out_path(g, "summary.csv");
  write_text_file(summary_path, summary_to_csv(out.stats));
  manifest.add_output(summary_path);
  manifest.write(out_path(g, "manifest.txt"));

  std::cout << "wrote " << results_path << " and " << summary_path << "\n";
  return 0;
}

int cmd_plot(const GlobalOpts& g, const PlotArgs& a) {
  const SummaryStats stats = summary_from_csv_text(read_text_file(a.summary));
  if (stats.cells.empty()) throw ConfigError("plot: summary has no rows");
  emit_plot(stats, a.output);

  Manifest manifest(g, "plot");
  manifest.set_input(a.summary);
  manifest.add_output(a.output);
  manifest.write(a.output + ".manifest");
  std::cout << "wrote " << a.output << "\n";
  return 0;
}

}  // namespace magcut::cli
