#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magcut/measurement.hpp"
#include "magcut/metrics.hpp"
#include "magcut/refine.hpp"
#include "magcut/signal.hpp"
#include "magcut/solver.hpp"

namespace magcut {

enum class SignalKind { complex_gaussian, real_gaussian, symmetric_complex, image };
enum class Method { magnitudecut, magnitudecut_refine, iterative_baseline };

std::string to_string(SignalKind k);
std::string to_string(Method m);
SignalKind signal_kind_from_string(const std::string& s);
Method method_from_string(const std::string& s);

struct ExperimentConfig {
  int p = 16;
  std::vector<int> sampling_numbers;  // each a positive multiple of p
  int trials = 50;
  std::uint64_t seed0 = 1;
  SignalKind signal_kind = SignalKind::complex_gaussian;
  int h = 0, w = 0;          // optional 2-D shape for generated kinds
  std::string image_path;    // for SignalKind::image
  std::vector<Method> methods;
  SolverConfig solver;
  RefineConfig refine;
  MaskKind mask_kind = MaskKind::gaussian;
  bool no_timestamps = false;  // zero out wall-clock fields for byte-stable output

  void validate() const;
};

struct TrialResult {
  std::string method;
  int s_n = 0;
  std::uint64_t seed = 0;
  double scale_resolved_error = 0.0;
  double raw_error = 0.0;
  double wall_seconds = 0.0;
  double tightness = 0.0;
  int iterations_used = 0;  // solver sweeps plus refine iterations
  std::string status = "ok";
};

struct SummaryCell {
  std::string method;
  int s_n = 0;
  double mean_error = 0.0;
  double var_error = 0.0;  // population variance
  double mean_seconds = 0.0;
  double median_error = 0.0;  // in-memory only, not part of the summary CSV
  int count = 0;
};

struct SummaryStats {
  std::vector<SummaryCell> cells;
};

/// Deterministic test signals. symmetric_complex is palindromic
/// (values[k] = values[p-1-k]), which for 2-D shapes is point symmetry of
/// the image; image loads image_path (shape argument must agree).
Signal make_signal(SignalKind kind, const SignalShape& shape, std::uint64_t seed,
                   const std::string& image_path = "");

/// Deterministic smooth test image in [0, 1] (off-center blob), 2-D real.
Signal make_phantom(int h, int w);

/// One seeded reconstruction: signal, masks (m = s_n/p), measurement,
/// method, both error metrics and timing. Component failures are recorded
/// in the status field, never thrown.
TrialResult run_trial(const ExperimentConfig& cfg, Method method, int s_n,
                      std::uint64_t seed);

struct SweepOutput {
  std::vector<TrialResult> results;
  SummaryStats stats;
};

/// Cartesian product methods x sampling_numbers x trials with seeds
/// seed0 + t, aggregated per cell. Output is a pure function of the config.
SweepOutput run_sweep(const ExperimentConfig& cfg);

/// Result/summary CSV emission (exact column contract, %.17g values).
std::string results_to_csv(const std::vector<TrialResult>& results);
std::string summary_to_csv(const SummaryStats& stats);
SummaryStats summary_from_csv_text(const std::string& text);

}  // namespace magcut
