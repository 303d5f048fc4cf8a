#include "magcut/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "magcut/cost_matrix.hpp"
#include "magcut/rng.hpp"
#include "magcut/signal_io.hpp"

namespace magcut {

namespace {

constexpr std::uint64_t kSignalSalt = 1;
constexpr std::uint64_t kMaskSalt = 2;
constexpr std::uint64_t kInitSalt = 3;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

std::string to_string(SignalKind k) {
  switch (k) {
    case SignalKind::complex_gaussian: return "complex_gaussian";
    case SignalKind::real_gaussian: return "real_gaussian";
    case SignalKind::symmetric_complex: return "symmetric_complex";
    case SignalKind::image: return "image";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::magnitudecut: return "magnitudecut";
    case Method::magnitudecut_refine: return "magnitudecut+refine";
    case Method::iterative_baseline: return "iterative-baseline";
  }
  return "?";
}

SignalKind signal_kind_from_string(const std::string& s) {
  if (s == "complex_gaussian" || s == "complex-gaussian") return SignalKind::complex_gaussian;
  if (s == "real_gaussian" || s == "real-gaussian") return SignalKind::real_gaussian;
  if (s == "symmetric_complex" || s == "symmetric") return SignalKind::symmetric_complex;
  if (s == "image" || s.rfind("image:", 0) == 0) return SignalKind::image;
  throw ConfigError("unknown signal kind '" + s + "'");
}

Method method_from_string(const std::string& s) {
  if (s == "magnitudecut") return Method::magnitudecut;
  if (s == "magnitudecut+refine" || s == "magnitudecut_refine")
    return Method::magnitudecut_refine;
  if (s == "iterative-baseline" || s == "iterative_baseline")
    return Method::iterative_baseline;
  throw ConfigError("unknown method '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (p < 2) throw ConfigError("experiment.p must be >= 2");
  if (trials < 1) throw ConfigError("experiment.trials must be >= 1");
  if (sampling_numbers.empty())
    throw ConfigError("experiment.sampling_numbers must not be empty");
  for (int s : sampling_numbers)
    if (s < p || s % p != 0)
      throw ConfigError("sampling number " + std::to_string(s) +
                        " is not a positive multiple of p");
  if (methods.empty()) throw ConfigError("experiment.methods must not be empty");
  if (signal_kind == SignalKind::image && image_path.empty())
    throw ConfigError("signal kind 'image' needs experiment.image");
  if (h != 0 || w != 0) {
    if (h < 1 || w < 1 || h * w != p)
      throw ConfigError("experiment.h * experiment.w must equal experiment.p");
  }
}

Signal make_signal(SignalKind kind, const SignalShape& shape, std::uint64_t seed,
                   const std::string& image_path) {
  if (kind == SignalKind::image) {
    Signal img = load_image_signal(image_path);
    if (shape.p != 0 && img.shape != shape)
      throw DimensionError("image shape does not match the requested shape");
    return img;
  }
  const int p = shape.p;
  Rng rng(seed);
  CVec values(p);
  switch (kind) {
    case SignalKind::complex_gaussian:
      for (int i = 0; i < p; ++i) values[i] = rng.complex_gaussian();
      break;
    case SignalKind::real_gaussian:
      for (int i = 0; i < p; ++i) values[i] = Complex(rng.gaussian(), 0.0);
      break;
    case SignalKind::symmetric_complex:
      // Palindromic: values[k] = values[p-1-k]. In column-major 2-D layout
      // this is point symmetry about the image center.
      for (int i = 0; i < (p + 1) / 2; ++i) {
        const Complex v = rng.complex_gaussian();
        values[i] = v;
        values[p - 1 - i] = v;
      }
      break;
    case SignalKind::image:
      break;  // handled above
  }
  return Signal(std::move(values), shape);
}

Signal make_phantom(int h, int w) {
  const SignalShape shape = SignalShape::two_d(h, w);
  CVec values(shape.p);
  // Off-center Gaussian blob on a faint ramp; peak 1, floor > 0.
  const double ci = 0.35 * (h - 1);
  const double cj = 0.6 * (w - 1);
  const double sigma = 0.25 * std::max(h, w);
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < h; ++i) {
      const double d2 = (i - ci) * (i - ci) + (j - cj) * (j - cj);
      const double blob = std::exp(-d2 / (2.0 * sigma * sigma));
      const double ramp = 0.1 * (i + j) / static_cast<double>(h + w - 2);
      values[static_cast<Eigen::Index>(j) * h + i] = Complex(
          std::min(1.0, 0.05 + 0.85 * blob + ramp), 0.0);
    }
  return Signal(std::move(values), shape);
}

TrialResult run_trial(const ExperimentConfig& cfg, Method method, int s_n,
                      std::uint64_t seed) {
  TrialResult tr;
  tr.method = to_string(method);
  tr.s_n = s_n;
  tr.seed = seed;
  tr.tightness = quiet_nan();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (s_n % cfg.p != 0 || s_n < cfg.p)
      throw ConfigError("sampling number must be a positive multiple of p");
    const SignalShape shape = (cfg.h > 0 && cfg.w > 0)
                                  ? SignalShape::two_d(cfg.h, cfg.w)
                                  : SignalShape::one_d(cfg.p);
    const Signal x = make_signal(cfg.signal_kind, shape,
                                 derive_seed(seed, kSignalSalt), cfg.image_path);
    const int m = s_n / cfg.p;
    MeasurementOperator op(make_masks(cfg.p, m, derive_seed(seed, kMaskSalt),
                                      cfg.mask_kind),
                           x.shape);
    const PhaseVector u = phase_of(op.forward(x));

    Signal xhat;
    if (method == Method::iterative_baseline) {
      RefineConfig rc = cfg.refine;
      rc.init = RefineConfig::Init::random;
      rc.seed = derive_seed(seed, kInitSalt);
      const RefineResult rr = run_baseline_iterative(op, u, rc);
      xhat = rr.x;
      tr.iterations_used = rr.iterations;
    } else {
      const CostMatrix rem = build_cost_matrix(op, u);
      const SolveResult sr = solve(rem, cfg.solver);
      const ExtractResult ex = extract_rank_one(sr.B);
      tr.tightness = ex.tightness;
      xhat = reconstruct(op, u, ex.b_hat);
      tr.iterations_used = sr.trace.total_sweeps();
      if (method == Method::magnitudecut_refine) {
        const RefineResult rr = refine_iterate(op, u, xhat, cfg.refine);
        xhat = rr.x;
        tr.iterations_used += rr.iterations;
      }
    }
    const ErrorPair err = relative_error(x, xhat);
    tr.scale_resolved_error = err.scale_resolved;
    tr.raw_error = err.raw;
  } catch (const Error& e) {
    tr.status = std::string("failed: ") + e.what();
    tr.scale_resolved_error = quiet_nan();
    tr.raw_error = quiet_nan();
  }
  tr.wall_seconds =
      cfg.no_timestamps
          ? 0.0
          : std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return tr;
}

SweepOutput run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepOutput out;
  for (Method method : cfg.methods) {
    for (int s_n : cfg.sampling_numbers) {
      SummaryCell cell;
      cell.method = to_string(method);
      cell.s_n = s_n;
      std::vector<double> errors;
      double sum_err = 0.0, sum_sq = 0.0, sum_sec = 0.0;
      for (int t = 0; t < cfg.trials; ++t) {
        TrialResult tr = run_trial(cfg, method, s_n, cfg.seed0 + static_cast<std::uint64_t>(t));
        if (tr.status == "ok") {
          errors.push_back(tr.scale_resolved_error);
          sum_err += tr.scale_resolved_error;
          sum_sq += tr.scale_resolved_error * tr.scale_resolved_error;
          sum_sec += tr.wall_seconds;
        }
        out.results.push_back(std::move(tr));
      }
      cell.count = static_cast<int>(errors.size());
      if (cell.count > 0) {
        const double n = cell.count;
        cell.mean_error = sum_err / n;
        cell.var_error = std::max(0.0, sum_sq / n - cell.mean_error * cell.mean_error);
        cell.mean_seconds = sum_sec / n;
        std::sort(errors.begin(), errors.end());
        cell.median_error = cell.count % 2 == 1
                                ? errors[cell.count / 2]
                                : 0.5 * (errors[cell.count / 2 - 1] + errors[cell.count / 2]);
      } else {
        cell.mean_error = quiet_nan();
        cell.var_error = quiet_nan();
        cell.mean_seconds = quiet_nan();
        cell.median_error = quiet_nan();
      }
      out.stats.cells.push_back(std::move(cell));
    }
  }
  return out;
}

std::string results_to_csv(const std::vector<TrialResult>& results) {
  std::string out =
      "method,s_n,seed,scale_resolved_error,raw_error,wall_seconds,tightness,"
      "iterations_used,status\n";
  for (const TrialResult& r : results) {
    out += r.method + "," + std::to_string(r.s_n) + "," + std::to_string(r.seed) + "," +
           fmt_double(r.scale_resolved_error) + "," + fmt_double(r.raw_error) + "," +
           fmt_double(r.wall_seconds) + "," + fmt_double(r.tightness) + "," +
           std::to_string(r.iterations_used) + "," + r.status + "\n";
  }
  return out;
}

std::string summary_to_csv(const SummaryStats& stats) {
  std::string out = "method,s_n,mean_error,var_error,mean_seconds\n";
  for (const SummaryCell& c : stats.cells) {
    out += c.method + "," + std::to_string(c.s_n) + "," + fmt_double(c.mean_error) +
           "," + fmt_double(c.var_error) + "," + fmt_double(c.mean_seconds) + "\n";
  }
  return out;
}

SummaryStats summary_from_csv_text(const std::string& text) {
  SummaryStats stats;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (header) {
      if (line.rfind("method,s_n,mean_error", 0) != 0)
        throw IoError("summary CSV: unexpected header");
      header = false;
      continue;
    }
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5)
      throw IoError("summary CSV line " + std::to_string(lineno) + ": expected 5 columns");
    SummaryCell c;
    c.method = cells[0];
    try {
      c.s_n = std::stoi(cells[1]);
      c.mean_error = std::stod(cells[2]);
      c.var_error = std::stod(cells[3]);
      c.mean_seconds = std::stod(cells[4]);
    } catch (const std::exception&) {
      throw IoError("summary CSV line " + std::to_string(lineno) + ": bad number");
    }
    c.median_error = quiet_nan();
    stats.cells.push_back(std::move(c));
  }
  if (header) throw IoError("summary CSV: missing header");
  return stats;
}

}  // namespace magcut
