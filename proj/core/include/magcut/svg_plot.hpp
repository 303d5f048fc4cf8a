#pragma once

#include <string>

#include "magcut/experiments.hpp"

namespace magcut {

/// Self-contained two-panel SVG: log10(mean error) and log10(error
/// variance) versus sampling number, one polyline per method with point
/// markers. Byte-deterministic for identical stats.
std::string render_plot_svg(const SummaryStats& stats);

void emit_plot(const SummaryStats& stats, const std::string& path);

}  // namespace magcut
