#pragma once

#include <string>

#include "magcut/measurement.hpp"
#include "magcut/signal.hpp"

namespace magcut {

/// Signal CSV: header "re,im", one row per entry; 2-D signals carry a
/// leading "# shape h w" line and are vectorized column-major.
void write_signal_csv(const Signal& x, const std::string& path);
Signal read_signal_csv(const std::string& path);
std::string signal_to_csv(const Signal& x);

/// Phase CSV: header "re,im,degenerate".
void write_phase_csv(const PhaseVector& u, const std::string& path);

/// Grayscale image as a real signal normalized to [0, 1]. Supports PGM
/// (P2/P5) and plain CSV matrices (one row per image row).
Signal load_image_signal(const std::string& path);

/// Round-trip double formatting used by every CSV writer.
std::string fmt_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace magcut
