#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magcut::cli {

struct GlobalOpts {
  std::string out_dir = ".";
  std::string config_path;
  bool no_timestamps = false;
  std::uint64_t seed = 1;
};

struct GenArgs {
  std::string kind = "complex-gaussian";
  int p = 0;
  int h = 0, w = 0;
  std::string output;
};

struct MeasureArgs {
  std::string input;
  int masks = 1;
  std::string mask_kind = "gaussian";
  std::string output;
};

struct SolveArgs {
  std::string input;
  int masks = 1;
  std::string mask_kind = "gaussian";
  bool refine = false;
};

struct PlotArgs {
  std::string summary;
  std::string output;
};

int cmd_gen(const GlobalOpts& g, const GenArgs& a);
int cmd_measure(const GlobalOpts& g, const MeasureArgs& a);
int cmd_solve(const GlobalOpts& g, const SolveArgs& a);
int cmd_bench(const GlobalOpts& g);
int cmd_plot(const GlobalOpts& g, const PlotArgs& a);

}  // namespace magcut::cli
