#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eohom/chip.hpp"
#include "eohom/dispersion.hpp"
#include "eohom/quantum.hpp"

namespace eohom {

enum class Pc0Selection { On, Off, Both };

Pc0Selection parse_pc0_selection(const std::string& s);

struct RunConfig {
  std::string command;
  std::optional<std::string> layout_path;
  std::optional<std::string> dispersion_path;
  std::string out_dir = ".";
  std::optional<int> grid_samples;
  std::optional<double> grid_halfwidth_nm;
  std::optional<std::string> filter;  // "shape:width"
  std::optional<Preset> preset;
  Pc0Selection pc0 = Pc0Selection::Both;
  bool svg = true;
  unsigned seed = 0;  // unused, the engine is deterministic
};

struct CommandResult {
  std::vector<std::string> files;  // paths written, in order
  std::string summary;             // human-readable text for stdout
};

/// Layout file (if any) with flag overrides applied on top.
Device load_device(const RunConfig& config);
DispersionModel load_dispersion_model(const RunConfig& config);

CommandResult cmd_delay_schedule(const RunConfig& config);
CommandResult cmd_hom_scan(const RunConfig& config);
CommandResult cmd_dip(const RunConfig& config);
CommandResult cmd_phasematch(const RunConfig& config);
CommandResult cmd_rates(const RunConfig& config);

CommandResult run_command(const RunConfig& config);

/// Full width of the region around the maximum (or minimum when `dip`) where
/// y stays above (below) `level`, edges linearly interpolated. NaN if the
/// region touches the end of the data.
double width_at_level(const std::vector<double>& x, const std::vector<double>& y, double level, bool dip = false);

/// Least-squares slope and intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Intersection of two lines, (x, y).
std::pair<double, double> intersect(const LineFit& a, const LineFit& b);

}  // namespace eohom
