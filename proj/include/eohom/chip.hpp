#pragma once

#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eohom/elements.hpp"

namespace eohom {

/// Geometry of the chip, in circuit order: PDC section, PC0, PBS, the
/// segmented converter branch (parallel to a plain branch), then the BS block.
struct ChipLayout {
  double pdc_length_mm = 20.7;
  double pc0_length_mm = 7.62;
  double pbs_length_mm = 4.0;
  double segment_length_mm = 2.54;
  int segment_count = 10;
  double bs_block_length_mm = 13.1;
  // Extra length of the segmented branch over the plain branch.
  double branch_mismatch_mm = 0.0;

  double total_length_mm() const {
    return pdc_length_mm + pc0_length_mm + pbs_length_mm + segment_count * segment_length_mm +
           bs_block_length_mm;
  }
  double branch_length_mm() const { return segment_count * segment_length_mm; }
  int triple_count() const { return segment_count - 2; }
};

/// Electrical state. Triple m drives segments m, m+1, m+2 (1-based).
struct SwitchSetting {
  bool pc0_on = true;
  std::optional<int> triple = 2;
  std::set<int> disabled_segments;
  double bs_u11 = 0.0;
  double bs_u12 = 0.0;
  double pc0_efficiency = 1.0;

  std::string label() const;
};

void validate(const ChipLayout& layout);
void validate(const ChipLayout& layout, const SwitchSetting& setting);

/// True when triple m uses only healthy segments of the layout.
bool triple_available(const ChipLayout& layout, const std::set<int>& disabled, int triple);

/// Everything a layout file can set.
struct ChipConfig {
  ChipLayout layout;
  SwitchSetting setting;
  double pbs_extinction_db = std::numeric_limits<double>::infinity();
  double pc_conversion_db = std::numeric_limits<double>::infinity();
  FilterSpec filter;
  double temperature_c = 43.6;
  double pump_wavelength_nm = 0.5 * kReferenceWavelengthNm;

  /// Peak conversion efficiency of the segmented converter, 1 - 10^(-dB/10).
  double pc_efficiency() const;
};

/// Parses the layout file format:
///
///   # comment
///   pdc_length_mm      = 20.7
///   pc0_length_mm      = 7.62
///   pbs_length_mm      = 4.0
///   segment_length_mm  = 2.54
///   segment_count      = 10
///   bs_block_length_mm = 13.1
///   disabled_segments  = 10          # comma list or 'none'
///   branch_mismatch_mm = 0
///   pbs_extinction_db  = inf
///   pc_conversion_db   = inf
///   pc0_efficiency     = 1
///   filter_shape       = none        # none | rectangular | lorentzian
///   filter_width_nm    = 1.2
///   temperature_c      = 43.6
///   pump_wavelength_nm = 775.85
///
/// Missing keys keep the defaults above. Unknown keys and malformed values are
/// ParseError (line/column); values that break an invariant are SemanticError.
ChipConfig parse_layout(std::string_view text, std::string source = "<layout>");
ChipConfig load_layout(const std::string& path);

/// All (PC0 off/on) x (available triple) settings sorted by (pc0_on, triple),
/// copying the remaining fields from `base`.
std::vector<SwitchSetting> enumerate_settings(const ChipLayout& layout, const SwitchSetting& base = {});

/// One stretch of waveguide a photon travels in a fixed polarization.
struct PathLeg {
  double length_mm;
  Polarization pol;
};

struct PhotonPaths {
  std::vector<PathLeg> segmented;  // photon routed into the segmented branch
  std::vector<PathLeg> direct;     // photon routed into the plain branch
};

/// Polarization history of both photons from the PDC midpoint to the BS
/// outputs; conversions happen at converter midpoints.
PhotonPaths track_photons(const ChipLayout& layout, const SwitchSetting& setting);

/// Arrival-time difference at the BS (ps), positive when the segmented-branch
/// photon is later. Requires an active triple.
double delay_schedule_ps(const ChipLayout& layout, const GroupIndices& ng, const SwitchSetting& setting);

}  // namespace eohom
