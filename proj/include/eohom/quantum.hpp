#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "eohom/chip.hpp"
#include "eohom/elements.hpp"
#include "eohom/grid.hpp"

namespace eohom {

/// Frequency-resolved 4x4 mode transfer: samples[k] = U(w0 + Omega_k).
struct ElementTransfer {
  std::string name;
  std::vector<ModeMatrix> samples;

  static ElementTransfer constant(std::string name, const SpectralGrid& grid, const ModeMatrix& m);
  static ElementTransfer from_function(std::string name, const SpectralGrid& grid,
                                       const std::function<ModeMatrix(int)>& at_sample);
  /// Per-mode phases, modes ordered as mode_index().
  static ElementTransfer diagonal(std::string name, const SpectralGrid& grid,
                                  const std::array<Eigen::ArrayXcd, kModeCount>& phases);
};

/// Two-photon amplitude A[k](m1, m2): photon 1 in mode m1 at w0 + Omega_k,
/// photon 2 in mode m2 at w0 - Omega_k. The physical state is the exchange
/// symmetrization of A; A itself is kept unsymmetrized.
class TwoPhotonAmplitude {
 public:
  explicit TwoPhotonAmplitude(const SpectralGrid& grid);

  const SpectralGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  ModeMatrix& operator[](int k) { return amplitude_[k]; }
  const ModeMatrix& operator[](int k) const { return amplitude_[k]; }

  /// sum_k sum_{m1,m2} |A[k](m1,m2)|^2 dOmega.
  double norm() const;

 private:
  SpectralGrid grid_;
  std::vector<ModeMatrix> amplitude_;
};

/// Type-II source: A[(upper,H)][(upper,V)] = phi(Omega), everything else 0.
/// Throws when the grid holds fewer than three sinc lobes.
TwoPhotonAmplitude build_source_state(const PmSpec& pm, const GroupIndices& ng, const SpectralGrid& grid,
                                      double temperature_c);

/// A'[k] = U[k] A[k] U[mirror(k)]^T.
TwoPhotonAmplitude apply_element(const TwoPhotonAmplitude& state, const ElementTransfer& transfer);

/// Which interference terms a detection keeps.
enum class Coherence { Coherent, Distinguishable };

/// Probability of one photon at each output path (polarization-blind bucket
/// detectors), with filter F in front of both detectors:
/// sum_k dOmega |F(w0+W)F(w0-W)|^2 sum_{mu,nu} |A(up mu, low nu, W) + A(low nu, up mu, -W)|^2.
double coincidence_probability(const TwoPhotonAmplitude& state, const FilterSpec& filter = {},
                               Coherence coherence = Coherence::Coherent);

/// Probability that both photons pass the filters, wherever they exit.
double detection_probability(const TwoPhotonAmplitude& state, const FilterSpec& filter = {});

// ---------------------------------------------------------------------------
// Chip model

/// Device parameters the chain needs beyond the layout geometry.
struct DeviceModel {
  ChipLayout layout;
  GroupIndices ng{2.2636, 2.1831};
  PmSpec pm;
  PcSpec pc;  // centre, tuning and voltage-length product shared by every converter
  double pbs_extinction_db = std::numeric_limits<double>::infinity();
  double pc_efficiency = 1.0;  // segmented converter peak efficiency
  BsSpec bs;                   // geometry; voltages come from the switch setting
  double temperature_c = 43.6;
  double pump_wavelength_nm = 0.5 * kReferenceWavelengthNm;
  bool frequency_dependent_pc = true;
  bool pbs_enabled = true;
};

enum class Preset { Ideal, Paper };

Preset parse_preset(const std::string& s);
std::string to_string(Preset p);

/// Builds the device from a parsed layout. The BS voltages of the returned
/// setting are calibrated to 50:50.
struct Device {
  DeviceModel model;
  SwitchSetting base_setting;
  FilterSpec filter;
};

Device make_device(const ChipConfig& config, const DispersionModel& dispersion);

/// Overrides the imperfection knobs: Ideal = perfect PBS and frequency-flat
/// full conversion in every converter, Paper = PBS 17 dB, converters 20 dB, PC0 efficiency 0.99. BS stays 50:50.
void apply_preset(Device& device, Preset preset);

/// Spectral grid centred on the device's degenerate wavelength.
SpectralGrid device_grid(const DeviceModel& model, double half_width_nm = SpectralGrid::kDefaultHalfWidthNm,
                         int samples = SpectralGrid::kDefaultSamples);

/// Elements of the circuit in propagation order for one switch setting.
std::vector<ElementTransfer> chain_elements(const DeviceModel& model, const SwitchSetting& setting,
                                            const SpectralGrid& grid);

/// Source state pushed through chain_elements(); state at the BS outputs.
TwoPhotonAmplitude run_chain(const DeviceModel& model, const SwitchSetting& setting, const SpectralGrid& grid);

// ---------------------------------------------------------------------------
// Scans

struct ScanPoint {
  int setting_id = 0;  // 1-based position in the scanned list
  SwitchSetting setting;
  double delay_ps = 0.0;
  double raw = 0.0;
  double normalized = std::numeric_limits<double>::quiet_NaN();
};

std::vector<ScanPoint> hom_scan(const DeviceModel& model, const std::vector<SwitchSetting>& settings,
                                const SpectralGrid& grid, const FilterSpec& filter,
                                Coherence coherence = Coherence::Coherent);

/// Reference settings for unit probability. Empty `setting_ids` selects the
/// PC0-off setting with the largest triple index.
struct ReferenceRule {
  std::vector<int> setting_ids;
};

/// Divides raw values by the mean raw value of the reference settings.
std::vector<ScanPoint> normalize_scan(std::vector<ScanPoint> scan, const ReferenceRule& rule = {});

/// 1 - min(normalized).
double visibility(const std::vector<ScanPoint>& normalized_scan);

// ---------------------------------------------------------------------------
// Continuous dip

enum class DipScenario { Unfiltered, Rectangular, SegmentedPcLorentz, TwoPcsLorentz };

std::string to_string(DipScenario s);
std::vector<DipScenario> all_dip_scenarios();

/// Spectral shaping in front of an ideal 50:50 BS. The converter envelopes use
/// the conversion amplitude of `pc` (driven to full conversion).
struct DipSetup {
  FilterSpec filter;
  bool pc0_envelope = false;
  bool segmented_envelope = false;
  PcSpec pc;
};

DipSetup dip_setup(DipScenario scenario, double center_nm = kReferenceWavelengthNm);

/// Coincidence probability versus relative delay tau (ps), post-selected on both
/// photons being converted and passing the filters. Photon 1 is delayed by
/// exp(i Omega tau).
std::vector<double> dip_profile(const PmSpec& pm, const GroupIndices& ng, const SpectralGrid& grid,
                                const DipSetup& setup, const std::vector<double>& taus_ps,
                                double temperature_c = 43.6);

/// Grid that resolves a dip scenario: the unfiltered sinc needs far more
/// bandwidth than the filtered ones.
SpectralGrid dip_grid(DipScenario scenario, double center_nm = kReferenceWavelengthNm,
                      int samples = SpectralGrid::kDefaultSamples);

}  // namespace eohom
