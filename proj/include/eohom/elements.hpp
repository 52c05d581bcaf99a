#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "eohom/dispersion.hpp"
#include "eohom/grid.hpp"
#include "eohom/units.hpp"

namespace eohom {

// ---------------------------------------------------------------------------
// Mode basis

enum class Path { Upper = 0, Lower = 1 };

inline constexpr int kModeCount = 4;

/// Modes are ordered (upper,H), (upper,V), (lower,H), (lower,V).
constexpr int mode_index(Path path, Polarization pol) {
  return 2 * static_cast<int>(path) + static_cast<int>(pol);
}

using PathMatrix = Eigen::Matrix2cd;          // acts on (upper, lower)
using PolarizationMatrix = Eigen::Matrix2cd;  // acts on (H, V)
using ModeMatrix = Eigen::Matrix4cd;

/// A path matrix applied identically to both polarizations.
ModeMatrix on_paths(const PathMatrix& m);
/// A polarization matrix applied in one path, identity in the other.
ModeMatrix on_polarizations(const PolarizationMatrix& m, Path path);
/// Polarization matrices applied in each path.
ModeMatrix on_polarizations(const PolarizationMatrix& upper, const PolarizationMatrix& lower);

/// Calibrated group indices of the guided modes at the operating wavelength.
struct GroupIndices {
  double h = 0.0;
  double v = 0.0;

  double of(Polarization p) const { return p == Polarization::H ? h : v; }
  double difference() const { return h - v; }
  double mean() const { return 0.5 * (h + v); }
};

GroupIndices group_indices(const DispersionModel& model, double wavelength_nm = kReferenceWavelengthNm);

/// exp(-i [[delta, kappa], [kappa, -delta]] L), the uniform codirectional
/// coupled-mode solution, with kappa*L and delta*L given directly. Off-diagonal
/// (conversion / cross) amplitudes carry -i.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> coupled_mode_matrix(Scalar coupling_length,
                                                             Scalar mismatch_length) {
  using Complex = std::complex<Scalar>;
  using std::cos, std::sin, std::sqrt;
  const Scalar gamma = sqrt(coupling_length * coupling_length + mismatch_length * mismatch_length);
  const Scalar c = cos(gamma);
  // sin(g)/g -> 1 as g -> 0.
  const Scalar s_over_g = gamma == Scalar(0) ? Scalar(1) : sin(gamma) / gamma;
  const Complex i(0, 1);
  Eigen::Matrix<Complex, 2, 2> m;
  m(0, 0) = Complex(c) - i * (mismatch_length * s_over_g);
  m(1, 1) = Complex(c) + i * (mismatch_length * s_over_g);
  m(0, 1) = m(1, 0) = -i * (coupling_length * s_over_g);
  return m;
}

// ---------------------------------------------------------------------------
// Phase matching

enum class Process { Pdc, Pc };

/// Phase-matching operating point. Centre wavelengths are linear in
/// temperature and cross at (reference_temperature_c, reference_wavelength_nm).
struct PmSpec {
  double reference_temperature_c = 43.6;
  double reference_wavelength_nm = kReferenceWavelengthNm;
  double pdc_slope_nm_per_c = -0.15;
  double pc_slope_nm_per_c = -0.7;
  double pdc_length_mm = 20.7;
  // 2 n_g(pump) - n_gH - n_gV, sets the SHG tuning-curve width.
  double shg_group_mismatch = 0.0991;
};

/// PmSpec with the SHG group mismatch taken from the dispersion model
/// (extraordinary pump at half the reference wavelength).
PmSpec default_pm_spec(const DispersionModel& model);

double pm_center_vs_temperature(const PmSpec& pm, Process process, double temperature_c);

struct PdcSpectrum {
  Eigen::ArrayXcd amplitude;        // phi(Omega_k), sum |phi|^2 dOmega = 1
  bool main_lobe_truncated = false;  // first zeros lie outside the grid
};

/// Unnormalized sinc phase-matching function at signal detuning Omega (rad/s):
/// sinc(dn_g L (Omega - Omega_T) / (2c)), Omega_T the temperature-shifted centre.
double pdc_phase_matching(const PmSpec& pm, const GroupIndices& ng, double center_omega,
                          double detuning, double temperature_c);

PdcSpectrum pdc_amplitude(const PmSpec& pm, const GroupIndices& ng, const SpectralGrid& grid,
                          double temperature_c);

/// Normalized SHG power sinc^2(dk L / 2) versus fundamental wavelength.
Eigen::ArrayXd shg_spectrum(const PmSpec& pm, const Eigen::ArrayXd& wavelengths_nm,
                            double temperature_c);

// ---------------------------------------------------------------------------
// Polarization converter

struct PcSpec {
  double length_mm = 7.62;
  double poling_period_um = 21.4;
  double voltage_v = 0.0;
  double voltage_length_product_vcm = 15.0;
  double center_nm = kReferenceWavelengthNm;  // phase-matched at reference temperature
  double center_shift_nm = 0.0;
  double temperature_c = 43.6;
  double reference_temperature_c = 43.6;
  double slope_nm_per_c = -0.7;

  double full_conversion_voltage() const { return voltage_length_product_vcm / (length_mm * 0.1); }
  /// kappa * L = (pi/2) U / U_full.
  double coupling_length() const { return 0.5 * kPi * voltage_v / full_conversion_voltage(); }
  double phase_matched_wavelength_nm() const {
    return center_nm + slope_nm_per_c * (temperature_c - reference_temperature_c) + center_shift_nm;
  }
};

/// Copy of `pc` driven so that the peak conversion efficiency equals `efficiency`.
PcSpec pc_with_efficiency(PcSpec pc, double efficiency);

/// Phase mismatch delta = (beta_V - beta_H - 2 pi / Lambda) / 2 in 1/m, linearized
/// about the phase-matched frequency with the calibrated group indices.
double pc_mismatch(const PcSpec& pc, const GroupIndices& ng, double omega);

/// 2x2 (H, V) coupled-mode matrix referenced to the mean H/V propagation.
PolarizationMatrix pc_transfer(const PcSpec& pc, const GroupIndices& ng, double wavelength_nm);

double pc_conversion_efficiency(const PcSpec& pc, const GroupIndices& ng, double wavelength_nm);

/// 1 - |conversion|^2, the unconverted power behind a polarizer.
Eigen::ArrayXd pc_transmission_spectrum(const PcSpec& pc, const GroupIndices& ng,
                                        const Eigen::ArrayXd& wavelengths_nm);

/// Wavelength where bulk Sellmeier indices satisfy (n_o - n_e) / l = 1 / Lambda,
/// searched in [1400, 1700] nm.
double bulk_pc_phase_matched_wavelength_nm(const DispersionModel& model, double poling_period_um);

// ---------------------------------------------------------------------------
// Polarization beam splitter

/// H stays in its path (bar), V crosses. A finite extinction leaks power
/// 10^(-ext/10) into the other port through a unitary rotation.
ModeMatrix pbs_transfer(double extinction_db);

// ---------------------------------------------------------------------------
// Delta-beta reversal beam splitter

/// Two-section directional coupler. Defaults are assumptions: a 6 mm
/// coupling section (two 3 mm halves) with kappa * 6 mm = pi / 2.
struct BsSpec {
  double section_length_mm = 3.0;
  double coupling_per_mm = kPi / 12.0;
  double detuning_per_volt_mm = 0.1;  // 1/(mm V)
  double u11 = 0.0;
  double u12 = 0.0;
};

/// M = M_half(-delta2) M_half(delta1) with delta_i = detuning_per_volt * U_i; the
/// second half electrode is wired with reversed polarity.
PathMatrix bs_transfer(const BsSpec& bs);

double bs_cross_power(const BsSpec& bs);

/// Finds U11 = U12 = U >= 0 with |cross|^2 = target. Throws if unreachable.
BsSpec calibrate_bs(BsSpec bs, double target_cross = 0.5);

// ---------------------------------------------------------------------------
// Propagation and filters

/// exp(i Omega n_g L / c) per grid sample (carrier phase dropped).
Eigen::ArrayXcd propagation_transfer(Polarization pol, double length_mm, const GroupIndices& ng,
                                     const SpectralGrid& grid);

enum class FilterShape { None, Rectangular, Lorentzian };

struct FilterSpec {
  FilterShape shape = FilterShape::None;
  double center_nm = kReferenceWavelengthNm;
  double width_nm = 0.0;  // full width; FWHM of the intensity for Lorentzian
};

/// Parses "none", "rect:2.3", "rectangular:2.3", "lorentz:1.2", "lorentzian:1.2".
FilterSpec parse_filter(const std::string& text);
std::string to_string(const FilterSpec& f);

double filter_amplitude(const FilterSpec& f, double wavelength_nm);
Eigen::ArrayXcd filter_amplitude(const FilterSpec& f, const SpectralGrid& grid);

}  // namespace eohom
