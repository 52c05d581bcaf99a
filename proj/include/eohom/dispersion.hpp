#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eohom/units.hpp"

namespace eohom {

/// Three-pole Sellmeier form n^2 = 1 + sum_i A_i l^2 / (l^2 - B_i), l in um.
/// Coefficients are stored flat as A1, B1, A2, B2, ...
template <typename Scalar>
Scalar sellmeier_index(std::span<const double> coefficients, Scalar wavelength_um) {
  const Scalar l2 = wavelength_um * wavelength_um;
  Scalar n2 = Scalar(1);
  for (std::size_t i = 0; i + 1 < coefficients.size(); i += 2)
    n2 += Scalar(coefficients[i]) * l2 / (l2 - Scalar(coefficients[i + 1]));
  using std::sqrt;
  return sqrt(n2);
}

struct DispersionModel {
  std::vector<double> sellmeier_ordinary;
  std::vector<double> sellmeier_extraordinary;
  // Constant corrections added to the Sellmeier group index of each mode.
  double ng_offset_h = 0.0;
  double ng_offset_v = 0.0;
  double reference_temperature_c = 43.6;
  double min_wavelength_nm = 400.0;
  double max_wavelength_nm = 5000.0;

  const std::vector<double>& coefficients(Polarization p) const {
    return p == Polarization::H ? sellmeier_ordinary : sellmeier_extraordinary;
  }
  double ng_offset(Polarization p) const { return p == Polarization::H ? ng_offset_h : ng_offset_v; }
};

/// Central-difference step used for dn/dl and dn_g/dl.
inline constexpr double kDefaultDerivativeStepNm = 0.1;

/// Group-index difference every timing number in the model is anchored to.
inline constexpr double kReferenceGroupIndexDifference = 0.0805;
inline constexpr double kReferenceWavelengthNm = 1551.7;

/// Bulk congruent LiNbO3 (Zelmon, Small & Jundt 1997), uncalibrated.
DispersionModel congruent_linbo3();

/// congruent_linbo3() calibrated to kReferenceGroupIndexDifference.
DispersionModel default_dispersion();

/// Coefficient file: `key = value` lines with keys sellmeier_o, sellmeier_e
/// (comma-separated A1,B1,A2,B2,...), ng_offset_h, ng_offset_v and the optional
/// valid_range_nm (two values) and reference_temperature_c.
DispersionModel parse_dispersion(std::string_view text, std::string source = "<dispersion>");
DispersionModel load_dispersion(const std::string& path);

double refractive_index(const DispersionModel& model, Polarization pol, double wavelength_nm);

/// n_g = n - l dn/dl + offset, derivative by central difference of `step_nm`.
double group_index(const DispersionModel& model, Polarization pol, double wavelength_nm,
                   double step_nm = kDefaultDerivativeStepNm);

/// n_gH - n_gV.
double group_index_difference(const DispersionModel& model, double wavelength_nm);

/// dn_g/dl in 1/nm.
double group_index_slope(const DispersionModel& model, Polarization pol, double wavelength_nm,
                         double step_nm = kDefaultDerivativeStepNm);

/// Signed (n_gH - n_gV) L / c in ps; positive when H arrives later.
double walk_off_time_ps(const DispersionModel& model, double length_mm, double wavelength_nm);

/// Taylor coefficients of the converter phase Phi(w) = w L (n_first - n_second) / (2c)
/// around the given wavelength: {Phi0 [rad], dPhi/dw [s], d2Phi/dw2 [s^2]} up to `order`.
std::vector<double> spectral_phase_taylor(const DispersionModel& model, Polarization first,
                                          Polarization second, double length_mm,
                                          double wavelength_nm, int order);

/// Group-delay dispersion of a TE/TM polarization converter in fs^2:
/// -l^2 L / (4 pi c^2) (dn_gH/dl - dn_gV/dl).
double converter_gdd_fs2(const DispersionModel& model, double length_mm, double wavelength_nm,
                         double step_nm = kDefaultDerivativeStepNm);

struct Calibration {
  DispersionModel model;
  double uncalibrated_difference = 0.0;  // Sellmeier-only n_gH - n_gV
  double residual = 0.0;                 // uncalibrated - target, absorbed by the offsets
};

/// Sets symmetric offsets (-r/2 for H, +r/2 for V) so that
/// group_index_difference(wavelength) == target. Existing offsets are ignored.
Calibration calibrate(const DispersionModel& model,
                      double target = kReferenceGroupIndexDifference,
                      double wavelength_nm = kReferenceWavelengthNm);

}  // namespace eohom
