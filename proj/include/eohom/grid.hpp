#pragma once

#include <Eigen/Dense>

#include "eohom/units.hpp"

namespace eohom {

/// Uniform midpoint grid of signal detunings around the degeneracy frequency
/// w0 = w_pump / 2. Sample k sits at Omega_k = -Omega_max + (k + 1/2) dOmega, so
/// the grid is symmetric and Omega_{mirror(k)} = -Omega_k exactly.
class SpectralGrid {
 public:
  static constexpr double kDefaultHalfWidthNm = 6.0;
  static constexpr int kDefaultSamples = 4096;

  SpectralGrid(double center_wavelength_nm, double half_width_nm = kDefaultHalfWidthNm,
               int samples = kDefaultSamples);

  /// Grid centred on the degenerate wavelength of a CW pump.
  static SpectralGrid for_pump(double pump_wavelength_nm, double half_width_nm = kDefaultHalfWidthNm,
                               int samples = kDefaultSamples);

  int size() const { return samples_; }
  double center_omega() const { return center_omega_; }
  double center_wavelength_nm() const { return center_wavelength_nm_; }
  double half_width_nm() const { return half_width_nm_; }
  double max_detuning() const { return max_detuning_; }
  double spacing() const { return spacing_; }

  double detuning(int k) const { return -max_detuning_ + (k + 0.5) * spacing_; }
  int mirror(int k) const { return samples_ - 1 - k; }
  /// Vacuum wavelength (nm) of a photon at w0 + Omega_k.
  double wavelength_nm(int k) const { return nm_from_omega(center_omega_ + detuning(k)); }

  Eigen::ArrayXd detunings() const;
  Eigen::ArrayXd wavelengths_nm() const;

  bool operator==(const SpectralGrid& o) const {
    return samples_ == o.samples_ && center_omega_ == o.center_omega_ && spacing_ == o.spacing_;
  }

 private:
  double center_wavelength_nm_;
  double half_width_nm_;
  int samples_;
  double center_omega_;
  double max_detuning_;
  double spacing_;
};

}  // namespace eohom
