#include "eohom/grid.hpp"

namespace eohom {

SpectralGrid::SpectralGrid(double center_wavelength_nm, double half_width_nm, int samples)
    : center_wavelength_nm_(center_wavelength_nm), half_width_nm_(half_width_nm), samples_(samples) {
  if (!(center_wavelength_nm > 0.0)) throw OutOfRangeError("grid centre must be positive");
  if (!(half_width_nm > 0.0 && half_width_nm < 0.5 * center_wavelength_nm))
    throw OutOfRangeError("grid half-width must be in (0, centre/2)");
  if (samples < 2) throw OutOfRangeError("grid needs at least two samples");
  center_omega_ = omega_from_nm(center_wavelength_nm);
  // Linear map of the nominal half-width at the centre wavelength.
  max_detuning_ = center_omega_ * half_width_nm / center_wavelength_nm;
  spacing_ = 2.0 * max_detuning_ / samples;
}

SpectralGrid SpectralGrid::for_pump(double pump_wavelength_nm, double half_width_nm, int samples) {
  return SpectralGrid(2.0 * pump_wavelength_nm, half_width_nm, samples);
}

Eigen::ArrayXd SpectralGrid::detunings() const {
  Eigen::ArrayXd out(samples_);
  for (int k = 0; k < samples_; ++k) out[k] = detuning(k);
  return out;
}

Eigen::ArrayXd SpectralGrid::wavelengths_nm() const {
  Eigen::ArrayXd out(samples_);
  for (int k = 0; k < samples_; ++k) out[k] = wavelength_nm(k);
  return out;
}

}  // namespace eohom
