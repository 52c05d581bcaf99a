#include "eohom/elements.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace eohom {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

// Bar/cross coupler with cross power sin^2(theta).
PathMatrix coupler(double cross_power) {
  const double s = std::sqrt(std::clamp(cross_power, 0.0, 1.0));
  const double c = std::sqrt(std::clamp(1.0 - cross_power, 0.0, 1.0));
  PathMatrix m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

}  // namespace

ModeMatrix on_paths(const PathMatrix& m) {
  ModeMatrix out = ModeMatrix::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int p = 0; p < 2; ++p) out(2 * a + p, 2 * b + p) = m(a, b);
  return out;
}

ModeMatrix on_polarizations(const PolarizationMatrix& upper, const PolarizationMatrix& lower) {
  ModeMatrix out = ModeMatrix::Zero();
  out.block<2, 2>(0, 0) = upper;
  out.block<2, 2>(2, 2) = lower;
  return out;
}

ModeMatrix on_polarizations(const PolarizationMatrix& m, Path path) {
  const PolarizationMatrix id = PolarizationMatrix::Identity();
  return path == Path::Upper ? on_polarizations(m, id) : on_polarizations(id, m);
}

GroupIndices group_indices(const DispersionModel& model, double wavelength_nm) {
  return {group_index(model, Polarization::H, wavelength_nm),
          group_index(model, Polarization::V, wavelength_nm)};
}

// ---------------------------------------------------------------------------

PmSpec default_pm_spec(const DispersionModel& model) {
  PmSpec pm;
  const double lambda = pm.reference_wavelength_nm;
  const GroupIndices ng = group_indices(model, lambda);
  pm.shg_group_mismatch = 2.0 * group_index(model, Polarization::V, 0.5 * lambda) - ng.h - ng.v;
  return pm;
}

double pm_center_vs_temperature(const PmSpec& pm, Process process, double temperature_c) {
  const double slope = process == Process::Pdc ? pm.pdc_slope_nm_per_c : pm.pc_slope_nm_per_c;
  return pm.reference_wavelength_nm + slope * (temperature_c - pm.reference_temperature_c);
}

double pdc_phase_matching(const PmSpec& pm, const GroupIndices& ng, double center_omega,
                          double detuning, double temperature_c) {
  const double center = omega_from_nm(pm_center_vs_temperature(pm, Process::Pdc, temperature_c));
  const double shift = center - center_omega;
  const double half_mismatch =
      ng.difference() * pm.pdc_length_mm * kMmToM * (detuning - shift) / (2.0 * kSpeedOfLight);
  return sinc(half_mismatch);
}

PdcSpectrum pdc_amplitude(const PmSpec& pm, const GroupIndices& ng, const SpectralGrid& grid,
                          double temperature_c) {
  PdcSpectrum out;
  out.amplitude.resize(grid.size());
  for (int k = 0; k < grid.size(); ++k)
    out.amplitude[k] = pdc_phase_matching(pm, ng, grid.center_omega(), grid.detuning(k), temperature_c);
  const double norm = std::sqrt(out.amplitude.abs2().sum() * grid.spacing());
  if (norm > 0.0) out.amplitude /= norm;

  const double shift =
      omega_from_nm(pm_center_vs_temperature(pm, Process::Pdc, temperature_c)) - grid.center_omega();
  const double first_zero = 2.0 * kPi * kSpeedOfLight / (ng.difference() * pm.pdc_length_mm * kMmToM);
  out.main_lobe_truncated = std::abs(shift) + first_zero > grid.max_detuning();
  return out;
}

Eigen::ArrayXd shg_spectrum(const PmSpec& pm, const Eigen::ArrayXd& wavelengths_nm,
                            double temperature_c) {
  const double center = omega_from_nm(pm_center_vs_temperature(pm, Process::Pdc, temperature_c));
  const double L = pm.pdc_length_mm * kMmToM;
  Eigen::ArrayXd out(wavelengths_nm.size());
  for (Eigen::Index k = 0; k < wavelengths_nm.size(); ++k) {
    const double dw = omega_from_nm(wavelengths_nm[k]) - center;
    const double s = sinc(pm.shg_group_mismatch * dw * L / (2.0 * kSpeedOfLight));
    out[k] = s * s;
  }
  return out;
}

// ---------------------------------------------------------------------------

PcSpec pc_with_efficiency(PcSpec pc, double efficiency) {
  if (!(efficiency >= 0.0 && efficiency <= 1.0))
    throw OutOfRangeError("conversion efficiency must lie in [0, 1]");
  pc.voltage_v = pc.full_conversion_voltage() * std::asin(std::sqrt(efficiency)) / (0.5 * kPi);
  return pc;
}

double pc_mismatch(const PcSpec& pc, const GroupIndices& ng, double omega) {
  const double matched = omega_from_nm(pc.phase_matched_wavelength_nm());
  return -ng.difference() * (omega - matched) / (2.0 * kSpeedOfLight);
}

PolarizationMatrix pc_transfer(const PcSpec& pc, const GroupIndices& ng, double wavelength_nm) {
  const double delta_l = pc_mismatch(pc, ng, omega_from_nm(wavelength_nm)) * pc.length_mm * kMmToM;
  return coupled_mode_matrix(pc.coupling_length(), delta_l);
}

double pc_conversion_efficiency(const PcSpec& pc, const GroupIndices& ng, double wavelength_nm) {
  return std::norm(pc_transfer(pc, ng, wavelength_nm)(1, 0));
}

Eigen::ArrayXd pc_transmission_spectrum(const PcSpec& pc, const GroupIndices& ng,
                                        const Eigen::ArrayXd& wavelengths_nm) {
  Eigen::ArrayXd out(wavelengths_nm.size());
  for (Eigen::Index k = 0; k < wavelengths_nm.size(); ++k)
    out[k] = 1.0 - pc_conversion_efficiency(pc, ng, wavelengths_nm[k]);
  return out;
}

double bulk_pc_phase_matched_wavelength_nm(const DispersionModel& model, double poling_period_um) {
  if (!(poling_period_um > 0.0)) throw OutOfRangeError("poling period must be positive");
  const double period_nm = poling_period_um * 1e3;
  auto f = [&](double l) {
    return (refractive_index(model, Polarization::H, l) - refractive_index(model, Polarization::V, l)) / l -
           1.0 / period_nm;
  };
  double lo = 1400.0, hi = 1700.0;
  double flo = f(lo);
  if (flo * f(hi) > 0.0) throw OutOfRangeError("no bulk phase match in 1400-1700 nm");
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm * flo > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

ModeMatrix pbs_transfer(double extinction_db) {
  if (!(extinction_db > 0.0)) throw OutOfRangeError("PBS extinction must be positive");
  const double leak = std::isinf(extinction_db) ? 0.0 : std::pow(10.0, -extinction_db / 10.0);
  const PathMatrix h = coupler(leak);
  const PathMatrix v = coupler(1.0 - leak);
  ModeMatrix out = ModeMatrix::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out(2 * a + 0, 2 * b + 0) = h(a, b);
      out(2 * a + 1, 2 * b + 1) = v(a, b);
    }
  return out;
}

PathMatrix bs_transfer(const BsSpec& bs) {
  const double kl = bs.coupling_per_mm * bs.section_length_mm;
  const double d1 = bs.detuning_per_volt_mm * bs.u11 * bs.section_length_mm;
  const double d2 = bs.detuning_per_volt_mm * bs.u12 * bs.section_length_mm;
  return coupled_mode_matrix(kl, -d2) * coupled_mode_matrix(kl, d1);
}

double bs_cross_power(const BsSpec& bs) { return std::norm(bs_transfer(bs)(1, 0)); }

BsSpec calibrate_bs(BsSpec bs, double target_cross) {
  if (!(target_cross >= 0.0 && target_cross <= 1.0))
    throw OutOfRangeError("target splitting must lie in [0, 1]");
  if (!(bs.detuning_per_volt_mm > 0.0 && bs.section_length_mm > 0.0))
    throw OutOfRangeError("BS needs positive detuning per volt and section length");
  auto f = [&](double u) {
    BsSpec t = bs;
    t.u11 = t.u12 = u;
    return bs_cross_power(t) - target_cross;
  };
  // Scan in steps of 0.01 rad of section detuning for the first sign change.
  const double du = 0.01 / (bs.detuning_per_volt_mm * bs.section_length_mm);
  double lo = 0.0, flo = f(0.0);
  if (flo == 0.0) {
    bs.u11 = bs.u12 = 0.0;
    return bs;
  }
  double hi = -1.0;
  for (int i = 1; i <= 20000; ++i) {
    const double u = i * du;
    const double fu = f(u);
    if (fu == 0.0 || (fu > 0.0) != (flo > 0.0)) {
      hi = u;
      break;
    }
    lo = u;
    flo = fu;
  }
  if (hi < 0.0)
    throw OutOfRangeError("splitting ratio " + std::to_string(target_cross) +
                          " not reachable with this coupler");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  bs.u11 = bs.u12 = 0.5 * (lo + hi);
  return bs;
}

// ---------------------------------------------------------------------------

Eigen::ArrayXcd propagation_transfer(Polarization pol, double length_mm, const GroupIndices& ng,
                                     const SpectralGrid& grid) {
  if (length_mm < 0.0) throw OutOfRangeError("negative propagation length");
  const double delay = ng.of(pol) * length_mm * kMmToM / kSpeedOfLight;
  Eigen::ArrayXcd out(grid.size());
  for (int k = 0; k < grid.size(); ++k) out[k] = std::polar(1.0, grid.detuning(k) * delay);
  return out;
}

FilterSpec parse_filter(const std::string& text) {
  FilterSpec f;
  if (text == "none") return f;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("filter must be 'none' or 'shape:width_nm', got '" + text + "'");
  const std::string shape = text.substr(0, colon);
  if (shape == "rect" || shape == "rectangular")
    f.shape = FilterShape::Rectangular;
  else if (shape == "lorentz" || shape == "lorentzian")
    f.shape = FilterShape::Lorentzian;
  else
    throw Error("unknown filter shape '" + shape + "'");
  try {
    std::size_t used = 0;
    f.width_nm = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error("bad filter width in '" + text + "'");
  }
  if (!(f.width_nm > 0.0)) throw Error("filter width must be positive");
  return f;
}

std::string to_string(const FilterSpec& f) {
  char w[32];
  std::snprintf(w, sizeof w, "%g", f.width_nm);
  switch (f.shape) {
    case FilterShape::None: return "none";
    case FilterShape::Rectangular: return std::string("rect:") + w;
    case FilterShape::Lorentzian: return std::string("lorentz:") + w;
  }
  return "none";
}

double filter_amplitude(const FilterSpec& f, double wavelength_nm) {
  switch (f.shape) {
    case FilterShape::None: return 1.0;
    case FilterShape::Rectangular:
      return std::abs(wavelength_nm - f.center_nm) <= 0.5 * f.width_nm ? 1.0 : 0.0;
    case FilterShape::Lorentzian: {
      const double x = 2.0 * (wavelength_nm - f.center_nm) / f.width_nm;
      return std::sqrt(1.0 / (1.0 + x * x));
    }
  }
  return 1.0;
}

Eigen::ArrayXcd filter_amplitude(const FilterSpec& f, const SpectralGrid& grid) {
  Eigen::ArrayXcd out(grid.size());
  for (int k = 0; k < grid.size(); ++k) out[k] = filter_amplitude(f, grid.wavelength_nm(k));
  return out;
}

}  // namespace eohom
