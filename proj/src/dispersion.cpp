#include "eohom/dispersion.hpp"

#include <cmath>
#include <fstream>

#include "eohom/keyvalue.hpp"

namespace eohom {

namespace {

void check_range(const DispersionModel& m, double wavelength_nm) {
  if (!(wavelength_nm >= m.min_wavelength_nm && wavelength_nm <= m.max_wavelength_nm))
    throw OutOfRangeError("wavelength " + std::to_string(wavelength_nm) +
                          " nm outside Sellmeier validity [" + std::to_string(m.min_wavelength_nm) +
                          ", " + std::to_string(m.max_wavelength_nm) + "] nm");
}

void check_step(const DispersionModel& m, double wavelength_nm, double step_nm) {
  if (!(step_nm > 0.0 && step_nm <= 10.0))
    throw OutOfRangeError("finite-difference step " + std::to_string(step_nm) +
                          " nm outside (0, 10] nm");
  check_range(m, wavelength_nm - 2.0 * step_nm);
  check_range(m, wavelength_nm + 2.0 * step_nm);
}

double raw_index(const DispersionModel& m, Polarization pol, double wavelength_nm) {
  return sellmeier_index<double>(m.coefficients(pol), wavelength_nm * 1e-3);
}

double raw_group_index(const DispersionModel& m, Polarization pol, double wavelength_nm, double h) {
  const double dn = (raw_index(m, pol, wavelength_nm + h) - raw_index(m, pol, wavelength_nm - h)) / (2.0 * h);
  return raw_index(m, pol, wavelength_nm) - wavelength_nm * dn;
}

}  // namespace

DispersionModel congruent_linbo3() {
  DispersionModel m;
  m.sellmeier_ordinary = {2.6734, 0.01764, 1.2290, 0.05914, 12.614, 474.60};
  m.sellmeier_extraordinary = {2.9804, 0.02047, 0.5981, 0.0666, 8.9543, 416.08};
  return m;
}

DispersionModel default_dispersion() { return calibrate(congruent_linbo3()).model; }

DispersionModel parse_dispersion(std::string_view text, std::string source) {
  const auto file = KeyValueFile::parse(text, std::move(source));
  DispersionModel m;
  bool have_o = false, have_e = false;
  for (const auto& e : file.entries()) {
    if (e.key == "sellmeier_o" || e.key == "sellmeier_e") {
      auto c = file.as_double_list(e);
      if (c.size() < 2 || c.size() % 2 != 0)
        throw SemanticError(e.key, "expected an even, non-zero number of coefficients");
      (e.key == "sellmeier_o" ? m.sellmeier_ordinary : m.sellmeier_extraordinary) = std::move(c);
      (e.key == "sellmeier_o" ? have_o : have_e) = true;
    } else if (e.key == "ng_offset_h") {
      m.ng_offset_h = file.as_double(e);
    } else if (e.key == "ng_offset_v") {
      m.ng_offset_v = file.as_double(e);
    } else if (e.key == "reference_temperature_c") {
      m.reference_temperature_c = file.as_double(e);
    } else if (e.key == "valid_range_nm") {
      const auto r = file.as_double_list(e);
      if (r.size() != 2 || !(r[0] > 0.0 && r[1] > r[0]))
        throw SemanticError(e.key, "expected 'min, max' with 0 < min < max");
      m.min_wavelength_nm = r[0];
      m.max_wavelength_nm = r[1];
    } else {
      throw ParseError(file.source(), e.line, 1, "unknown key '" + e.key + "'");
    }
  }
  if (!have_o) throw SemanticError("sellmeier_o", "missing");
  if (!have_e) throw SemanticError("sellmeier_e", "missing");
  return m;
}

DispersionModel load_dispersion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_dispersion(text, path);
}

double refractive_index(const DispersionModel& model, Polarization pol, double wavelength_nm) {
  check_range(model, wavelength_nm);
  return raw_index(model, pol, wavelength_nm);
}

double group_index(const DispersionModel& model, Polarization pol, double wavelength_nm,
                   double step_nm) {
  check_step(model, wavelength_nm, step_nm);
  return raw_group_index(model, pol, wavelength_nm, step_nm) + model.ng_offset(pol);
}

double group_index_difference(const DispersionModel& model, double wavelength_nm) {
  return group_index(model, Polarization::H, wavelength_nm) -
         group_index(model, Polarization::V, wavelength_nm);
}

double group_index_slope(const DispersionModel& model, Polarization pol, double wavelength_nm,
                         double step_nm) {
  check_step(model, wavelength_nm, step_nm);
  // Offsets are constant and drop out of the slope.
  return (raw_group_index(model, pol, wavelength_nm + step_nm, step_nm) -
          raw_group_index(model, pol, wavelength_nm - step_nm, step_nm)) /
         (2.0 * step_nm);
}

double walk_off_time_ps(const DispersionModel& model, double length_mm, double wavelength_nm) {
  if (length_mm < 0.0) throw OutOfRangeError("negative length");
  return group_index_difference(model, wavelength_nm) * length_mm * kMmToM / kSpeedOfLight * kSToPs;
}

std::vector<double> spectral_phase_taylor(const DispersionModel& model, Polarization first,
                                          Polarization second, double length_mm,
                                          double wavelength_nm, int order) {
  if (order < 0 || order > 2)
    throw OutOfRangeError("spectral phase order " + std::to_string(order) + " not in {0, 1, 2}");
  if (length_mm < 0.0) throw OutOfRangeError("negative length");
  const double L = length_mm * kMmToM;
  const double c = kSpeedOfLight;
  std::vector<double> out;
  const double w0 = omega_from_nm(wavelength_nm);
  out.push_back(w0 * L *
                (refractive_index(model, first, wavelength_nm) -
                 refractive_index(model, second, wavelength_nm)) /
                (2.0 * c));
  if (order >= 1)
    out.push_back(L *
                  (group_index(model, first, wavelength_nm) - group_index(model, second, wavelength_nm)) /
                  (2.0 * c));
  if (order >= 2) {
    const double lambda = wavelength_nm * kNmToM;
    // dn_g/dl is per nm; convert to per metre.
    const double slope_diff = (group_index_slope(model, first, wavelength_nm) -
                               group_index_slope(model, second, wavelength_nm)) / kNmToM;
    out.push_back(-lambda * lambda * L / (4.0 * kPi * c * c) * slope_diff);
  }
  return out;
}

double converter_gdd_fs2(const DispersionModel& model, double length_mm, double wavelength_nm,
                         double step_nm) {
  if (!(length_mm > 0.0)) throw OutOfRangeError("converter length must be positive");
  const double lambda = wavelength_nm * kNmToM;
  const double slope_diff = (group_index_slope(model, Polarization::H, wavelength_nm, step_nm) -
                             group_index_slope(model, Polarization::V, wavelength_nm, step_nm)) /
                            kNmToM;
  const double L = length_mm * kMmToM;
  return -lambda * lambda * L / (4.0 * kPi * kSpeedOfLight * kSpeedOfLight) * slope_diff * kS2ToFs2;
}

Calibration calibrate(const DispersionModel& model, double target, double wavelength_nm) {
  Calibration out;
  out.model = model;
  out.model.ng_offset_h = 0.0;
  out.model.ng_offset_v = 0.0;
  out.uncalibrated_difference = group_index_difference(out.model, wavelength_nm);
  out.residual = out.uncalibrated_difference - target;
  out.model.ng_offset_h = -0.5 * out.residual;
  out.model.ng_offset_v = 0.5 * out.residual;
  return out;
}

}  // namespace eohom
