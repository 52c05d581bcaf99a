#include "eohom/chip.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "eohom/keyvalue.hpp"

namespace eohom {

std::string SwitchSetting::label() const {
  std::string s = pc0_on ? "PC0 on" : "PC0 off";
  if (triple) {
    const int m = *triple;
    s += ", PC" + std::to_string(m) + std::to_string(m + 1) + std::to_string(m + 2);
  } else {
    s += ", no triple";
  }
  return s;
}

void validate(const ChipLayout& l) {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw SemanticError(field, "must be a positive length");
  };
  positive(l.pdc_length_mm, "pdc_length_mm");
  positive(l.pc0_length_mm, "pc0_length_mm");
  positive(l.pbs_length_mm, "pbs_length_mm");
  positive(l.segment_length_mm, "segment_length_mm");
  positive(l.bs_block_length_mm, "bs_block_length_mm");
  if (l.segment_count < 3) throw SemanticError("segment_count", "needs at least 3 segments");
  if (!std::isfinite(l.branch_mismatch_mm)) throw SemanticError("branch_mismatch_mm", "must be finite");
}

bool triple_available(const ChipLayout& layout, const std::set<int>& disabled, int triple) {
  if (triple < 1 || triple > layout.triple_count()) return false;
  for (int s = triple; s < triple + 3; ++s)
    if (disabled.count(s)) return false;
  return true;
}

void validate(const ChipLayout& layout, const SwitchSetting& s) {
  validate(layout);
  for (int seg : s.disabled_segments)
    if (seg < 1 || seg > layout.segment_count)
      throw SemanticError("disabled_segments", "segment " + std::to_string(seg) + " does not exist");
  if (s.triple) {
    if (*s.triple < 1 || *s.triple > layout.triple_count())
      throw SemanticError("triple", "triple " + std::to_string(*s.triple) + " out of range 1.." +
                                        std::to_string(layout.triple_count()));
    if (!triple_available(layout, s.disabled_segments, *s.triple))
      throw SemanticError("triple", "triple " + std::to_string(*s.triple) + " uses a disabled segment");
  }
  if (!(s.pc0_efficiency >= 0.0 && s.pc0_efficiency <= 1.0))
    throw SemanticError("pc0_efficiency", "must lie in [0, 1]");
}

double ChipConfig::pc_efficiency() const {
  if (std::isinf(pc_conversion_db)) return 1.0;
  return 1.0 - std::pow(10.0, -pc_conversion_db / 10.0);
}

ChipConfig parse_layout(std::string_view text, std::string source) {
  const auto file = KeyValueFile::parse(text, std::move(source));
  ChipConfig cfg;
  std::optional<double> filter_width;
  FilterShape filter_shape = FilterShape::None;
  for (const auto& e : file.entries()) {
    const auto& k = e.key;
    if (k == "pdc_length_mm") cfg.layout.pdc_length_mm = file.as_double(e);
    else if (k == "pc0_length_mm") cfg.layout.pc0_length_mm = file.as_double(e);
    else if (k == "pbs_length_mm") cfg.layout.pbs_length_mm = file.as_double(e);
    else if (k == "segment_length_mm") cfg.layout.segment_length_mm = file.as_double(e);
    else if (k == "segment_count") cfg.layout.segment_count = file.as_int(e);
    else if (k == "bs_block_length_mm") cfg.layout.bs_block_length_mm = file.as_double(e);
    else if (k == "branch_mismatch_mm") cfg.layout.branch_mismatch_mm = file.as_double(e);
    else if (k == "disabled_segments") {
      const auto segs = file.as_int_list(e);
      cfg.setting.disabled_segments = {segs.begin(), segs.end()};
    } else if (k == "pbs_extinction_db") {
      cfg.pbs_extinction_db = file.as_double(e);
      if (!(cfg.pbs_extinction_db > 0.0)) throw SemanticError(k, "must be positive");
    } else if (k == "pc_conversion_db") {
      cfg.pc_conversion_db = file.as_double(e);
      if (!(cfg.pc_conversion_db > 0.0)) throw SemanticError(k, "must be positive");
    } else if (k == "pc0_efficiency") {
      cfg.setting.pc0_efficiency = file.as_double(e);
    } else if (k == "filter_shape") {
      if (e.value == "none") filter_shape = FilterShape::None;
      else if (e.value == "rectangular" || e.value == "rect") filter_shape = FilterShape::Rectangular;
      else if (e.value == "lorentzian" || e.value == "lorentz") filter_shape = FilterShape::Lorentzian;
      else throw ParseError(file.source(), e.line, e.value_column, "unknown filter shape '" + e.value + "'");
    } else if (k == "filter_width_nm") {
      filter_width = file.as_double(e);
      if (!(*filter_width > 0.0)) throw SemanticError(k, "must be positive");
    } else if (k == "temperature_c") {
      cfg.temperature_c = file.as_double(e);
    } else if (k == "pump_wavelength_nm") {
      cfg.pump_wavelength_nm = file.as_double(e);
      if (!(cfg.pump_wavelength_nm > 0.0)) throw SemanticError(k, "must be positive");
    } else {
      throw ParseError(file.source(), e.line, 1, "unknown key '" + k + "'");
    }
  }
  if (filter_shape != FilterShape::None && !filter_width)
    throw SemanticError("filter_width_nm", "required when filter_shape is not 'none'");
  cfg.filter.shape = filter_shape;
  cfg.filter.width_nm = filter_width.value_or(0.0);
  cfg.filter.center_nm = 2.0 * cfg.pump_wavelength_nm;

  validate(cfg.layout);
  // The default triple may collide with a disabled segment; fall back to the first available one.
  cfg.setting.triple.reset();
  for (int m = 2; m <= cfg.layout.triple_count() && !cfg.setting.triple; ++m)
    if (triple_available(cfg.layout, cfg.setting.disabled_segments, m)) cfg.setting.triple = m;
  for (int m = 1; m <= cfg.layout.triple_count() && !cfg.setting.triple; ++m)
    if (triple_available(cfg.layout, cfg.setting.disabled_segments, m)) cfg.setting.triple = m;
  validate(cfg.layout, cfg.setting);
  return cfg;
}

ChipConfig load_layout(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_layout(ss.str(), path);
}

std::vector<SwitchSetting> enumerate_settings(const ChipLayout& layout, const SwitchSetting& base) {
  validate(layout);
  std::vector<SwitchSetting> out;
  for (bool on : {false, true})
    for (int m = 1; m <= layout.triple_count(); ++m) {
      if (!triple_available(layout, base.disabled_segments, m)) continue;
      SwitchSetting s = base;
      s.pc0_on = on;
      s.triple = m;
      out.push_back(s);
    }
  return out;
}

PhotonPaths track_photons(const ChipLayout& layout, const SwitchSetting& setting) {
  validate(layout, setting);
  if (!setting.triple)
    throw Error("no active triple: the photons reach the BS in orthogonal polarizations");

  // Photon a is born H, photon b is born V, both at the PDC midpoint.
  Polarization a = Polarization::H;
  Polarization b = Polarization::V;
  std::vector<PathLeg> legs_a, legs_b;
  auto both = [&](double length) {
    legs_a.push_back({length, a});
    legs_b.push_back({length, b});
  };

  both(0.5 * layout.pdc_length_mm);
  both(0.5 * layout.pc0_length_mm);
  if (setting.pc0_on) {
    a = other(a);
    b = other(b);
  }
  both(0.5 * layout.pc0_length_mm);
  both(layout.pbs_length_mm);

  // The PBS sends the H photon into the segmented branch.
  PhotonPaths out;
  out.segmented = a == Polarization::H ? legs_a : legs_b;
  out.direct = a == Polarization::H ? legs_b : legs_a;

  const double seg = layout.segment_length_mm;
  const double convert_at = (*setting.triple + 0.5) * seg;  // middle of segment m+1
  out.segmented.push_back({convert_at, Polarization::H});
  out.segmented.push_back({layout.branch_length_mm() - convert_at + layout.branch_mismatch_mm,
                           Polarization::V});
  out.direct.push_back({layout.branch_length_mm(), Polarization::V});

  out.segmented.push_back({layout.bs_block_length_mm, Polarization::V});
  out.direct.push_back({layout.bs_block_length_mm, Polarization::V});
  return out;
}

double delay_schedule_ps(const ChipLayout& layout, const GroupIndices& ng, const SwitchSetting& setting) {
  const PhotonPaths paths = track_photons(layout, setting);
  auto transit = [&](const std::vector<PathLeg>& legs) {
    double t = 0.0;
    for (const auto& leg : legs) t += ng.of(leg.pol) * leg.length_mm;
    return t;
  };
  const double diff_mm = transit(paths.segmented) - transit(paths.direct);
  return diff_mm * kMmToM / kSpeedOfLight * kSToPs;
}

}  // namespace eohom
