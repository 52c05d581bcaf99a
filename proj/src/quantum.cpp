#include "eohom/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace eohom {

namespace {

constexpr int kUpperH = mode_index(Path::Upper, Polarization::H);
constexpr int kUpperV = mode_index(Path::Upper, Polarization::V);
constexpr int kLowerH = mode_index(Path::Lower, Polarization::H);
constexpr int kLowerV = mode_index(Path::Lower, Polarization::V);

Polarization pol_of_mode(int m) { return m % 2 == 0 ? Polarization::H : Polarization::V; }
Path path_of_mode(int m) { return m < 2 ? Path::Upper : Path::Lower; }

// Waveguide propagation of `length_mm` in the selected paths.
ElementTransfer propagation(std::string name, const SpectralGrid& grid, const GroupIndices& ng,
                            double length_mm, bool upper, bool lower) {
  std::array<Eigen::ArrayXcd, kModeCount> phases;
  for (int m = 0; m < kModeCount; ++m) {
    const bool active = path_of_mode(m) == Path::Upper ? upper : lower;
    phases[m] = active ? propagation_transfer(pol_of_mode(m), length_mm, ng, grid)
                       : Eigen::ArrayXcd::Ones(grid.size()).eval();
  }
  return ElementTransfer::diagonal(std::move(name), grid, phases);
}

// Converter of length L: mean H/V propagation times the coupled-mode matrix.
PolarizationMatrix plain_at(const GroupIndices& ng, double length_mm, double detuning);

PolarizationMatrix converter_at(const DeviceModel& model, double length_mm, double coupling_length,
                                double omega, double detuning) {
  // an undriven converter is just birefringent waveguide, flat model or not
  if (coupling_length == 0.0) return plain_at(model.ng, length_mm, detuning);
  PcSpec pc = model.pc;
  pc.length_mm = length_mm;
  pc.temperature_c = model.temperature_c;
  const double delta_l = model.frequency_dependent_pc ? pc_mismatch(pc, model.ng, omega) * length_mm * kMmToM : 0.0;
  const std::complex<double> mean_phase =
      std::polar(1.0, detuning * model.ng.mean() * length_mm * kMmToM / kSpeedOfLight);
  return mean_phase * coupled_mode_matrix(coupling_length, delta_l);
}

PolarizationMatrix plain_at(const GroupIndices& ng, double length_mm, double detuning) {
  PolarizationMatrix m = PolarizationMatrix::Zero();
  const double t = length_mm * kMmToM / kSpeedOfLight;
  m(0, 0) = std::polar(1.0, detuning * ng.h * t);
  m(1, 1) = std::polar(1.0, detuning * ng.v * t);
  return m;
}

double peak_coupling_length(double efficiency) { return std::asin(std::sqrt(std::clamp(efficiency, 0.0, 1.0))); }

}  // namespace

// ---------------------------------------------------------------------------

ElementTransfer ElementTransfer::constant(std::string name, const SpectralGrid& grid, const ModeMatrix& m) {
  return {std::move(name), std::vector<ModeMatrix>(grid.size(), m)};
}

ElementTransfer ElementTransfer::from_function(std::string name, const SpectralGrid& grid,
                                               const std::function<ModeMatrix(int)>& at_sample) {
  ElementTransfer t{std::move(name), {}};
  t.samples.reserve(grid.size());
  for (int k = 0; k < grid.size(); ++k) t.samples.push_back(at_sample(k));
  return t;
}

ElementTransfer ElementTransfer::diagonal(std::string name, const SpectralGrid& grid,
                                          const std::array<Eigen::ArrayXcd, kModeCount>& phases) {
  return from_function(std::move(name), grid, [&](int k) {
    ModeMatrix m = ModeMatrix::Zero();
    for (int i = 0; i < kModeCount; ++i) m(i, i) = phases[i][k];
    return m;
  });
}

TwoPhotonAmplitude::TwoPhotonAmplitude(const SpectralGrid& grid)
    : grid_(grid), amplitude_(grid.size(), ModeMatrix::Zero()) {}

double TwoPhotonAmplitude::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitude_) sum += a.squaredNorm();
  return sum * grid_.spacing();
}

TwoPhotonAmplitude build_source_state(const PmSpec& pm, const GroupIndices& ng, const SpectralGrid& grid,
                                      double temperature_c) {
  const double first_zero = 2.0 * kPi * kSpeedOfLight / (ng.difference() * pm.pdc_length_mm * kMmToM);
  const double shift =
      omega_from_nm(pm_center_vs_temperature(pm, Process::Pdc, temperature_c)) - grid.center_omega();
  if (std::abs(shift) + 2.0 * first_zero > grid.max_detuning())
    throw OutOfRangeError("spectral grid covers fewer than three sinc lobes of the PDC spectrum");

  const PdcSpectrum phi = pdc_amplitude(pm, ng, grid, temperature_c);
  TwoPhotonAmplitude state(grid);
  for (int k = 0; k < grid.size(); ++k) state[k](kUpperH, kUpperV) = phi.amplitude[k];
  return state;
}

TwoPhotonAmplitude apply_element(const TwoPhotonAmplitude& state, const ElementTransfer& transfer) {
  const SpectralGrid& grid = state.grid();
  if (static_cast<int>(transfer.samples.size()) != grid.size())
    throw Error("element '" + transfer.name + "' has " + std::to_string(transfer.samples.size()) +
                " samples, state has " + std::to_string(grid.size()));
  TwoPhotonAmplitude out(grid);
  for (int k = 0; k < grid.size(); ++k)
    out[k].noalias() = transfer.samples[k] * state[k] * transfer.samples[grid.mirror(k)].transpose();
  return out;
}

double coincidence_probability(const TwoPhotonAmplitude& state, const FilterSpec& filter, Coherence coherence) {
  const SpectralGrid& grid = state.grid();
  const Eigen::ArrayXcd f = filter_amplitude(filter, grid);
  double sum = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const int mk = grid.mirror(k);
    const double w = std::norm(f[k] * f[mk]);
    if (w == 0.0) continue;
    double s = 0.0;
    for (int mu : {kUpperH, kUpperV})
      for (int nu : {kLowerH, kLowerV}) {
        const auto direct = state[k](mu, nu);
        const auto exchanged = state[mk](nu, mu);
        s += coherence == Coherence::Coherent ? std::norm(direct + exchanged)
                                              : std::norm(direct) + std::norm(exchanged);
      }
    sum += w * s;
  }
  return sum * grid.spacing();
}

double detection_probability(const TwoPhotonAmplitude& state, const FilterSpec& filter) {
  const SpectralGrid& grid = state.grid();
  const Eigen::ArrayXcd f = filter_amplitude(filter, grid);
  double sum = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const int mk = grid.mirror(k);
    const double w = std::norm(f[k] * f[mk]);
    if (w == 0.0) continue;
    sum += w * (state[k] + state[mk].transpose()).squaredNorm();
  }
  return 0.5 * sum * grid.spacing();
}

// ---------------------------------------------------------------------------

Preset parse_preset(const std::string& s) {
  if (s == "ideal") return Preset::Ideal;
  if (s == "paper") return Preset::Paper;
  throw Error("unknown preset '" + s + "' (expected ideal or paper)");
}

std::string to_string(Preset p) { return p == Preset::Ideal ? "ideal" : "paper"; }

Device make_device(const ChipConfig& config, const DispersionModel& dispersion) {
  Device d;
  DeviceModel& m = d.model;
  m.layout = config.layout;
  m.pump_wavelength_nm = config.pump_wavelength_nm;
  m.temperature_c = config.temperature_c;
  m.ng = group_indices(dispersion, 2.0 * config.pump_wavelength_nm);
  m.pm = default_pm_spec(dispersion);
  m.pm.pdc_length_mm = config.layout.pdc_length_mm;
  m.pc.center_nm = m.pm.reference_wavelength_nm;
  m.pc.reference_temperature_c = m.pm.reference_temperature_c;
  m.pc.slope_nm_per_c = m.pm.pc_slope_nm_per_c;
  m.pbs_extinction_db = config.pbs_extinction_db;
  m.pc_efficiency = config.pc_efficiency();

  d.base_setting = config.setting;
  const BsSpec calibrated = calibrate_bs(m.bs, 0.5);
  d.base_setting.bs_u11 = calibrated.u11;
  d.base_setting.bs_u12 = calibrated.u12;
  d.filter = config.filter;
  return d;
}

void apply_preset(Device& device, Preset preset) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (preset) {
    case Preset::Ideal:
      device.model.pbs_extinction_db = inf;
      device.model.pc_efficiency = 1.0;
      device.base_setting.pc0_efficiency = 1.0;
      device.model.frequency_dependent_pc = false;
      break;
    case Preset::Paper:
      device.model.pbs_extinction_db = 17.0;
      device.model.pc_efficiency = 1.0 - std::pow(10.0, -20.0 / 10.0);
      device.base_setting.pc0_efficiency = 0.99;
      device.model.frequency_dependent_pc = true;
      break;
  }
}

SpectralGrid device_grid(const DeviceModel& model, double half_width_nm, int samples) {
  return SpectralGrid::for_pump(model.pump_wavelength_nm, half_width_nm, samples);
}

std::vector<ElementTransfer> chain_elements(const DeviceModel& model, const SwitchSetting& setting,
                                            const SpectralGrid& grid) {
  validate(model.layout, setting);
  const ChipLayout& L = model.layout;
  const GroupIndices& ng = model.ng;
  std::vector<ElementTransfer> chain;

  // The sinc amplitude is referenced to the PDC midpoint.
  chain.push_back(propagation("pdc_second_half", grid, ng, 0.5 * L.pdc_length_mm, true, true));

  const double pc0_kl = setting.pc0_on ? peak_coupling_length(setting.pc0_efficiency) : 0.0;
  chain.push_back(ElementTransfer::from_function("pc0", grid, [&](int k) {
    const double w = grid.center_omega() + grid.detuning(k);
    const PolarizationMatrix m = converter_at(model, L.pc0_length_mm, pc0_kl, w, grid.detuning(k));
    return on_polarizations(m, m);
  }));

  chain.push_back(propagation("pbs_section", grid, ng, L.pbs_length_mm, true, true));
  chain.push_back(ElementTransfer::constant(
      "pbs", grid, model.pbs_enabled ? pbs_transfer(model.pbs_extinction_db) : ModeMatrix::Identity()));

  const double seg_kl = peak_coupling_length(model.pc_efficiency) / 3.0;
  for (int s = 1; s <= L.segment_count; ++s) {
    const bool active = setting.triple && s >= *setting.triple && s < *setting.triple + 3;
    chain.push_back(ElementTransfer::from_function("segment_" + std::to_string(s), grid, [&](int k) {
      const double dw = grid.detuning(k);
      const PolarizationMatrix upper =
          active ? converter_at(model, L.segment_length_mm, seg_kl, grid.center_omega() + dw, dw)
                 : plain_at(ng, L.segment_length_mm, dw);
      return on_polarizations(upper, plain_at(ng, L.segment_length_mm, dw));
    }));
  }
  if (L.branch_mismatch_mm != 0.0)
    chain.push_back(propagation("branch_mismatch", grid, ng, std::abs(L.branch_mismatch_mm),
                                L.branch_mismatch_mm > 0.0, L.branch_mismatch_mm < 0.0));

  BsSpec bs = model.bs;
  bs.u11 = setting.bs_u11;
  bs.u12 = setting.bs_u12;
  const ModeMatrix bs_matrix = on_paths(bs_transfer(bs));
  chain.push_back(ElementTransfer::from_function("bs", grid, [&](int k) {
    const PolarizationMatrix p = plain_at(ng, L.bs_block_length_mm, grid.detuning(k));
    return ModeMatrix(bs_matrix * on_polarizations(p, p));
  }));
  return chain;
}

TwoPhotonAmplitude run_chain(const DeviceModel& model, const SwitchSetting& setting, const SpectralGrid& grid) {
  TwoPhotonAmplitude state = build_source_state(model.pm, model.ng, grid, model.temperature_c);
  for (const auto& element : chain_elements(model, setting, grid)) state = apply_element(state, element);
  return state;
}

// ---------------------------------------------------------------------------

std::vector<ScanPoint> hom_scan(const DeviceModel& model, const std::vector<SwitchSetting>& settings,
                                const SpectralGrid& grid, const FilterSpec& filter, Coherence coherence) {
  std::vector<ScanPoint> out;
  out.reserve(settings.size());
  int id = 1;
  for (const auto& s : settings) {
    ScanPoint p;
    p.setting_id = id++;
    p.setting = s;
    p.delay_ps = delay_schedule_ps(model.layout, model.ng, s);
    p.raw = coincidence_probability(run_chain(model, s, grid), filter, coherence);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ScanPoint> normalize_scan(std::vector<ScanPoint> scan, const ReferenceRule& rule) {
  std::vector<const ScanPoint*> refs;
  if (rule.setting_ids.empty()) {
    const ScanPoint* best = nullptr;
    for (const auto& p : scan)
      if (!p.setting.pc0_on && p.setting.triple && (!best || *p.setting.triple > *best->setting.triple))
        best = &p;
    if (best) refs.push_back(best);
  } else {
    for (int id : rule.setting_ids) {
      const auto it = std::find_if(scan.begin(), scan.end(), [&](const ScanPoint& p) { return p.setting_id == id; });
      if (it == scan.end()) throw Error("reference setting " + std::to_string(id) + " not in scan");
      refs.push_back(&*it);
    }
  }
  if (refs.empty()) throw Error("empty reference set for normalization");
  double mean = 0.0;
  for (const auto* r : refs) mean += r->raw;
  mean /= static_cast<double>(refs.size());
  if (!(mean > 0.0)) throw Error("reference coincidence probability is zero");
  for (auto& p : scan) p.normalized = p.raw / mean;
  return scan;
}

double visibility(const std::vector<ScanPoint>& scan) {
  if (scan.empty()) throw Error("visibility of an empty scan");
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& p : scan) {
    if (std::isnan(p.normalized)) throw Error("visibility needs a normalized scan");
    lowest = std::min(lowest, p.normalized);
  }
  return 1.0 - lowest;
}

// ---------------------------------------------------------------------------

std::string to_string(DipScenario s) {
  switch (s) {
    case DipScenario::Unfiltered: return "unfiltered";
    case DipScenario::Rectangular: return "rect_2.3nm";
    case DipScenario::SegmentedPcLorentz: return "segmented_pc_lorentz_1.2nm";
    case DipScenario::TwoPcsLorentz: return "two_pcs_lorentz_1.2nm";
  }
  return "";
}

std::vector<DipScenario> all_dip_scenarios() {
  return {DipScenario::Unfiltered, DipScenario::Rectangular, DipScenario::SegmentedPcLorentz,
          DipScenario::TwoPcsLorentz};
}

DipSetup dip_setup(DipScenario scenario, double center_nm) {
  DipSetup s;
  s.pc.center_nm = center_nm;
  s.pc = pc_with_efficiency(s.pc, 1.0);
  s.filter.center_nm = center_nm;
  switch (scenario) {
    case DipScenario::Unfiltered:
      break;
    case DipScenario::Rectangular:
      s.filter.shape = FilterShape::Rectangular;
      s.filter.width_nm = 2.3;
      break;
    case DipScenario::SegmentedPcLorentz:
      s.filter.shape = FilterShape::Lorentzian;
      s.filter.width_nm = 1.2;
      s.segmented_envelope = true;
      break;
    case DipScenario::TwoPcsLorentz:
      s.filter.shape = FilterShape::Lorentzian;
      s.filter.width_nm = 1.2;
      s.segmented_envelope = true;
      s.pc0_envelope = true;
      break;
  }
  return s;
}

SpectralGrid dip_grid(DipScenario scenario, double center_nm, int samples) {
  const double half_width = scenario == DipScenario::Unfiltered ? 160.0 : SpectralGrid::kDefaultHalfWidthNm;
  return SpectralGrid(center_nm, half_width, samples);
}

std::vector<double> dip_profile(const PmSpec& pm, const GroupIndices& ng, const SpectralGrid& grid,
                                const DipSetup& setup, const std::vector<double>& taus_ps,
                                double temperature_c) {
  const PdcSpectrum phi = pdc_amplitude(pm, ng, grid, temperature_c);
  auto conversion = [&](int k) { return pc_transfer(setup.pc, ng, grid.wavelength_nm(k))(1, 0); };

  // Both photons leave the converters in V: photon 1 in the upper, photon 2 in the lower input.
  TwoPhotonAmplitude source(grid);
  for (int k = 0; k < grid.size(); ++k) {
    const int mk = grid.mirror(k);
    std::complex<double> a = phi.amplitude[k];
    if (setup.pc0_envelope) a *= conversion(k) * conversion(mk);
    // The photon that ends up in the segmented branch: the born-V one if PC0 swapped them.
    if (setup.segmented_envelope) a *= conversion(setup.pc0_envelope ? mk : k);
    source[k](kUpperV, kLowerV) = a;
  }

  PathMatrix splitter;
  splitter << std::sqrt(0.5), std::complex<double>(0, -std::sqrt(0.5)), std::complex<double>(0, -std::sqrt(0.5)),
      std::sqrt(0.5);
  const ModeMatrix bs = on_paths(splitter);

  std::vector<double> out;
  out.reserve(taus_ps.size());
  for (double tau : taus_ps) {
    const ElementTransfer delay_then_split = ElementTransfer::from_function("delay_bs", grid, [&](int k) {
      ModeMatrix d = ModeMatrix::Identity();
      const auto phase = std::polar(1.0, grid.detuning(k) * tau / kSToPs);
      d(kUpperH, kUpperH) = phase;
      d(kUpperV, kUpperV) = phase;
      return ModeMatrix(bs * d);
    });
    const TwoPhotonAmplitude s = apply_element(source, delay_then_split);
    const double detected = detection_probability(s, setup.filter);
    out.push_back(detected > 0.0 ? coincidence_probability(s, setup.filter) / detected : 0.0);
  }
  return out;
}

}  // namespace eohom
