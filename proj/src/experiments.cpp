#include "eohom/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "eohom/rates.hpp"
#include "eohom/report.hpp"

namespace eohom {

namespace fs = std::filesystem;

Pc0Selection parse_pc0_selection(const std::string& s) {
  if (s == "on") return Pc0Selection::On;
  if (s == "off") return Pc0Selection::Off;
  if (s == "both") return Pc0Selection::Both;
  throw Error("unknown --pc0 value '" + s + "' (expected on, off or both)");
}

DispersionModel load_dispersion_model(const RunConfig& config) {
  return config.dispersion_path ? calibrate(load_dispersion(*config.dispersion_path)).model : default_dispersion();
}

Device load_device(const RunConfig& config) {
  const ChipConfig chip = config.layout_path ? load_layout(*config.layout_path) : ChipConfig{};
  Device d = make_device(chip, load_dispersion_model(config));
  if (config.preset) apply_preset(d, *config.preset);
  if (config.filter) {
    d.filter = parse_filter(*config.filter);
    d.filter.center_nm = 2.0 * d.model.pump_wavelength_nm;
  }
  return d;
}

double width_at_level(const std::vector<double>& x, const std::vector<double>& y, double level, bool dip) {
  if (x.size() != y.size() || x.size() < 3) throw Error("width_at_level needs matching arrays of >= 3 points");
  const auto ext = dip ? std::min_element(y.begin(), y.end()) : std::max_element(y.begin(), y.end());
  const auto peak = static_cast<size_t>(ext - y.begin());
  auto inside = [&](size_t i) { return dip ? y[i] < level : y[i] > level; };
  if (!inside(peak)) return std::numeric_limits<double>::quiet_NaN();
  auto edge = [&](size_t i, size_t j) {  // i inside, j outside
    return x[i] + (level - y[i]) * (x[j] - x[i]) / (y[j] - y[i]);
  };
  size_t l = peak;
  while (l > 0 && inside(l - 1)) --l;
  size_t r = peak;
  while (r + 1 < y.size() && inside(r + 1)) ++r;
  if (l == 0 || r + 1 == y.size()) return std::numeric_limits<double>::quiet_NaN();
  return edge(r, r + 1) - edge(l, l - 1);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error("line fit needs at least two points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  if (sxx == 0.0) throw Error("line fit with constant x");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::pair<double, double> intersect(const LineFit& a, const LineFit& b) {
  if (a.slope == b.slope) throw Error("parallel lines do not intersect");
  const double x = (b.intercept - a.intercept) / (a.slope - b.slope);
  return {x, a.slope * x + a.intercept};
}

namespace {

std::string out_path(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return (fs::path(c.out_dir) / name).string();
}

void emit(CommandResult& r, const RunConfig& c, const std::string& name, const std::string& content) {
  const std::string p = out_path(c, name);
  write_text_file(p, content);
  r.files.push_back(p);
}

bool selected(Pc0Selection sel, bool pc0_on) {
  return sel == Pc0Selection::Both || (sel == Pc0Selection::On) == pc0_on;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------

CommandResult cmd_delay_schedule(const RunConfig& config) {
  const Device d = load_device(config);
  const auto& layout = d.model.layout;
  const double step_ps = d.model.ng.difference() * layout.segment_length_mm * kMmToM / kSpeedOfLight * kSToPs;

  CsvTable csv({"setting_id", "pc0_on", "triple", "delay_ps", "synchronized"});
  Series off{"PC0 off", {}, {}, true}, on{"PC0 on", {}, {}, true};
  int id = 1;
  int rows = 0;
  std::string sync_label;
  for (const auto& s : enumerate_settings(layout, d.base_setting)) {
    const int sid = id++;
    if (!selected(config.pc0, s.pc0_on)) continue;
    const double delay = delay_schedule_ps(layout, d.model.ng, s);
    const bool sync = std::abs(delay) < 0.5 * step_ps;
    if (sync) sync_label = s.label();
    csv.add_row({std::to_string(sid), s.pc0_on ? "1" : "0", std::to_string(*s.triple), format_number(delay),
                 sync ? "1" : "0"});
    (s.pc0_on ? on : off).x.push_back(*s.triple);
    (s.pc0_on ? on : off).y.push_back(delay);
    ++rows;
  }

  CommandResult r;
  emit(r, config, "delays.csv", csv.str());
  if (config.svg) {
    Plot p{"Delay between the photons at the BS", "triple index m (PC m, m+1, m+2)", "delay (ps)", {}, {0.0}, {}, {},
           {}};
    if (!off.x.empty()) p.series.push_back(off);
    if (!on.x.empty()) p.series.push_back(on);
    emit(r, config, "delays.svg", render_svg(p));
  }
  r.summary = std::to_string(rows) + " settings, walk-off per segment " + fmt(step_ps) + " ps" +
              (sync_label.empty() ? ", no synchronized setting" : ", synchronized at " + sync_label) + "\n";
  return r;
}

CommandResult cmd_hom_scan(const RunConfig& config) {
  const Device d = load_device(config);
  const SpectralGrid grid = device_grid(d.model, config.grid_halfwidth_nm.value_or(SpectralGrid::kDefaultHalfWidthNm),
                                        config.grid_samples.value_or(SpectralGrid::kDefaultSamples));
  const auto settings = enumerate_settings(d.model.layout, d.base_setting);
  const auto scan = normalize_scan(hom_scan(d.model, settings, grid, d.filter));

  CsvTable csv({"setting_id", "pc0_on", "triple", "delay_ps", "raw", "normalized"});
  Series off_t{"PC0 off", {}, {}, true}, on_t{"PC0 on", {}, {}, true};
  Series off_d{"PC0 off", {}, {}, true}, on_d{"PC0 on", {}, {}, true};
  std::vector<ScanPoint> shown;
  for (const auto& p : scan) {
    if (!selected(config.pc0, p.setting.pc0_on)) continue;
    shown.push_back(p);
    csv.add_row({std::to_string(p.setting_id), p.setting.pc0_on ? "1" : "0", std::to_string(*p.setting.triple),
                 format_number(p.delay_ps), format_number(p.raw), format_number(p.normalized)});
    auto& t = p.setting.pc0_on ? on_t : off_t;
    auto& dd = p.setting.pc0_on ? on_d : off_d;
    t.x.push_back(*p.setting.triple);
    t.y.push_back(p.normalized);
    dd.x.push_back(p.delay_ps);
    dd.y.push_back(p.normalized);
  }

  CommandResult r;
  emit(r, config, "scan.csv", csv.str());
  if (config.svg) {
    Plot pt{"Normalized coincidences vs driven triple", "triple index m", "normalized coincidence", {}, {1.0}, {}, 0.0,
            {}};
    Plot pd{"Normalized coincidences vs delay", "delay (ps)", "normalized coincidence", {}, {1.0}, {0.0}, 0.0, {}};
    for (auto* s : {&off_t, &on_t})
      if (!s->x.empty()) pt.series.push_back(*s);
    for (auto* s : {&off_d, &on_d}) {
      if (s->x.empty()) continue;
      // polyline in delay order
      std::vector<size_t> idx(s->x.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return s->x[a] < s->x[b]; });
      Series sorted{s->name, {}, {}, true};
      for (size_t i : idx) sorted.x.push_back(s->x[i]), sorted.y.push_back(s->y[i]);
      pd.series.push_back(sorted);
    }
    emit(r, config, "scan_vs_triple.svg", render_svg(pt));
    emit(r, config, "scan_vs_delay.svg", render_svg(pd));
  }

  std::ostringstream sum;
  const auto lowest = std::min_element(scan.begin(), scan.end(),
                                       [](const ScanPoint& a, const ScanPoint& b) { return a.normalized < b.normalized; });
  double off_mean = 0.0;
  int off_n = 0;
  for (const auto& p : scan)
    if (!p.setting.pc0_on) off_mean += p.normalized, ++off_n;
  sum << "filter " << to_string(d.filter) << ", grid " << grid.size() << " samples +/- "
      << fmt(grid.center_wavelength_nm() - nm_from_omega(grid.center_omega() + grid.max_detuning()), 6) << " nm\n";
  sum << "minimum " << format_number(lowest->normalized) << " at " << lowest->setting.label() << " (delay "
      << fmt(lowest->delay_ps) << " ps)\n";
  if (off_n) sum << "PC0-off mean " << format_number(off_mean / off_n) << "\n";
  sum << "visibility " << fmt(100.0 * visibility(scan)) << " %\n";
  r.summary = sum.str();
  emit(r, config, "scan_summary.txt", r.summary);
  return r;
}

CommandResult cmd_dip(const RunConfig& config) {
  const Device d = load_device(config);
  const double center = 2.0 * d.model.pump_wavelength_nm;
  std::vector<double> taus;
  for (int i = -200; i <= 200; ++i) taus.push_back(0.05 * i);

  CsvTable csv({"tau_ps", "probability", "scenario"});
  Plot plot{"Coincidence probability vs relative delay", "relative delay tau (ps)", "coincidence probability", {},
            {0.5}, {}, 0.0, {}};
  std::ostringstream sum;
  for (DipScenario sc : all_dip_scenarios()) {
    const int n = config.grid_samples.value_or(SpectralGrid::kDefaultSamples);
    const SpectralGrid grid = config.grid_halfwidth_nm ? SpectralGrid(center, *config.grid_halfwidth_nm, n)
                                                       : dip_grid(sc, center, n);
    DipSetup setup = dip_setup(sc, center);
    setup.pc.length_mm = d.model.layout.pc0_length_mm;
    setup.pc = pc_with_efficiency(setup.pc, 1.0);
    const auto p = dip_profile(d.model.pm, d.model.ng, grid, setup, taus, d.model.temperature_c);
    for (size_t i = 0; i < taus.size(); ++i)
      csv.add_row({format_number(taus[i]), format_number(p[i]), to_string(sc)});
    plot.series.push_back({to_string(sc), taus, p, false});
    sum << to_string(sc) << ": P(0) " << format_number(p[taus.size() / 2]) << ", max "
        << format_number(*std::max_element(p.begin(), p.end())) << ", FWHM "
        << fmt(width_at_level(taus, p, 0.25, true)) << " ps\n";
  }
  CommandResult r;
  emit(r, config, "dip.csv", csv.str());
  if (config.svg) emit(r, config, "dip.svg", render_svg(plot));
  r.summary = sum.str();
  return r;
}

CommandResult cmd_phasematch(const RunConfig& config) {
  const Device d = load_device(config);
  const DispersionModel disp = load_dispersion_model(config);
  const PmSpec& pm = d.model.pm;
  const GroupIndices& ng = d.model.ng;
  const double T = d.model.temperature_c;
  const double center = 2.0 * d.model.pump_wavelength_nm;
  CommandResult r;

  // SHG and PDC spectra
  std::vector<double> wl;
  for (int i = -1000; i <= 1000; ++i) wl.push_back(center + 0.005 * i);
  const Eigen::ArrayXd wl_arr = Eigen::Map<const Eigen::ArrayXd>(wl.data(), static_cast<Eigen::Index>(wl.size()));
  const Eigen::ArrayXd shg = shg_spectrum(pm, wl_arr, T);
  std::vector<double> pdc(wl.size());
  const double w0 = omega_from_nm(center);
  for (size_t i = 0; i < wl.size(); ++i) {
    const double a = pdc_phase_matching(pm, ng, w0, omega_from_nm(wl[i]) - w0, T);
    pdc[i] = a * a;
  }
  CsvTable spectra({"wavelength_nm", "shg", "pdc_intensity"});
  for (size_t i = 0; i < wl.size(); ++i)
    spectra.add_row({format_number(wl[i]), format_number(shg[static_cast<Eigen::Index>(i)]), format_number(pdc[i])});
  emit(r, config, "spectra.csv", spectra.str());
  const double pdc_fwhm = width_at_level(wl, pdc, 0.5);
  const std::vector<double> shg_v(shg.data(), shg.data() + shg.size());
  const double shg_fwhm = width_at_level(wl, shg_v, 0.5);

  // PC transmission behind a polarizer for several drive voltages
  PcSpec pc = d.model.pc;
  pc.length_mm = d.model.layout.pc0_length_mm;
  pc.temperature_c = T;
  const double u_full = pc.full_conversion_voltage();
  CsvTable trans({"wavelength_nm", "voltage_v", "transmission"});
  Plot pc_plot{"PC transmission behind a polarizer", "wavelength (nm)", "transmission", {}, {}, {}, 0.0, 1.05};
  double pc_fwhm = std::numeric_limits<double>::quiet_NaN();
  double depth = 1.0;
  for (double frac : {0.25, 0.5, 0.75, 1.0}) {
    pc.voltage_v = frac * u_full;
    const Eigen::ArrayXd t = pc_transmission_spectrum(pc, ng, wl_arr);
    std::vector<double> tv(t.data(), t.data() + t.size());
    for (size_t i = 0; i < wl.size(); ++i)
      trans.add_row({format_number(wl[i]), format_number(pc.voltage_v), format_number(tv[i])});
    pc_plot.series.push_back({"U = " + fmt(pc.voltage_v) + " V", wl, tv, false});
    if (frac == 1.0) {
      std::vector<double> conv(tv.size());
      for (size_t i = 0; i < tv.size(); ++i) conv[i] = 1.0 - tv[i];
      pc_fwhm = width_at_level(wl, conv, 0.5);
      depth = *std::min_element(tv.begin(), tv.end());
    }
  }
  emit(r, config, "pc_transmission.csv", trans.str());

  // temperature tuning lines
  CsvTable tuning({"temperature_c", "pdc_center_nm", "pc_center_nm"});
  std::vector<double> temps, pdc_c, pc_c;
  for (int i = 0; i <= 100; ++i) {
    const double t = 20.0 + 0.5 * i;
    temps.push_back(t);
    pdc_c.push_back(pm_center_vs_temperature(pm, Process::Pdc, t));
    pc_c.push_back(pm_center_vs_temperature(pm, Process::Pc, t));
    tuning.add_row({format_number(t), format_number(pdc_c.back()), format_number(pc_c.back())});
  }
  emit(r, config, "tuning.csv", tuning.str());
  const LineFit pdc_fit = fit_line(temps, pdc_c);
  const LineFit pc_fit = fit_line(temps, pc_c);
  const auto [cross_t, cross_wl] = intersect(pdc_fit, pc_fit);

  if (config.svg) {
    emit(r, config, "spectra.svg",
         render_svg({"SHG and PDC phase matching", "fundamental / signal wavelength (nm)", "normalized intensity",
                     {{"SHG", wl, shg_v, false}, {"PDC", wl, pdc, false}}, {0.5}, {center}, 0.0, 1.05}));
    emit(r, config, "pc_transmission.svg", render_svg(pc_plot));
    emit(r, config, "tuning.svg",
         render_svg({"Temperature tuning", "temperature (C)", "phase-matched wavelength (nm)",
                     {{"PDC", temps, pdc_c, false}, {"PC", temps, pc_c, false}}, {cross_wl}, {cross_t}, {}, {}}));
  }

  std::ostringstream s;
  s.precision(9);
  s << "crossing_temperature_c = " << cross_t << "\n";
  s << "crossing_wavelength_nm = " << cross_wl << "\n";
  s << "pdc_slope_nm_per_c = " << pdc_fit.slope << "\n";
  s << "pc_slope_nm_per_c = " << pc_fit.slope << "\n";
  s << "shg_fwhm_nm = " << shg_fwhm << "\n";
  s << "pdc_fwhm_nm = " << pdc_fwhm << "\n";
  s << "pc_fwhm_nm = " << pc_fwhm << "\n";
  s << "pdc_to_pc_fwhm_ratio = " << pdc_fwhm / pc_fwhm << "\n";
  s << "pc_full_conversion_voltage_v = " << u_full << "\n";
  s << "pc_transmission_minimum_at_full_voltage = " << depth << "\n";
  s << "group_index_h = " << ng.h << "\n";
  s << "group_index_v = " << ng.v << "\n";
  s << "bulk_pc_phase_matched_wavelength_nm = " << bulk_pc_phase_matched_wavelength_nm(disp, pc.poling_period_um)
    << " (poling period " << pc.poling_period_um << " um)\n";
  r.summary = s.str();
  emit(r, config, "phasematch.txt", r.summary);
  return r;
}

CommandResult cmd_rates(const RunConfig& config) {
  constexpr double kQuotedLossDb = 11.0;
  constexpr double kSingles = 2000.0, kCoincidences = 100.0;
  const LossBudget budget = setup_loss_budget();
  const LossTotal setup_total = total_loss(budget);
  const double klyshko = klyshko_efficiency(kSingles, kCoincidences);
  const SourceSpec source;
  const ExpectedRates er = expected_rates(source, klyshko, klyshko);

  CsvTable csv({"quantity", "value", "unit"});
  for (const auto& item : budget.items) csv.add_row({"loss: " + item.label, format_number(item.db), "dB"});
  csv.add_row({"setup loss total", format_number(setup_total.db), "dB"});
  csv.add_row({"setup transmission", format_number(setup_total.transmission), "1"});
  csv.add_row({"quoted total loss", format_number(kQuotedLossDb), "dB"});
  csv.add_row({"quoted total transmission", format_number(db_to_transmission(kQuotedLossDb)), "1"});
  csv.add_row({"measured singles", format_number(kSingles), "Hz"});
  csv.add_row({"measured coincidences", format_number(kCoincidences), "Hz"});
  csv.add_row({"klyshko efficiency", format_number(klyshko), "1"});
  csv.add_row({"brightness", format_number(source.brightness), "pairs/(s mW nm)"});
  csv.add_row({"pump power", format_number(source.pump_power_mw), "mW"});
  csv.add_row({"bandwidth", format_number(source.bandwidth_nm), "nm"});
  csv.add_row({"expected pairs", format_number(er.pairs_hz), "Hz"});
  csv.add_row({"expected singles per arm", format_number(er.singles1_hz), "Hz"});
  csv.add_row({"expected coincidences", format_number(er.coincidences_hz), "Hz"});

  CommandResult r;
  emit(r, config, "rates.csv", csv.str());
  r.summary = aligned_table(csv) + "\nnote: " + reconciliation_note(kQuotedLossDb, klyshko) + "\n";
  emit(r, config, "rates.txt", r.summary);
  return r;
}

CommandResult run_command(const RunConfig& config) {
  if (config.command == "delays") return cmd_delay_schedule(config);
  if (config.command == "hom-scan") return cmd_hom_scan(config);
  if (config.command == "dip") return cmd_dip(config);
  if (config.command == "phasematch") return cmd_phasematch(config);
  if (config.command == "rates") return cmd_rates(config);
  throw Error("unknown command '" + config.command + "'");
}

}  // namespace eohom
