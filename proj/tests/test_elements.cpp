#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "eohom/elements.hpp"
#include "oracles.hpp"

using namespace eohom;

namespace {
const GroupIndices kNg = group_indices(default_dispersion());
const PmSpec kPm = default_pm_spec(default_dispersion());

double measured_fwhm(const std::function<double(double)>& f, double center, double span) {
  std::vector<double> x, y;
  for (int i = -20000; i <= 20000; ++i) {
    x.push_back(center + span * i / 20000.0);
    y.push_back(f(x.back()));
  }
  const auto peak = std::max_element(y.begin(), y.end()) - y.begin();
  const double half = 0.5 * y[peak];
  size_t l = peak, r = peak;
  while (y[l - 1] > half) --l;
  while (y[r + 1] > half) ++r;
  auto edge = [&](size_t i, size_t j) { return x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i]); };
  return edge(r, r + 1) - edge(l, l - 1);
}
}  // namespace

TEST_CASE("mode basis") {
  CHECK(mode_index(Path::Upper, Polarization::H) == 0);
  CHECK(mode_index(Path::Upper, Polarization::V) == 1);
  CHECK(mode_index(Path::Lower, Polarization::H) == 2);
  CHECK(mode_index(Path::Lower, Polarization::V) == 3);
  PathMatrix p;
  p << 1, 2, 3, 4;
  const ModeMatrix m = on_paths(p);
  CHECK(m(0, 2) == std::complex<double>(2));
  CHECK(m(1, 3) == std::complex<double>(2));
  CHECK(m(0, 1) == std::complex<double>(0));
}

TEST_CASE("coupled-mode matrix equals the exponential of its generator") {
  oracle::Gen gen(21);
  for (int i = 0; i < 300; ++i) {
    const double k = gen.uniform(-3, 3), d = gen.uniform(-5, 5);
    Eigen::Matrix2cd gen_m;
    gen_m << d, k, k, -d;
    const Eigen::Matrix2cd ref = (std::complex<double>(0, -1) * gen_m).exp();
    const Eigen::Matrix2cd m = coupled_mode_matrix(k, d);
    CHECK((m - ref).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(oracle::unitarity_error(m) < 1e-13);
  }
  const auto full = coupled_mode_matrix(0.5 * kPi, 0.0);
  CHECK(std::norm(full(1, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(full(0, 0)) < 1e-15);
}

TEST_CASE("PDC bandwidth against the sinc half-point") {
  const double a = kNg.difference() * 20.7e-3 / (2 * kSpeedOfLight);
  const double expected = oracle::fwhm_nm(oracle::sinc2_half_point(), a, 1551.7);
  const double w0 = omega_from_nm(1551.7);
  const double got = measured_fwhm(
      [&](double l) { return std::pow(pdc_phase_matching(kPm, kNg, w0, omega_from_nm(l) - w0, 43.6), 2); }, 1551.7, 5);
  CHECK(got == doctest::Approx(expected).epsilon(1e-3));
  CHECK(got == doctest::Approx(1.28).epsilon(0.01));
}

TEST_CASE("PDC amplitude on a grid is normalized and centred") {
  const SpectralGrid g(1551.7);
  const auto s = pdc_amplitude(kPm, kNg, g, 43.6);
  CHECK(s.amplitude.abs2().sum() * g.spacing() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(s.main_lobe_truncated);
  Eigen::Index peak;
  s.amplitude.abs().maxCoeff(&peak);
  CHECK(std::abs(g.detuning(int(peak))) <= g.spacing());
  // temperature shifts the centre along the tuning line
  CHECK(pm_center_vs_temperature(kPm, Process::Pdc, 53.6) == doctest::Approx(1551.7 - 1.5));
  CHECK(pm_center_vs_temperature(kPm, Process::Pc, 33.6) == doctest::Approx(1551.7 + 7.0));
  CHECK(pdc_amplitude(kPm, kNg, SpectralGrid(1551.7, 0.5, 256), 43.6).main_lobe_truncated);
}

TEST_CASE("SHG spectrum peaks at the degenerate wavelength") {
  Eigen::ArrayXd wl(3);
  wl << 1551.7, 1552.0, 1553.0;
  const auto s = shg_spectrum(kPm, wl, 43.6);
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] < 1.0);
  CHECK(kPm.shg_group_mismatch == doctest::Approx(0.0991).epsilon(0.01));
}

TEST_CASE("converter bandwidth against the coupled-mode half-point") {
  for (double len : {7.62, 15.24}) {
    PcSpec pc;
    pc.length_mm = len;
    pc = pc_with_efficiency(pc, 1.0);
    const double a = kNg.difference() * len * 1e-3 / (2 * kSpeedOfLight);
    const double expected = oracle::fwhm_nm(oracle::converter_half_point(), a, 1551.7);
    const double got = measured_fwhm([&](double l) { return pc_conversion_efficiency(pc, kNg, l); }, 1551.7, 10);
    CHECK(got == doctest::Approx(expected).epsilon(1e-3));
  }
  PcSpec pc = pc_with_efficiency(PcSpec{}, 1.0);
  CHECK(pc.voltage_v == doctest::Approx(pc.full_conversion_voltage()));
  CHECK(pc.full_conversion_voltage() == doctest::Approx(15.0 / 0.762));
  CHECK(pc_conversion_efficiency(pc, kNg, 1551.7) == doctest::Approx(1.0));
  pc = pc_with_efficiency(pc, 0.99);
  CHECK(pc_conversion_efficiency(pc, kNg, 1551.7) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK_THROWS_AS(pc_with_efficiency(pc, 1.5), OutOfRangeError);

  // tuning moves the transmission dip
  PcSpec warm = pc_with_efficiency(PcSpec{}, 1.0);
  warm.temperature_c = 44.6;
  CHECK(warm.phase_matched_wavelength_nm() == doctest::Approx(1551.0));
  CHECK(pc_conversion_efficiency(warm, kNg, 1551.0) == doctest::Approx(1.0));
}

TEST_CASE("bulk converter phase matching lies in the telecom band") {
  const double l = bulk_pc_phase_matched_wavelength_nm(congruent_linbo3(), 21.4);
  CHECK(l > 1500);
  CHECK(l < 1650);
  const auto m = congruent_linbo3();
  const double dn = refractive_index(m, Polarization::H, l) - refractive_index(m, Polarization::V, l);
  CHECK(dn / (l * 1e-3) == doctest::Approx(1.0 / 21.4).epsilon(1e-9));
}

TEST_CASE("PBS routing and leakage") {
  const ModeMatrix ideal = pbs_transfer(std::numeric_limits<double>::infinity());
  CHECK(std::abs(ideal(mode_index(Path::Upper, Polarization::H), mode_index(Path::Upper, Polarization::H))) == 1.0);
  CHECK(std::abs(ideal(mode_index(Path::Lower, Polarization::V), mode_index(Path::Upper, Polarization::V))) == 1.0);
  oracle::Gen gen(22);
  for (int i = 0; i < 100; ++i) {
    const double ext = gen.uniform(5, 40);
    const ModeMatrix m = pbs_transfer(ext);
    CHECK(oracle::unitarity_error(m) < 1e-14);
    const double leak = std::pow(10.0, -ext / 10);
    CHECK(std::norm(m(mode_index(Path::Lower, Polarization::H), mode_index(Path::Upper, Polarization::H))) ==
          doctest::Approx(leak).epsilon(1e-12));
    CHECK(std::norm(m(mode_index(Path::Upper, Polarization::V), mode_index(Path::Upper, Polarization::V))) ==
          doctest::Approx(leak).epsilon(1e-12));
  }
}

TEST_CASE("delta-beta reversal beam splitter") {
  BsSpec bs;
  CHECK(bs_cross_power(bs) == doctest::Approx(1.0));  // unbiased: full cross
  const BsSpec half = calibrate_bs(bs, 0.5);
  CHECK(half.u11 == half.u12);
  CHECK(bs_cross_power(half) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(oracle::unitarity_error(bs_transfer(half)) < 1e-14);
  const BsSpec sixty = calibrate_bs(bs, 0.4);
  CHECK(bs_cross_power(sixty) == doctest::Approx(0.4).epsilon(1e-12));

  // opposite voltages on the reversed electrode give one uniform section
  oracle::Gen gen(23);
  for (int i = 0; i < 50; ++i) {
    BsSpec t;
    t.u11 = gen.uniform(-20, 20);
    t.u12 = -t.u11;
    const double d = t.detuning_per_volt_mm * t.u11 * 2 * t.section_length_mm;
    const auto single = coupled_mode_matrix(t.coupling_per_mm * 2 * t.section_length_mm, d);
    CHECK((bs_transfer(t) - single).cwiseAbs().maxCoeff() < 1e-12);
  }
  // weak coupling cannot reach 50:50
  BsSpec weak;
  weak.coupling_per_mm = 0.01;
  CHECK_THROWS_AS(calibrate_bs(weak, 0.5), OutOfRangeError);
}

TEST_CASE("propagation phases add") {
  const SpectralGrid g(1551.7, 6, 512);
  const auto a = propagation_transfer(Polarization::H, 3.0, kNg, g);
  const auto b = propagation_transfer(Polarization::H, 4.5, kNg, g);
  const auto ab = propagation_transfer(Polarization::H, 7.5, kNg, g);
  CHECK(((a * b) - ab).abs().maxCoeff() < 1e-12);
  CHECK((a.abs() - 1.0).abs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(propagation_transfer(Polarization::V, -1, kNg, g), OutOfRangeError);
}

TEST_CASE("filters") {
  const FilterSpec rect = parse_filter("rect:2.3");
  CHECK(rect.shape == FilterShape::Rectangular);
  CHECK(filter_amplitude(rect, 1551.7 + 1.14) == 1.0);
  CHECK(filter_amplitude(rect, 1551.7 + 1.16) == 0.0);
  const FilterSpec lor = parse_filter("lorentzian:1.2");
  CHECK(std::pow(filter_amplitude(lor, 1551.7 + 0.6), 2) == doctest::Approx(0.5));
  CHECK(filter_amplitude(lor, 1551.7) == 1.0);
  CHECK(filter_amplitude(parse_filter("none"), 1400.0) == 1.0);
  CHECK(to_string(lor) == "lorentz:1.2");
  CHECK_THROWS_AS(parse_filter("gauss:1"), Error);
  CHECK_THROWS_AS(parse_filter("rect:"), Error);
  CHECK_THROWS_AS(parse_filter("rect:-1"), Error);
  CHECK_THROWS_AS(parse_filter("rect:1x"), Error);
}
