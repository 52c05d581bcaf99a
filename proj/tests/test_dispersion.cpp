#include "doctest.h"
#include "eohom/dispersion.hpp"
#include "oracles.hpp"

using namespace eohom;

namespace {
const DispersionModel kBulk = congruent_linbo3();
const DispersionModel kModel = default_dispersion();
const oracle::Sellmeier kO{kBulk.sellmeier_ordinary};
const oracle::Sellmeier kE{kBulk.sellmeier_extraordinary};
}  // namespace

TEST_CASE("refractive index matches the Sellmeier form") {
  oracle::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const double l = gen.uniform(500, 3000);
    CHECK(refractive_index(kBulk, Polarization::H, l) == doctest::Approx(double(kO.n(l / 1000.0L))).epsilon(1e-13));
    CHECK(refractive_index(kBulk, Polarization::V, l) == doctest::Approx(double(kE.n(l / 1000.0L))).epsilon(1e-13));
  }
  CHECK(refractive_index(kBulk, Polarization::H, 1551.7) == doctest::Approx(2.2111).epsilon(1e-4));
  CHECK(refractive_index(kBulk, Polarization::V, 1551.7) == doctest::Approx(2.1375).epsilon(1e-4));
}

TEST_CASE("group index against the analytic derivative") {
  oracle::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const double l = gen.uniform(700, 2500);
    CHECK(group_index(kBulk, Polarization::H, l) == doctest::Approx(double(kO.group_index(l / 1000.0L))).epsilon(1e-8));
    CHECK(group_index(kBulk, Polarization::V, l) == doctest::Approx(double(kE.group_index(l / 1000.0L))).epsilon(1e-8));
  }
}

TEST_CASE("calibration pins the group-index difference") {
  const Calibration cal = calibrate(kBulk);
  CHECK(cal.uncalibrated_difference == doctest::Approx(0.08135).epsilon(1e-3));
  CHECK(cal.residual == doctest::Approx(cal.uncalibrated_difference - 0.0805));
  CHECK(group_index_difference(cal.model, 1551.7) == doctest::Approx(0.0805).epsilon(1e-12));
  // symmetric offsets leave the mean untouched
  const double mean_raw = 0.5 * (group_index(kBulk, Polarization::H, 1551.7) + group_index(kBulk, Polarization::V, 1551.7));
  const double mean_cal =
      0.5 * (group_index(cal.model, Polarization::H, 1551.7) + group_index(cal.model, Polarization::V, 1551.7));
  CHECK(mean_cal == doctest::Approx(mean_raw).epsilon(1e-14));
}

TEST_CASE("walk-off") {
  CHECK(walk_off_time_ps(kModel, 2.54, 1551.7) == doctest::Approx(0.682).epsilon(0.005 / 0.682));
  CHECK(walk_off_time_ps(kModel, 20.7, 1551.7) == doctest::Approx(5.558).epsilon(1e-3));
  CHECK(walk_off_time_ps(kModel, 0.0, 1551.7) == 0.0);
  CHECK_THROWS_AS(walk_off_time_ps(kModel, -1.0, 1551.7), OutOfRangeError);

  oracle::Gen gen(13);
  for (int i = 0; i < 100; ++i) {
    const double a = gen.uniform(0, 30), b = gen.uniform(0, 30);
    CHECK(walk_off_time_ps(kModel, a + b, 1551.7) ==
          doctest::Approx(walk_off_time_ps(kModel, a, 1551.7) + walk_off_time_ps(kModel, b, 1551.7)).epsilon(1e-12));
  }
}

TEST_CASE("spectral phase Taylor terms") {
  const auto t = spectral_phase_taylor(kModel, Polarization::H, Polarization::V, 7.62, 1551.7, 2);
  REQUIRE(t.size() == 3);
  CHECK(t[1] * 1e12 == doctest::Approx(1.023).epsilon(2e-3));
  CHECK(t[2] * 1e30 == doctest::Approx(converter_gdd_fs2(kModel, 7.62, 1551.7)).epsilon(1e-12));
  CHECK(spectral_phase_taylor(kModel, Polarization::H, Polarization::V, 7.62, 1551.7, 0).size() == 1);
  CHECK_THROWS_AS(spectral_phase_taylor(kModel, Polarization::H, Polarization::V, 7.62, 1551.7, 3), OutOfRangeError);
  CHECK_THROWS_AS(spectral_phase_taylor(kModel, Polarization::H, Polarization::V, -1, 1551.7, 1), OutOfRangeError);
  // swapping the polarizations flips every term
  const auto s = spectral_phase_taylor(kModel, Polarization::V, Polarization::H, 7.62, 1551.7, 2);
  for (int i = 0; i < 3; ++i) CHECK(s[i] == doctest::Approx(-t[i]));
}

TEST_CASE("converter GDD against a five-point stencil of the phase") {
  const double ref = double(oracle::converter_gdd_s2(kO, kE, 7.5e-3L, 1550.0L)) * 1e30;
  CHECK(converter_gdd_fs2(kModel, 7.5, 1550.0) == doctest::Approx(ref).epsilon(1e-3));
  CHECK(std::abs(ref) == doctest::Approx(47.6).epsilon(0.01));
  // linear in length
  CHECK(converter_gdd_fs2(kModel, 15.0, 1550.0) == doctest::Approx(2 * converter_gdd_fs2(kModel, 7.5, 1550.0)));
  CHECK_THROWS_AS(converter_gdd_fs2(kModel, 0.0, 1550.0), OutOfRangeError);
}

TEST_CASE("derivative step and wavelength validity") {
  CHECK_THROWS_AS(group_index(kModel, Polarization::H, 1551.7, 0.0), OutOfRangeError);
  CHECK_THROWS_AS(group_index(kModel, Polarization::H, 1551.7, 20.0), OutOfRangeError);
  CHECK_THROWS_AS(refractive_index(kModel, Polarization::H, 100.0), OutOfRangeError);
  CHECK_THROWS_AS(refractive_index(kModel, Polarization::H, 9000.0), OutOfRangeError);
  // the result barely depends on the step inside the valid range
  CHECK(group_index(kModel, Polarization::H, 1551.7, 0.01) ==
        doctest::Approx(group_index(kModel, Polarization::H, 1551.7, 1.0)).epsilon(1e-7));
}

TEST_CASE("coefficient file parsing") {
  const auto m = parse_dispersion(
      "# test\nsellmeier_o = 2.6734, 0.01764, 1.2290, 0.05914, 12.614, 474.60\n"
      "sellmeier_e = 2.9804, 0.02047, 0.5981, 0.0666, 8.9543, 416.08\nng_offset_h = 0.001\n"
      "valid_range_nm = 500, 3000\n");
  CHECK(m.sellmeier_ordinary == kBulk.sellmeier_ordinary);
  CHECK(m.ng_offset_h == 0.001);
  CHECK(m.min_wavelength_nm == 500.0);
  CHECK_THROWS_AS(refractive_index(m, Polarization::V, 450.0), OutOfRangeError);

  try {
    parse_dispersion("sellmeier_o = 1, 2\nbogus = 3\n", "x.disp");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("x.disp") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_dispersion("sellmeier_o = 1, 2, 3\nsellmeier_e = 1, 2\n"), SemanticError);
  CHECK_THROWS_AS(parse_dispersion("sellmeier_o = 1, 2\n"), SemanticError);
  CHECK_THROWS_AS(parse_dispersion("sellmeier_o = 1, x\nsellmeier_e = 1, 2\n"), ParseError);
  CHECK_NOTHROW(load_dispersion(EOHOM_DATA_DIR "/linbo3_congruent.disp"));
  CHECK_THROWS_AS(load_dispersion("/nonexistent/file.disp"), Error);
}
