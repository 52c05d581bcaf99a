#include "doctest.h"
#include "eohom/chip.hpp"
#include "oracles.hpp"

using namespace eohom;

namespace {
const GroupIndices kNg = group_indices(default_dispersion());
}

TEST_CASE("layout defaults") {
  const ChipConfig c = parse_layout("");
  CHECK(c.layout.pdc_length_mm == 20.7);
  CHECK(c.layout.segment_count == 10);
  CHECK(c.layout.triple_count() == 8);
  CHECK(c.layout.total_length_mm() == doctest::Approx(20.7 + 7.62 + 4.0 + 10 * 2.54 + 13.1));
  CHECK(c.layout.total_length_mm() > 70.0);
  CHECK(c.setting.triple == 2);
  CHECK(std::isinf(c.pbs_extinction_db));
  CHECK(c.pc_efficiency() == 1.0);
  CHECK(c.filter.center_nm == doctest::Approx(1551.7));
}

TEST_CASE("layout parsing") {
  const ChipConfig c = parse_layout(
      "pdc_length_mm = 10\n# comment\ndisabled_segments = 2, 3\npc_conversion_db = 20\n"
      "filter_shape = lorentzian\nfilter_width_nm = 1.2\npump_wavelength_nm = 780\n");
  CHECK(c.layout.pdc_length_mm == 10);
  CHECK(c.setting.disabled_segments == std::set<int>{2, 3});
  CHECK(c.setting.triple == 4);  // triples 1..3 touch a disabled segment
  CHECK(c.pc_efficiency() == doctest::Approx(0.99));
  CHECK(c.filter.shape == FilterShape::Lorentzian);
  CHECK(c.filter.center_nm == doctest::Approx(1560.0));

  try {
    parse_layout("pdc_length_mm = 20\nsegmant_count = 3\n", "chip.layout");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("chip.layout:2") != std::string::npos);
  }
  try {
    parse_layout("segment_count = 2\n");
    FAIL("expected a semantic error");
  } catch (const SemanticError& e) {
    CHECK(e.field() == "segment_count");
  }
  CHECK_THROWS_AS(parse_layout("pdc_length_mm = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_layout("pdc_length_mm = -1\n"), SemanticError);
  CHECK_THROWS_AS(parse_layout("filter_shape = rect\n"), SemanticError);
  CHECK_THROWS_AS(parse_layout("filter_shape = gauss\n"), ParseError);
  CHECK_THROWS_AS(parse_layout("disabled_segments = 11\n"), SemanticError);
  CHECK_THROWS_AS(parse_layout("a = 1\na = 2\n"), ParseError);
  CHECK_THROWS_AS(load_layout("/nonexistent.layout"), Error);
  CHECK_NOTHROW(load_layout(EOHOM_DATA_DIR "/paper_chip.layout"));
}

TEST_CASE("setting enumeration") {
  ChipLayout l;
  const auto all = enumerate_settings(l);
  CHECK(all.size() == 16);
  for (size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].pc0_on == (i >= 8));
    CHECK(*all[i].triple == int(i % 8) + 1);
  }
  SwitchSetting broken;
  broken.disabled_segments = {10};
  CHECK(enumerate_settings(l, broken).size() == 14);
  broken.disabled_segments = {1, 10};
  CHECK(enumerate_settings(l, broken).size() == 12);
  CHECK(SwitchSetting{}.label() == "PC0 on, PC234");
}

TEST_CASE("delay schedule against a time-of-flight oracle") {
  oracle::Gen gen(31);
  for (int i = 0; i < 200; ++i) {
    ChipLayout l;
    l.pdc_length_mm = gen.uniform(5, 30);
    l.pc0_length_mm = gen.uniform(2, 10);
    l.pbs_length_mm = gen.uniform(1, 6);
    l.segment_length_mm = gen.uniform(1, 4);
    l.segment_count = gen.integer(3, 14);
    l.bs_block_length_mm = gen.uniform(1, 20);
    l.branch_mismatch_mm = gen.uniform(-0.5, 0.5);
    const GroupIndices ng{gen.uniform(2.1, 2.3), gen.uniform(2.1, 2.3)};
    for (const auto& s : enumerate_settings(l)) {
      const double ref = oracle::time_of_flight_delay_ps(l, ng.h, ng.v, s.pc0_on, *s.triple);
      CHECK(delay_schedule_ps(l, ng, s) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("delay schedule of the fabricated geometry") {
  const ChipLayout l;
  const double step = kNg.difference() * l.segment_length_mm * 1e-3 / kSpeedOfLight * 1e12;
  SwitchSetting s;
  for (int m = 1; m <= 8; ++m) {
    s.triple = m;
    s.pc0_on = true;
    CHECK(delay_schedule_ps(l, kNg, s) == doctest::Approx((m - 2) * step).scale(1.0));
    s.pc0_on = false;
    const double off = delay_schedule_ps(l, kNg, s);
    CHECK(off >= 6.9);
    CHECK(off <= 11.7);
  }
  // mismatch on the segmented branch delays it further
  ChipLayout longer = l;
  longer.branch_mismatch_mm = 0.1;
  s.triple = 2;
  s.pc0_on = true;
  CHECK(delay_schedule_ps(longer, kNg, s) == doctest::Approx(kNg.v * 0.1e-3 / kSpeedOfLight * 1e12));

  SwitchSetting none;
  none.triple.reset();
  CHECK_THROWS_AS(delay_schedule_ps(l, kNg, none), Error);
  SwitchSetting bad;
  bad.triple = 9;
  CHECK_THROWS_AS(delay_schedule_ps(l, kNg, bad), SemanticError);
  bad.triple = 8;
  bad.disabled_segments = {10};
  CHECK_THROWS_AS(delay_schedule_ps(l, kNg, bad), SemanticError);
}

TEST_CASE("photon paths end in V on both branches") {
  const auto p = track_photons(ChipLayout{}, SwitchSetting{});
  CHECK(p.segmented.back().pol == Polarization::V);
  CHECK(p.direct.back().pol == Polarization::V);
  double seg = 0, dir = 0;
  for (const auto& leg : p.segmented) seg += leg.length_mm;
  for (const auto& leg : p.direct) dir += leg.length_mm;
  CHECK(seg == doctest::Approx(dir));
  CHECK(seg == doctest::Approx(ChipLayout{}.total_length_mm() - 0.5 * 20.7));
}
