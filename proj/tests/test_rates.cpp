#include "doctest.h"
#include "eohom/rates.hpp"
#include "eohom/units.hpp"
#include "oracles.hpp"

using namespace eohom;

TEST_CASE("loss budget") {
  const auto t = total_loss(setup_loss_budget());
  CHECK(t.db == doctest::Approx(6.5));
  CHECK(total_loss({}).db == 0.0);
  CHECK(total_loss({}).transmission == 1.0);
  CHECK(db_to_transmission(11.0) == doctest::Approx(0.0794).epsilon(1e-3));
  CHECK_THROWS_AS(total_loss({{{"gain", -1.0}}}), SemanticError);

  oracle::Gen gen(51);
  for (int i = 0; i < 50; ++i) {
    LossBudget b;
    for (int j = 0; j < 6; ++j) b.items.push_back({"item" + std::to_string(j), gen.uniform(0, 5)});
    const double forward = total_loss(b).db;
    std::reverse(b.items.begin(), b.items.end());
    CHECK(total_loss(b).db == doctest::Approx(forward).epsilon(1e-14));
  }
}

TEST_CASE("Klyshko efficiency") {
  CHECK(klyshko_efficiency(2000, 100) == 0.05);
  CHECK(klyshko_efficiency(150, 150) == 1.0);
  CHECK(klyshko_efficiency(150, 0) == 0.0);
  CHECK_THROWS_AS(klyshko_efficiency(0, 10), OutOfRangeError);
}

TEST_CASE("expected rates") {
  const auto r = expected_rates({3e5, 0.1, 1.2}, 0.05, 0.05);
  CHECK(r.coincidences_hz == doctest::Approx(90.0).epsilon(1e-14));
  CHECK(expected_rates({3e5, 0.1, 1.2}, 1, 1).singles1_hz == r.pairs_hz);
  const auto half = expected_rates({3e5, 0.05, 1.2}, 0.05, 0.05);
  CHECK(half.coincidences_hz == doctest::Approx(0.5 * r.coincidences_hz));
  CHECK(half.singles2_hz == doctest::Approx(0.5 * r.singles2_hz));
  CHECK_THROWS_AS(expected_rates({0, 0.1, 1.2}, 0.1, 0.1), SemanticError);

  oracle::Gen gen(52);
  for (int i = 0; i < 100; ++i) {
    const double e1 = gen.uniform(0.001, 1), e2 = gen.uniform(0.001, 1);
    const auto x = expected_rates({gen.uniform(1e3, 1e6), gen.uniform(0.01, 1), gen.uniform(0.1, 5)}, e1, e2);
    CHECK(klyshko_efficiency(x.singles1_hz, x.coincidences_hz) == doctest::Approx(e2).epsilon(1e-13));
    CHECK(klyshko_efficiency(x.singles2_hz, x.coincidences_hz) == doctest::Approx(e1).epsilon(1e-13));
  }
}

TEST_CASE("reconciliation note states the gap") {
  const std::string note = reconciliation_note(11.0, 0.05);
  CHECK(note.find("13.01 dB") != std::string::npos);
  CHECK(note.find("2.01 dB") != std::string::npos);
}
