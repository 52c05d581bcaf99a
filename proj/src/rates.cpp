#include "eohom/rates.hpp"

#include <cmath>
#include <cstdio>

#include "eohom/units.hpp"

namespace eohom {

double db_to_transmission(double db) { return std::pow(10.0, -db / 10.0); }

double transmission_to_db(double transmission) {
  if (!(transmission > 0.0)) throw OutOfRangeError("transmission must be positive");
  return -10.0 * std::log10(transmission);
}

LossTotal total_loss(const LossBudget& budget) {
  LossTotal t;
  for (const auto& item : budget.items) {
    if (!(item.db >= 0.0)) throw SemanticError("loss item '" + item.label + "'", "must be >= 0 dB");
    t.db += item.db;
  }
  t.transmission = db_to_transmission(t.db);
  return t;
}

double klyshko_efficiency(double singles_hz, double coincidences_hz) {
  if (!(singles_hz > 0.0)) throw OutOfRangeError("singles rate must be positive");
  if (coincidences_hz < 0.0) throw OutOfRangeError("coincidence rate must be non-negative");
  return coincidences_hz / singles_hz;
}

ExpectedRates expected_rates(const SourceSpec& source, double efficiency1, double efficiency2) {
  if (!(source.brightness > 0.0 && source.pump_power_mw > 0.0 && source.bandwidth_nm > 0.0))
    throw SemanticError("source", "brightness, pump power and bandwidth must be positive");
  ExpectedRates r;
  r.pairs_hz = source.brightness * source.pump_power_mw * source.bandwidth_nm;
  r.singles1_hz = r.pairs_hz * efficiency1;
  r.singles2_hz = r.pairs_hz * efficiency2;
  r.coincidences_hz = r.pairs_hz * efficiency1 * efficiency2;
  return r;
}

LossBudget setup_loss_budget() {
  return {{{"fiber butt coupling", 2.0}, {"isolators and filters", 3.0}, {"detection", 1.5}}};
}

std::string reconciliation_note(double quoted_loss_db, double quoted_klyshko) {
  const double klyshko_db = transmission_to_db(quoted_klyshko);
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "quoted total loss %.3g dB corresponds to a transmission of %.4f; "
                "the quoted Klyshko efficiency %.3g%% corresponds to %.2f dB. "
                "The two figures differ by %.2f dB and are reported as given, not reconciled.",
                quoted_loss_db, db_to_transmission(quoted_loss_db), 100.0 * quoted_klyshko, klyshko_db,
                klyshko_db - quoted_loss_db);
  return buf;
}

}  // namespace eohom
