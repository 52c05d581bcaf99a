#pragma once

#include <string>
#include <vector>

namespace eohom {

struct LossItem {
  std::string label;
  double db = 0.0;
};

struct LossBudget {
  std::vector<LossItem> items;
};

struct LossTotal {
  double db = 0.0;
  double transmission = 1.0;  // 10^(-dB/10)
};

/// Throws SemanticError on a negative item.
LossTotal total_loss(const LossBudget& budget);

double db_to_transmission(double db);
double transmission_to_db(double transmission);

/// Coincidences / singles.
double klyshko_efficiency(double singles_hz, double coincidences_hz);

struct SourceSpec {
  double brightness = 3e5;  // pairs / (s mW nm)
  double pump_power_mw = 0.1;
  double bandwidth_nm = 1.2;
};

struct ExpectedRates {
  double pairs_hz = 0.0;
  double singles1_hz = 0.0;
  double singles2_hz = 0.0;
  double coincidences_hz = 0.0;
};

ExpectedRates expected_rates(const SourceSpec& source, double efficiency1, double efficiency2);

/// Fiber coupling, isolators/filters and detection losses of the setup.
LossBudget setup_loss_budget();

/// Compares a quoted total loss with a quoted Klyshko efficiency and states the gap.
std::string reconciliation_note(double quoted_loss_db, double quoted_klyshko);

}  // namespace eohom
