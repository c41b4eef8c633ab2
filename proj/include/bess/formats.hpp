#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bess/battery.hpp"
#include "bess/commissioning.hpp"
#include "bess/connection_cost.hpp"
#include "bess/dispatch.hpp"
#include "bess/epc_workflow.hpp"
#include "bess/power_quality.hpp"
#include "bess/site_scoring.hpp"
#include "bess/text_io.hpp"

// Readers and writers for every file the CLI consumes or persists. Parse
// failures throw InputError with the offending line where one exists.
// Column orders are documented in README.md.

namespace bess {

/// `name,s1,...,s12` per site, scores in canonical_criteria() order.
std::vector<ScoreCard> parse_scorecards(std::string_view text);

/// JSON (comments allowed): {"effective_date": "...", "rates": {"A-high": {"rate": 700000, "unit": "DKK/MVA"}, ...}}
TariffSchedule parse_tariff(std::string_view text);

/// `fcr_n,fcr_d_up,fcr_d_down,ffr,spot` per interval; optional header line.
PriceSeries parse_price_series(std::string_view text, double interval_hours = 1.0);

/// JSON (comments allowed) with one number per metric key.
PqLimits parse_pq_limits(std::string_view text);

/// Header `condition,thd,pst,plt,dc_injection,unbalance,rvc,noise` (any order), one row per measurement.
std::vector<PqMeasurement> parse_pq_measurements(std::string_view text);

/// `time_s,power_mw[,cycle]`; optional header line.
CycleLog parse_cycle_log(std::string_view text, const BatterySpec& battery, double power_tolerance = 0.1);

/// `quantity,value` rows: cell_voltage_v (repeated), temperature_error_c (repeated), failover_ms (once).
TelemetrySnapshot parse_telemetry(std::string_view text);

std::string serialize_project(const EpcProject& project);
EpcProject parse_project(std::string_view text);
EpcProject load_project(const std::filesystem::path& path);
void save_project(const std::filesystem::path& path, const EpcProject& project);

ScheduleParams parse_schedule_params(std::string_view json_text, ScheduleParams base = {});

}  // namespace bess
