#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bess/battery.hpp"

namespace bess {

struct CycleSample {
    double time_s;
    /// Grid-side power, MW; positive while charging.
    double power_mw;
    /// Cycle number, or -1 when cycles are detected from the power sign.
    int cycle = -1;
};

class CycleLog {
public:
    /// Timestamps must be strictly increasing and |power| within
    /// rated_power × (1 + power_tolerance).
    CycleLog(std::vector<CycleSample> samples, BatterySpec battery, double power_tolerance = 0.1);

    const std::vector<CycleSample>& samples() const { return samples_; }
    const BatterySpec& battery() const { return battery_; }
    bool empty() const { return samples_.empty(); }

    /// Cycles containing both charge and discharge energy.
    int complete_cycles() const;
    /// Trapezoidal integrals of the positive and negative power parts, MWh.
    double charged_mwh() const;
    double discharged_mwh() const;

private:
    std::vector<CycleSample> samples_;
    BatterySpec battery_;
};

inline constexpr int kMinSatCycles = 3;

double round_trip_efficiency(const CycleLog& log, int min_cycles = kMinSatCycles);

struct CRateCheck {
    double mean_power_mw = 0.0;
    double target_mw = 0.0;
    double tolerance = 0.1;
    bool pass = false;
};

/// Compares mean |power| over active samples with the C/2 rate of `battery`.
CRateCheck check_c_rate(const CycleLog& log, const BatterySpec& battery, double tolerance = 0.1);

struct TelemetrySnapshot {
    std::vector<double> cell_voltages_v;
    /// Sensor reading minus reference, °C.
    std::vector<double> temperature_errors_c;
    double failover_ms = 0.0;
};

struct TelemetryThresholds {
    /// Inclusive.
    double max_temperature_error_c = 2.0;
    /// Strict: the failover must complete in less than this.
    double failover_limit_ms = 200.0;
    /// Inclusive. Site-specific default, tune per cell chemistry.
    double max_cell_spread_v = 0.050;
};

struct TelemetryVerdicts {
    double max_temperature_error_c = 0.0;
    bool temperature_ok = false;
    double failover_ms = 0.0;
    bool failover_ok = false;
    double cell_spread_v = 0.0;
    bool cell_spread_ok = false;

    bool all_pass() const { return temperature_ok && failover_ok && cell_spread_ok; }
};

TelemetryVerdicts validate_telemetry(const TelemetrySnapshot& snapshot, const TelemetryThresholds& thresholds = {});

inline constexpr double kDefaultEfficiencyFloor = 0.85;

struct SatReport {
    double round_trip_efficiency = 0.0;
    double efficiency_floor = kDefaultEfficiencyFloor;
    bool efficiency_ok = false;
    CRateCheck c_rate;
    TelemetryVerdicts telemetry;
    TelemetryThresholds thresholds;
    bool overall = false;

    std::string to_markdown() const;
    std::string to_json() const;
};

SatReport sat_report(double efficiency, const CRateCheck& c_rate, const TelemetryVerdicts& telemetry,
                     double efficiency_floor = kDefaultEfficiencyFloor, const TelemetryThresholds& thresholds = {});

}  // namespace bess
