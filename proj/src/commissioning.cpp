#include "bess/commissioning.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <set>
#include <stdexcept>

namespace bess {

namespace {

constexpr double kSecondsPerHour = 3600.0;

// Area of max(p, 0) over one linear segment.
double positive_area(double p0, double p1, double dt) {
    if (p0 >= 0.0 && p1 >= 0.0) return 0.5 * (p0 + p1) * dt;
    if (p0 <= 0.0 && p1 <= 0.0) return 0.0;
    const double hi = std::max(p0, p1);
    const double lo = std::min(p0, p1);
    return 0.5 * hi * dt * hi / (hi - lo);
}

}  // namespace

CycleLog::CycleLog(std::vector<CycleSample> samples, BatterySpec battery, double power_tolerance)
    : samples_(std::move(samples)), battery_(battery) {
    const double limit = battery_.rated_power() * (1.0 + power_tolerance);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.time_s) || !std::isfinite(s.power_mw))
            throw std::invalid_argument(fmt::format("sample {}: non-finite value", i));
        if (i > 0 && !(s.time_s > samples_[i - 1].time_s))
            throw std::invalid_argument(fmt::format("sample {}: timestamp {} not after {}", i, s.time_s,
                                                    samples_[i - 1].time_s));
        if (std::abs(s.power_mw) > limit)
            throw std::invalid_argument(
                fmt::format("sample {}: |power| {} MW exceeds {} MW", i, std::abs(s.power_mw), limit));
    }
}

int CycleLog::complete_cycles() const {
    const double eps = 0.01 * battery_.rated_power();
    const bool labelled = !samples_.empty() && std::all_of(samples_.begin(), samples_.end(),
                                                           [](const CycleSample& s) { return s.cycle >= 0; });
    if (labelled) {
        std::set<int> charging, discharging;
        for (const auto& s : samples_) {
            if (s.power_mw > eps) charging.insert(s.cycle);
            if (s.power_mw < -eps) discharging.insert(s.cycle);
        }
        return static_cast<int>(std::count_if(charging.begin(), charging.end(),
                                              [&](int c) { return discharging.contains(c); }));
    }
    int charge_runs = 0, discharge_runs = 0, last_sign = 0;
    for (const auto& s : samples_) {
        const int sign = s.power_mw > eps ? 1 : (s.power_mw < -eps ? -1 : 0);
        if (sign == 0 || sign == last_sign) continue;
        (sign > 0 ? charge_runs : discharge_runs)++;
        last_sign = sign;
    }
    return std::min(charge_runs, discharge_runs);
}

double CycleLog::charged_mwh() const {
    double e = 0.0;
    for (std::size_t i = 1; i < samples_.size(); ++i)
        e += positive_area(samples_[i - 1].power_mw, samples_[i].power_mw, samples_[i].time_s - samples_[i - 1].time_s);
    return e / kSecondsPerHour;
}

double CycleLog::discharged_mwh() const {
    double e = 0.0;
    for (std::size_t i = 1; i < samples_.size(); ++i)
        e += positive_area(-samples_[i - 1].power_mw, -samples_[i].power_mw,
                           samples_[i].time_s - samples_[i - 1].time_s);
    return e / kSecondsPerHour;
}

double round_trip_efficiency(const CycleLog& log, int min_cycles) {
    const int cycles = log.complete_cycles();
    if (cycles < min_cycles)
        throw std::invalid_argument(
            fmt::format("cycle log has {} complete charge/discharge cycles, at least {} required", cycles, min_cycles));
    const double in = log.charged_mwh();
    if (!(in > 0.0)) throw std::invalid_argument("cycle log contains no charged energy");
    return log.discharged_mwh() / in;
}

CRateCheck check_c_rate(const CycleLog& log, const BatterySpec& battery, double tolerance) {
    if (log.empty()) throw std::invalid_argument("cycle log is empty");
    CRateCheck c;
    c.tolerance = tolerance;
    c.target_mw = 0.5 * battery.energy_capacity() / 1.0;
    const double eps = 0.01 * battery.rated_power();
    double sum = 0.0;
    int active = 0;
    for (const auto& s : log.samples()) {
        if (std::abs(s.power_mw) <= eps) continue;
        sum += std::abs(s.power_mw);
        ++active;
    }
    c.mean_power_mw = active > 0 ? sum / active : 0.0;
    c.pass = active > 0 && std::abs(c.mean_power_mw - c.target_mw) <= tolerance * c.target_mw;
    return c;
}

TelemetryVerdicts validate_telemetry(const TelemetrySnapshot& snapshot, const TelemetryThresholds& thresholds) {
    if (snapshot.cell_voltages_v.empty()) throw std::invalid_argument("telemetry has no cell voltages");
    if (!(snapshot.failover_ms >= 0.0)) throw std::invalid_argument("failover time must be >= 0 ms");
    TelemetryVerdicts v;
    for (double e : snapshot.temperature_errors_c) v.max_temperature_error_c = std::max(v.max_temperature_error_c, std::abs(e));
    v.temperature_ok = v.max_temperature_error_c <= thresholds.max_temperature_error_c;
    v.failover_ms = snapshot.failover_ms;
    v.failover_ok = snapshot.failover_ms < thresholds.failover_limit_ms;
    const auto [lo, hi] = std::minmax_element(snapshot.cell_voltages_v.begin(), snapshot.cell_voltages_v.end());
    v.cell_spread_v = *hi - *lo;
    v.cell_spread_ok = v.cell_spread_v <= thresholds.max_cell_spread_v;
    return v;
}

SatReport sat_report(double efficiency, const CRateCheck& c_rate, const TelemetryVerdicts& telemetry,
                     double efficiency_floor, const TelemetryThresholds& thresholds) {
    SatReport r;
    r.round_trip_efficiency = efficiency;
    r.efficiency_floor = efficiency_floor;
    r.efficiency_ok = efficiency >= efficiency_floor;
    r.c_rate = c_rate;
    r.telemetry = telemetry;
    r.thresholds = thresholds;
    r.overall = r.efficiency_ok && c_rate.pass && telemetry.all_pass();
    return r;
}

std::string SatReport::to_markdown() const {
    auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
    std::string out = "# Site acceptance test report\n\n";
    out += fmt::format("Overall: **{}**\n\n", overall ? "PASS" : "FAIL");
    out += "| Check | Value | Threshold | Result |\n|---|---:|---:|---|\n";
    out += fmt::format("| Round-trip efficiency | {:.4f} | >= {:.4f} | {} |\n", round_trip_efficiency,
                       efficiency_floor, mark(efficiency_ok));
    out += fmt::format("| Mean cycling power (C/2) | {:.4f} MW | {:.4f} MW ± {:.0f}% | {} |\n", c_rate.mean_power_mw,
                       c_rate.target_mw, c_rate.tolerance * 100.0, mark(c_rate.pass));
    out += fmt::format("| Temperature sensor error | {:.2f} °C | <= {:.2f} °C | {} |\n",
                       telemetry.max_temperature_error_c, thresholds.max_temperature_error_c,
                       mark(telemetry.temperature_ok));
    out += fmt::format("| Communication failover | {:.0f} ms | < {:.0f} ms | {} |\n", telemetry.failover_ms,
                       thresholds.failover_limit_ms, mark(telemetry.failover_ok));
    out += fmt::format("| Cell-voltage spread | {:.1f} mV | <= {:.1f} mV | {} |\n", telemetry.cell_spread_v * 1000.0,
                       thresholds.max_cell_spread_v * 1000.0, mark(telemetry.cell_spread_ok));
    out += "\n## Manual checklist\n\n";
    for (const char* item : {"Protection relay tests", "Inverter synchronization", "THD and flicker measurement (see PQ dossier)",
                             "Frequency support test", "SCADA integration"})
        out += fmt::format("- [ ] {}\n", item);
    return out;
}

std::string SatReport::to_json() const {
    nlohmann::ordered_json j;
    j["overall"] = overall;
    j["round_trip_efficiency"] = round_trip_efficiency;
    j["efficiency_floor"] = efficiency_floor;
    j["efficiency_ok"] = efficiency_ok;
    j["c_rate"] = {{"mean_power_mw", c_rate.mean_power_mw},
                   {"target_mw", c_rate.target_mw},
                   {"tolerance", c_rate.tolerance},
                   {"pass", c_rate.pass}};
    j["telemetry"] = {{"max_temperature_error_c", telemetry.max_temperature_error_c},
                      {"temperature_ok", telemetry.temperature_ok},
                      {"failover_ms", telemetry.failover_ms},
                      {"failover_ok", telemetry.failover_ok},
                      {"cell_spread_v", telemetry.cell_spread_v},
                      {"cell_spread_ok", telemetry.cell_spread_ok}};
    return j.dump(2) + "\n";
}

}  // namespace bess
