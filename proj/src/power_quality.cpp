#include "bess/power_quality.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace bess {

std::string_view key(PqMetric m) {
    switch (m) {
        case PqMetric::Thd: return "thd";
        case PqMetric::Pst: return "pst";
        case PqMetric::Plt: return "plt";
        case PqMetric::DcInjection: return "dc_injection";
        case PqMetric::Unbalance: return "unbalance";
        case PqMetric::RapidVoltageChange: return "rvc";
        case PqMetric::Noise: return "noise";
    }
    return "?";
}

std::string_view unit(PqMetric m) {
    switch (m) {
        case PqMetric::Pst:
        case PqMetric::Plt: return "";
        case PqMetric::Noise: return "dB(A)";
        default: return "%";
    }
}

PqLimits PqLimits::defaults() {
    PqLimits l;
    l[PqMetric::Thd] = 8.0;
    l[PqMetric::Pst] = 1.0;
    l[PqMetric::Plt] = 0.8;
    l[PqMetric::DcInjection] = 0.5;
    l[PqMetric::Unbalance] = 2.0;
    l[PqMetric::RapidVoltageChange] = 5.0;
    l[PqMetric::Noise] = 45.0;
    return l;
}

void PqLimits::validate() const {
    for (auto m : kPqMetrics)
        if (!std::isfinite((*this)[m]) || (*this)[m] < 0.0)
            throw std::invalid_argument(fmt::format("limit '{}' must be finite and >= 0", key(m)));
}

PqVerdict check(const PqMeasurement& measurement, const PqLimits& limits) {
    limits.validate();
    PqVerdict v;
    v.condition = measurement.condition;
    for (auto m : kPqMetrics) {
        const double x = measurement[m];
        if (!std::isfinite(x) || x < 0.0)
            throw std::invalid_argument(
                fmt::format("{}: measured {} must be finite and >= 0, got {}", measurement.condition, key(m), x));
        const double limit = limits[m];
        const bool pass = x <= limit;
        v.metrics.push_back({m, x, limit, limit - x, pass});
        v.overall = v.overall && pass;
        if (!pass && m == PqMetric::Thd)
            v.mitigation_notes.push_back(fmt::format("THD {}% exceeds {}%: specify {}.", x, limit, kThdMitigation));
    }
    return v;
}

ComplianceDossier dossier(std::vector<PqVerdict> verdicts) {
    for (auto required : {kSteadyPower, kFullDischarge}) {
        bool present = std::any_of(verdicts.begin(), verdicts.end(),
                                   [&](const PqVerdict& v) { return v.condition == required; });
        if (!present) throw std::invalid_argument(fmt::format("missing required condition '{}'", required));
    }
    ComplianceDossier d;
    d.verdicts = std::move(verdicts);
    for (const auto& v : d.verdicts) {
        if (v.overall) continue;
        d.overall = false;
        if (std::find(d.failing_conditions.begin(), d.failing_conditions.end(), v.condition) ==
            d.failing_conditions.end())
            d.failing_conditions.push_back(v.condition);
    }
    return d;
}

std::string ComplianceDossier::to_markdown(const PqLimits& limits) const {
    std::string out = "# Power-quality compliance dossier\n\n";
    out += fmt::format("Overall: **{}**\n", overall ? "PASS" : "FAIL");
    if (!failing_conditions.empty())
        out += fmt::format("\nFailing conditions: {}\n", fmt::join(failing_conditions, ", "));

    out += "\n## Limits\n\n| Metric | Limit |\n|---|---:|\n";
    for (auto m : kPqMetrics) out += fmt::format("| {} | {} {} |\n", key(m), limits[m], unit(m));

    for (const auto& v : verdicts) {
        out += fmt::format("\n## Condition: {} ({})\n\n", v.condition, v.overall ? "pass" : "fail");
        out += "| Metric | Measured | Limit | Margin | Result |\n|---|---:|---:|---:|---|\n";
        for (const auto& mv : v.metrics)
            out += fmt::format("| {} | {} | {} | {:.4g} | {} |\n", key(mv.metric), mv.measured, mv.limit, mv.margin,
                               mv.pass ? "pass" : "FAIL");
        for (const auto& note : v.mitigation_notes) out += fmt::format("\nMitigation: {}\n", note);
    }
    return out;
}

}  // namespace bess
