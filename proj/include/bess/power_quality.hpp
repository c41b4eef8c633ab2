#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace bess {

enum class PqMetric { Thd, Pst, Plt, DcInjection, Unbalance, RapidVoltageChange, Noise };

inline constexpr std::array<PqMetric, 7> kPqMetrics{PqMetric::Thd,       PqMetric::Pst,
                                                    PqMetric::Plt,       PqMetric::DcInjection,
                                                    PqMetric::Unbalance, PqMetric::RapidVoltageChange,
                                                    PqMetric::Noise};

/// Config key, e.g. "thd", "dc_injection".
std::string_view key(PqMetric m);
std::string_view unit(PqMetric m);

inline constexpr std::string_view kThdMitigation = "tuned passive filters, active filters, or ramp-rate limits";

inline constexpr std::string_view kSteadyPower = "steady power";
inline constexpr std::string_view kFullDischarge = "full discharge";

/// Upper limits per metric; a measured value equal to the limit passes.
struct PqLimits {
    std::array<double, kPqMetrics.size()> max{};

    double& operator[](PqMetric m) { return max[static_cast<std::size_t>(m)]; }
    double operator[](PqMetric m) const { return max[static_cast<std::size_t>(m)]; }

    /// THD 8 %, Pst 1.0, Plt 0.8, DC 0.5 %, unbalance 2 %, RVC 5 %, noise 45 dB(A).
    static PqLimits defaults();
    void validate() const;
};

struct PqMeasurement {
    std::string condition;
    std::array<double, kPqMetrics.size()> values{};

    double& operator[](PqMetric m) { return values[static_cast<std::size_t>(m)]; }
    double operator[](PqMetric m) const { return values[static_cast<std::size_t>(m)]; }
};

struct MetricVerdict {
    PqMetric metric;
    double measured;
    double limit;
    double margin;
    bool pass;
};

struct PqVerdict {
    std::string condition;
    std::vector<MetricVerdict> metrics;
    bool overall = true;
    std::vector<std::string> mitigation_notes;
};

PqVerdict check(const PqMeasurement& measurement, const PqLimits& limits);

struct ComplianceDossier {
    std::vector<PqVerdict> verdicts;
    bool overall = true;
    std::vector<std::string> failing_conditions;

    std::string to_markdown(const PqLimits& limits) const;
};

/// Requires at least one verdict for "steady power" and one for "full discharge".
ComplianceDossier dossier(std::vector<PqVerdict> verdicts);

}  // namespace bess
