#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "bess/power_quality.hpp"

using namespace bess;

namespace {

PqMeasurement compliant(std::string_view condition) {
    PqMeasurement m;
    m.condition = std::string(condition);
    m[PqMetric::Thd] = 3.0;
    m[PqMetric::Pst] = 0.4;
    m[PqMetric::Plt] = 0.3;
    m[PqMetric::DcInjection] = 0.1;
    m[PqMetric::Unbalance] = 0.8;
    m[PqMetric::RapidVoltageChange] = 1.5;
    m[PqMetric::Noise] = 41.0;
    return m;
}

const MetricVerdict& verdict_for(const PqVerdict& v, PqMetric m) {
    for (const auto& mv : v.metrics)
        if (mv.metric == m) return mv;
    throw std::logic_error("metric missing");
}

}  // namespace

TEST_CASE("THD below the limit passes with its margin") {
    const auto v = check(compliant(kSteadyPower), PqLimits::defaults());
    CHECK(v.overall);
    const auto& thd = verdict_for(v, PqMetric::Thd);
    CHECK(thd.pass);
    CHECK(thd.margin == doctest::Approx(5.0));
    CHECK(v.metrics.size() == kPqMetrics.size());
    CHECK(v.mitigation_notes.empty());
}

TEST_CASE("a value equal to the limit passes") {
    auto m = compliant(kSteadyPower);
    m[PqMetric::Thd] = 8.0;
    const auto v = check(m, PqLimits::defaults());
    CHECK(v.overall);
    CHECK(verdict_for(v, PqMetric::Thd).margin == 0.0);
}

TEST_CASE("noise above 45 dB(A) fails") {
    auto m = compliant(kSteadyPower);
    m[PqMetric::Noise] = 46.0;
    const auto v = check(m, PqLimits::defaults());
    CHECK_FALSE(v.overall);
    CHECK_FALSE(verdict_for(v, PqMetric::Noise).pass);
    CHECK(verdict_for(v, PqMetric::Thd).pass);
    CHECK(v.mitigation_notes.empty());
}

TEST_CASE("THD failure carries the mitigation note") {
    auto m = compliant(kFullDischarge);
    m[PqMetric::Thd] = 9.5;
    const auto v = check(m, PqLimits::defaults());
    REQUIRE(v.mitigation_notes.size() == 1);
    CHECK(v.mitigation_notes[0].find(kThdMitigation) != std::string::npos);
}

TEST_CASE("invalid measurements and limits") {
    auto m = compliant(kSteadyPower);
    m[PqMetric::Pst] = -0.1;
    CHECK_THROWS_AS(check(m, PqLimits::defaults()), std::invalid_argument);
    m[PqMetric::Pst] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(check(m, PqLimits::defaults()), std::invalid_argument);
    m[PqMetric::Pst] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(check(m, PqLimits::defaults()), std::invalid_argument);

    auto limits = PqLimits::defaults();
    limits[PqMetric::Plt] = -1.0;
    CHECK_THROWS_AS(limits.validate(), std::invalid_argument);
}

TEST_CASE("dossier") {
    const auto limits = PqLimits::defaults();
    const auto steady = check(compliant(kSteadyPower), limits);
    const auto full = check(compliant(kFullDischarge), limits);

    SUBCASE("both conditions pass") {
        const auto d = dossier({steady, full});
        CHECK(d.overall);
        CHECK(d.failing_conditions.empty());
        const auto md = d.to_markdown(limits);
        CHECK(md.find("steady power") != std::string::npos);
        CHECK(md.find("full discharge") != std::string::npos);
    }
    SUBCASE("full-discharge THD failure names the condition") {
        auto m = compliant(kFullDischarge);
        m[PqMetric::Thd] = 8.5;
        const auto d = dossier({steady, check(m, limits)});
        CHECK_FALSE(d.overall);
        REQUIRE(d.failing_conditions.size() == 1);
        CHECK(d.failing_conditions[0] == kFullDischarge);
        CHECK(d.to_markdown(limits).find(kThdMitigation) != std::string::npos);
    }
    SUBCASE("a missing condition is an error") {
        CHECK_THROWS_AS(dossier({steady}), std::invalid_argument);
        CHECK_THROWS_AS(dossier({}), std::invalid_argument);
    }
}

TEST_CASE("property: loosening a limit never turns a pass into a fail") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto base = PqLimits::defaults();
    for (int trial = 0; trial < 2000; ++trial) {
        PqMeasurement m{"steady power", {}};
        for (auto metric : kPqMetrics) m[metric] = base[metric] * 1.2 * u(rng);
        PqLimits loose = base;
        const auto metric = kPqMetrics[static_cast<std::size_t>(trial) % kPqMetrics.size()];
        loose[metric] += base[metric] * u(rng);
        const auto before = check(m, base);
        const auto after = check(m, loose);
        if (before.overall) CHECK(after.overall);
        for (std::size_t i = 0; i < kPqMetrics.size(); ++i)
            if (before.metrics[i].pass) CHECK(after.metrics[i].pass);
    }
}

TEST_CASE("property: overall verdict is the conjunction of metric verdicts") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        PqLimits limits;
        PqMeasurement m{"full discharge", {}};
        for (auto metric : kPqMetrics) {
            limits[metric] = 10.0 * u(rng);
            m[metric] = limits[metric] * (0.85 + 0.2 * u(rng));
        }
        const auto v = check(m, limits);
        bool all = true;
        for (const auto& mv : v.metrics) {
            all = all && mv.pass;
            CHECK(mv.pass == (mv.margin >= 0.0));
        }
        CHECK(v.overall == all);
        const bool thd_failed = !verdict_for(v, PqMetric::Thd).pass;
        CHECK(thd_failed == !v.mitigation_notes.empty());
    }
}
