#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bess/dispatch.hpp"

namespace bess {

inline constexpr std::size_t kOracleMaxIntervals = 6;

struct OracleResult {
    double total_revenue = 0.0;
    /// One revenue-maximising schedule, one allocation per interval.
    std::vector<Allocation> schedule;
};

/// Maximum total revenue over every sequence of grid allocations, found by
/// memoised search over (interval, SoC). Uses the same feasibility rules as
/// the greedy dispatcher but shares none of its code. Stored energy left at
/// the end carries no value.
OracleResult exhaustive_oracle(const BatterySpec& battery, const PriceSeries& series, const StrategyConfig& strategy,
                               std::optional<double> initial_soc_mwh = std::nullopt);

}  // namespace bess
