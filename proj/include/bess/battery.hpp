#pragma once

#include <cstddef>

namespace bess {

/// Rated power (MW), usable energy (MWh) and AC round-trip efficiency.
/// Losses are split evenly: charge and discharge efficiency are both
/// sqrt(round_trip_efficiency).
class BatterySpec {
public:
    BatterySpec(double rated_power_mw, double energy_capacity_mwh, double round_trip_efficiency);

    double rated_power() const { return rated_power_; }
    double energy_capacity() const { return energy_capacity_; }
    double round_trip_efficiency() const { return round_trip_efficiency_; }
    double charge_efficiency() const { return one_way_; }
    double discharge_efficiency() const { return one_way_; }

private:
    double rated_power_;
    double energy_capacity_;
    double round_trip_efficiency_;
    double one_way_;
};

struct Interval {
    std::size_t index = 0;
    double duration_h = 1.0;
};

}  // namespace bess
