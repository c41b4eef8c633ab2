#include "bess/battery.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace bess {

BatterySpec::BatterySpec(double rated_power_mw, double energy_capacity_mwh, double round_trip_efficiency)
    : rated_power_(rated_power_mw),
      energy_capacity_(energy_capacity_mwh),
      round_trip_efficiency_(round_trip_efficiency) {
    if (!(std::isfinite(rated_power_) && rated_power_ > 0.0))
        throw std::invalid_argument(fmt::format("rated power must be > 0 MW, got {}", rated_power_));
    if (!(std::isfinite(energy_capacity_) && energy_capacity_ > 0.0))
        throw std::invalid_argument(fmt::format("energy capacity must be > 0 MWh, got {}", energy_capacity_));
    if (!(round_trip_efficiency_ > 0.0 && round_trip_efficiency_ <= 1.0))
        throw std::invalid_argument(
            fmt::format("round-trip efficiency must lie in (0, 1], got {}", round_trip_efficiency_));
    one_way_ = std::sqrt(round_trip_efficiency_);
}

}  // namespace bess
