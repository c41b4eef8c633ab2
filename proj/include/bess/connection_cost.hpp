#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bess/money.hpp"

namespace bess {

enum class ConnectionCategory { AHigh, ALow, BHigh, BLow, C };

inline constexpr std::array<ConnectionCategory, 5> kConnectionCategories{
    ConnectionCategory::AHigh, ConnectionCategory::ALow, ConnectionCategory::BHigh, ConnectionCategory::BLow,
    ConnectionCategory::C};

/// "A-high", "A-low", "B-high", "B-low", "C"
std::string_view to_string(ConnectionCategory c);
ConnectionCategory parse_connection_category(std::string_view text);

enum class RateBasis { PerMva, PerAmpere };
std::string_view to_string(RateBasis b);

struct TariffRate {
    Money rate;
    RateBasis basis;
};

class TariffSchedule {
public:
    TariffSchedule() = default;
    explicit TariffSchedule(std::string effective_date) : effective_date_(std::move(effective_date)) {}

    void set(ConnectionCategory category, TariffRate rate);
    std::optional<TariffRate> find(ConnectionCategory category) const;
    /// Throws std::invalid_argument naming the first missing category.
    void require_complete() const;
    const std::string& effective_date() const { return effective_date_; }

    /// Tilslutningsbidrag rates effective 2024-01-01 (VAT included).
    static TariffSchedule danish_2024();

private:
    std::string effective_date_;
    std::map<ConnectionCategory, TariffRate> rates_;
};

inline constexpr double kDefaultOversizeFactor = 1.25;
inline constexpr double kLowVoltageKv = 0.4;

struct SizingResult {
    double apparent_power_mva = 0.0;
    double lv_current_a = 0.0;
    double oversize_factor = kDefaultOversizeFactor;
};

/// rated_power × oversize_factor, rounded to 3 decimals (kVA resolution).
double required_apparent_power(double rated_power_mw, double oversize_factor = kDefaultOversizeFactor);

/// Three-phase line current I = S / (√3 · V_line), unrounded.
double lv_current(double apparent_power_mva, double line_voltage_kv);

SizingResult size_connection(double rated_power_mw, double line_voltage_kv,
                             double oversize_factor = kDefaultOversizeFactor);

/// Fee rounded half-up to whole currency units.
Money connection_fee(ConnectionCategory category, const TariffSchedule& tariff, const SizingResult& sizing);

struct FeeRow {
    ConnectionCategory category;
    TariffRate rate;
    SizingResult sizing;
    double line_voltage_kv;
    Money fee;
};

using VoltageMap = std::map<ConnectionCategory, double>;

/// Line voltage (kV) at the metering point of each category.
VoltageMap default_voltage_map();

/// All five categories priced, cheapest first; equal fees keep category order.
std::vector<FeeRow> compare_categories(double rated_power_mw, const TariffSchedule& tariff,
                                       const VoltageMap& voltages = default_voltage_map(),
                                       double oversize_factor = kDefaultOversizeFactor);

std::string fee_table_csv(const std::vector<FeeRow>& rows);
std::string fee_table_markdown(const std::vector<FeeRow>& rows, double rated_power_mw,
                               const std::optional<DkkPerEur>& rate = std::nullopt);

}  // namespace bess
