#include "bess/connection_cost.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <stdexcept>

namespace bess {

std::string_view to_string(ConnectionCategory c) {
    switch (c) {
        case ConnectionCategory::AHigh: return "A-high";
        case ConnectionCategory::ALow: return "A-low";
        case ConnectionCategory::BHigh: return "B-high";
        case ConnectionCategory::BLow: return "B-low";
        case ConnectionCategory::C: return "C";
    }
    return "?";
}

ConnectionCategory parse_connection_category(std::string_view text) {
    for (auto c : kConnectionCategories)
        if (text == to_string(c)) return c;
    throw std::invalid_argument(fmt::format("unknown connection category '{}'", text));
}

std::string_view to_string(RateBasis b) { return b == RateBasis::PerMva ? "MVA" : "A"; }

void TariffSchedule::set(ConnectionCategory category, TariffRate rate) {
    if (rate.rate.minor_units() < 0)
        throw std::invalid_argument(fmt::format("negative tariff rate for {}", to_string(category)));
    rates_[category] = rate;
}

std::optional<TariffRate> TariffSchedule::find(ConnectionCategory category) const {
    auto it = rates_.find(category);
    if (it == rates_.end()) return std::nullopt;
    return it->second;
}

void TariffSchedule::require_complete() const {
    for (auto c : kConnectionCategories)
        if (!rates_.contains(c)) throw std::invalid_argument(fmt::format("tariff has no rate for category {}", to_string(c)));
}

TariffSchedule TariffSchedule::danish_2024() {
    TariffSchedule t("2024-01-01");
    t.set(ConnectionCategory::AHigh, {Money::from_major(700'000, Currency::DKK), RateBasis::PerMva});
    t.set(ConnectionCategory::ALow, {Money::from_major(1'280'000, Currency::DKK), RateBasis::PerMva});
    t.set(ConnectionCategory::BHigh, {Money::from_major(850'000, Currency::DKK), RateBasis::PerMva});
    t.set(ConnectionCategory::BLow, {Money::from_major(1'310, Currency::DKK), RateBasis::PerAmpere});
    t.set(ConnectionCategory::C, {Money::from_major(1'360, Currency::DKK), RateBasis::PerAmpere});
    return t;
}

double required_apparent_power(double rated_power_mw, double oversize_factor) {
    if (!(rated_power_mw >= 0.0) || !std::isfinite(rated_power_mw))
        throw std::invalid_argument(fmt::format("rated power must be >= 0, got {}", rated_power_mw));
    if (!(oversize_factor >= 1.0) || !std::isfinite(oversize_factor))
        throw std::invalid_argument(fmt::format("oversize factor must be >= 1, got {}", oversize_factor));
    return std::round(rated_power_mw * oversize_factor * 1000.0) / 1000.0;
}

double lv_current(double apparent_power_mva, double line_voltage_kv) {
    if (!(line_voltage_kv > 0.0) || !std::isfinite(line_voltage_kv))
        throw std::invalid_argument(fmt::format("line voltage must be > 0 kV, got {}", line_voltage_kv));
    if (!(apparent_power_mva >= 0.0))
        throw std::invalid_argument(fmt::format("apparent power must be >= 0, got {}", apparent_power_mva));
    return apparent_power_mva * 1e6 / (std::numbers::sqrt3 * line_voltage_kv * 1e3);
}

SizingResult size_connection(double rated_power_mw, double line_voltage_kv, double oversize_factor) {
    SizingResult s;
    s.oversize_factor = oversize_factor;
    s.apparent_power_mva = required_apparent_power(rated_power_mw, oversize_factor);
    s.lv_current_a = lv_current(s.apparent_power_mva, line_voltage_kv);
    return s;
}

Money connection_fee(ConnectionCategory category, const TariffSchedule& tariff, const SizingResult& sizing) {
    auto rate = tariff.find(category);
    if (!rate) throw std::invalid_argument(fmt::format("tariff has no rate for category {}", to_string(category)));
    if (sizing.apparent_power_mva < 0.0 || sizing.lv_current_a < 0.0)
        throw std::invalid_argument("sizing quantities must be non-negative");

    const auto currency = rate->rate.currency();
    if (rate->basis == RateBasis::PerMva) {
        // kVA is an integer after required_apparent_power(), so this stays exact.
        const auto kva = static_cast<Int128>(std::llround(sizing.apparent_power_mva * 1000.0));
        const Int128 minor = static_cast<Int128>(rate->rate.minor_units()) * kva;
        return Money::from_major(div_round_half_up(minor, 1000 * 100), currency);
    }
    const long double major = static_cast<long double>(rate->rate.minor_units()) / 100.0L *
                              static_cast<long double>(sizing.lv_current_a);
    return Money::from_major(static_cast<std::int64_t>(std::llroundl(major)), currency);
}

VoltageMap default_voltage_map() {
    return {{ConnectionCategory::AHigh, 60.0},
            {ConnectionCategory::ALow, 10.0},
            {ConnectionCategory::BHigh, 10.0},
            {ConnectionCategory::BLow, kLowVoltageKv},
            {ConnectionCategory::C, kLowVoltageKv}};
}

std::vector<FeeRow> compare_categories(double rated_power_mw, const TariffSchedule& tariff,
                                       const VoltageMap& voltages, double oversize_factor) {
    tariff.require_complete();
    std::vector<FeeRow> rows;
    for (auto c : kConnectionCategories) {
        auto v = voltages.find(c);
        if (v == voltages.end())
            throw std::invalid_argument(fmt::format("no line voltage for category {}", to_string(c)));
        FeeRow row{c, *tariff.find(c), size_connection(rated_power_mw, v->second, oversize_factor), v->second, {}};
        row.fee = connection_fee(c, tariff, row.sizing);
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const FeeRow& a, const FeeRow& b) {
        return a.fee.minor_units() < b.fee.minor_units();
    });
    return rows;
}

std::string fee_table_csv(const std::vector<FeeRow>& rows) {
    std::string out = "rank,category,basis,rate,apparent_power_mva,line_voltage_kv,lv_current_a,fee,currency\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += fmt::format("{},{},{},{:.2f},{:.3f},{:.3f},{:.1f},{:.2f},{}\n", i + 1, to_string(r.category),
                           to_string(r.rate.basis), r.rate.rate.to_double(), r.sizing.apparent_power_mva,
                           r.line_voltage_kv, r.sizing.lv_current_a, r.fee.to_double(), to_string(r.fee.currency()));
    }
    return out;
}

std::string fee_table_markdown(const std::vector<FeeRow>& rows, double rated_power_mw,
                               const std::optional<DkkPerEur>& rate) {
    std::string out = fmt::format("# Grid connection fees for {} MW\n\n", rated_power_mw);
    if (!rows.empty())
        out += fmt::format("Sizing: {:.3f} MVA (oversize factor {}).\n\n", rows.front().sizing.apparent_power_mva,
                           rows.front().sizing.oversize_factor);
    out += "| Rank | Category | Rate | Quantity | Fee |";
    if (rate) out += " Fee (EUR) |";
    out += "\n|---:|---|---:|---:|---:|";
    if (rate) out += "---:|";
    out += "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string quantity = r.rate.basis == RateBasis::PerMva
                                         ? fmt::format("{:.3f} MVA", r.sizing.apparent_power_mva)
                                         : fmt::format("{:.0f} A at {} kV", r.sizing.lv_current_a, r.line_voltage_kv);
        out += fmt::format("| {} | {} | {}/{} | {} | {} |", i + 1, to_string(r.category), r.rate.rate.format(),
                           to_string(r.rate.basis), quantity, r.fee.format());
        if (rate) {
            const Money eur = r.fee.currency() == Currency::EUR ? r.fee : convert(r.fee, *rate);
            out += fmt::format(" {} |", eur.format());
        }
        out += "\n";
    }
    if (rate) out += fmt::format("\nEUR figures use {:.4f} DKK/EUR.\n", rate->value());
    return out;
}

}  // namespace bess
