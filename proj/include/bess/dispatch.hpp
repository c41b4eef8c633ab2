#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bess/battery.hpp"
#include "bess/money.hpp"

namespace bess {

enum class MarketProduct { FcrN, FcrDUp, FcrDDown, Ffr, SpotBuy, SpotSell, Idle };

std::string_view to_string(MarketProduct p);

/// Reservation products, in the order used by every per-service array.
inline constexpr std::array<MarketProduct, 4> kReserveProducts{MarketProduct::FcrN, MarketProduct::FcrDUp,
                                                               MarketProduct::FcrDDown, MarketProduct::Ffr};

/// Reservation prices in EUR per MW per hour, spot in EUR per MWh.
struct IntervalPrices {
    double fcr_n = 0.0;
    double fcr_d_up = 0.0;
    double fcr_d_down = 0.0;
    double ffr = 0.0;
    double spot = 0.0;

    std::array<double, 4> reserves() const { return {fcr_n, fcr_d_up, fcr_d_down, ffr}; }
    IntervalPrices scaled(double k) const { return {fcr_n * k, fcr_d_up * k, fcr_d_down * k, ffr * k, spot * k}; }
};

class PriceSeries {
public:
    PriceSeries(std::vector<IntervalPrices> prices, double interval_hours = 1.0);

    std::size_t size() const { return prices_.size(); }
    const IntervalPrices& operator[](std::size_t i) const { return prices_[i]; }
    const std::vector<IntervalPrices>& prices() const { return prices_; }
    double interval_hours() const { return interval_hours_; }
    Interval interval(std::size_t i) const { return {i, interval_hours_}; }

private:
    std::vector<IntervalPrices> prices_;
    double interval_hours_;
};

struct StrategyConfig {
    /// Capacity grid for every product, MW. Must divide the rated power.
    double step_mw = 0.25;
    /// Hours a committed reserve must be sustainable from the current SoC, per direction.
    double backing_hours = 0.25;
    /// Expected share of committed reserve energy actually activated; settled at spot.
    double activation_fraction = 0.0;
    double initial_soc_fraction = 0.5;
    /// Value placed on stored energy (EUR/MWh) when ranking options. Not part of reported revenue.
    double energy_value = 0.0;

    void validate(const BatterySpec& battery) const;
};

struct SocState {
    double soc_mwh = 0.0;
    std::size_t interval = 0;
};

/// Capacity split for one interval. Reserve MW is indexed like kReserveProducts.
/// Spot energies and activation energies are grid-side MWh.
struct Allocation {
    std::array<double, 4> reserve_mw{};
    double spot_buy_mw = 0.0;
    double spot_sell_mw = 0.0;
    double spot_buy_mwh = 0.0;
    double spot_sell_mwh = 0.0;
    double activation_up_mwh = 0.0;
    double activation_down_mwh = 0.0;

    double reserve(MarketProduct p) const;
    /// FcrN + FcrDUp + Ffr + SpotSell
    double upward_mw() const;
    /// FcrN + FcrDDown + SpotBuy
    double downward_mw() const;
    double committed_mw() const;
    bool is_idle() const { return committed_mw() == 0.0; }
    /// Grid-side energy drawn and delivered, including activation.
    double energy_in_mwh() const { return spot_buy_mwh + activation_down_mwh; }
    double energy_out_mwh() const { return spot_sell_mwh + activation_up_mwh; }
};

struct IntervalRevenue {
    std::array<double, 4> services{};
    double export_revenue = 0.0;
    double import_cost = 0.0;

    double net() const;
};

/// Reservation payments plus spot settlement of every MWh exchanged.
IntervalRevenue interval_revenue(const Allocation& allocation, const IntervalPrices& prices, double duration_h);

/// Best feasible allocation on the discrete capacity grid. The objective is
/// interval revenue plus energy_value times the change in stored energy.
/// Ties prefer Idle, then fewer committed MW, then larger commitments to
/// products earlier in MarketProduct order.
Allocation allocate_interval(const BatterySpec& battery, const SocState& soc, const IntervalPrices& prices,
                             double duration_h, const StrategyConfig& strategy = {});

/// Objective value allocate_interval maximises.
double interval_objective(const BatterySpec& battery, const Allocation& allocation, const IntervalPrices& prices,
                          double duration_h, double energy_value);

/// True when `allocation` satisfies the capacity partition and the
/// reservation-backing rule at `soc`.
bool is_feasible(const BatterySpec& battery, double soc_mwh, const Allocation& allocation, double duration_h,
                 const StrategyConfig& strategy);

/// Applies the energy flows of one interval. Throws std::domain_error when
/// the result would leave [0, capacity].
SocState step_soc(const BatterySpec& battery, const SocState& state, const Allocation& allocation,
                  double duration_h);

struct RevenueReport {
    std::array<Money, 4> services{Money::zero(Currency::EUR), Money::zero(Currency::EUR),
                                  Money::zero(Currency::EUR), Money::zero(Currency::EUR)};
    Money export_revenue = Money::zero(Currency::EUR);
    Money import_cost = Money::zero(Currency::EUR);
    Money net = Money::zero(Currency::EUR);

    Money recomputed_net() const;
    static RevenueReport from_totals(const IntervalRevenue& totals);
};

struct DispatchRecord {
    std::size_t interval = 0;
    double soc_start_mwh = 0.0;
    double soc_end_mwh = 0.0;
    Allocation allocation;
    IntervalRevenue revenue;
};

struct SimulationResult {
    RevenueReport report;
    IntervalRevenue totals;
    std::vector<double> soc_trajectory;
    std::vector<DispatchRecord> log;
};

SimulationResult simulate_horizon(const BatterySpec& battery, const PriceSeries& series,
                                  const StrategyConfig& strategy = {});

std::string dispatch_log_csv(const SimulationResult& result);
std::string revenue_report_markdown(const SimulationResult& result, const BatterySpec& battery,
                                    const DkkPerEur& rate);
std::string revenue_report_json(const SimulationResult& result, const BatterySpec& battery);

}  // namespace bess
