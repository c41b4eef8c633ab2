#include "bess/dispatch.hpp"

#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <stdexcept>

namespace bess {

namespace {

constexpr double kEnergyTolerance = 1e-9;

int grid_units(double rated_power, double step) {
    const double ratio = rated_power / step;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9)
        throw std::invalid_argument(
            fmt::format("discretization step {} MW does not divide rated power {} MW", step, rated_power));
    return static_cast<int>(rounded);
}

// Units per product in MarketProduct order: FcrN, FcrDUp, FcrDDown, Ffr, SpotBuy, SpotSell.
using UnitVector = std::array<int, 6>;

struct Candidate {
    Allocation allocation;
    UnitVector units{};
    int units_total = 0;
    double objective = 0.0;
};

bool preferred(const Candidate& a, const Candidate& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    if ((a.units_total == 0) != (b.units_total == 0)) return a.units_total == 0;
    if (a.units_total != b.units_total) return a.units_total < b.units_total;
    return a.units > b.units;
}

}  // namespace

std::string_view to_string(MarketProduct p) {
    switch (p) {
        case MarketProduct::FcrN: return "FCR-N";
        case MarketProduct::FcrDUp: return "FCR-D up";
        case MarketProduct::FcrDDown: return "FCR-D down";
        case MarketProduct::Ffr: return "FFR";
        case MarketProduct::SpotBuy: return "spot buy";
        case MarketProduct::SpotSell: return "spot sell";
        case MarketProduct::Idle: return "idle";
    }
    return "?";
}

PriceSeries::PriceSeries(std::vector<IntervalPrices> prices, double interval_hours)
    : prices_(std::move(prices)), interval_hours_(interval_hours) {
    if (prices_.empty()) throw std::invalid_argument("price series is empty");
    if (!(interval_hours_ > 0.0) || !std::isfinite(interval_hours_))
        throw std::invalid_argument(fmt::format("interval duration must be > 0 h, got {}", interval_hours_));
    for (std::size_t i = 0; i < prices_.size(); ++i) {
        const auto& p = prices_[i];
        for (double v : {p.fcr_n, p.fcr_d_up, p.fcr_d_down, p.ffr, p.spot})
            if (!std::isfinite(v)) throw std::invalid_argument(fmt::format("non-finite price in interval {}", i));
    }
}

void StrategyConfig::validate(const BatterySpec& battery) const {
    if (!(step_mw > 0.0)) throw std::invalid_argument("discretization step must be > 0");
    grid_units(battery.rated_power(), step_mw);
    if (!(backing_hours >= 0.0) || !std::isfinite(backing_hours))
        throw std::invalid_argument("backing duration must be >= 0");
    if (!(activation_fraction >= 0.0 && activation_fraction <= 1.0))
        throw std::invalid_argument("activation fraction must lie in [0, 1]");
    if (!(initial_soc_fraction >= 0.0 && initial_soc_fraction <= 1.0))
        throw std::invalid_argument("initial SoC fraction must lie in [0, 1]");
    if (!std::isfinite(energy_value)) throw std::invalid_argument("energy value must be finite");
}

double Allocation::reserve(MarketProduct p) const {
    for (std::size_t i = 0; i < kReserveProducts.size(); ++i)
        if (kReserveProducts[i] == p) return reserve_mw[i];
    throw std::invalid_argument("not a reservation product");
}

double Allocation::upward_mw() const { return reserve_mw[0] + reserve_mw[1] + reserve_mw[3] + spot_sell_mw; }
double Allocation::downward_mw() const { return reserve_mw[0] + reserve_mw[2] + spot_buy_mw; }
double Allocation::committed_mw() const {
    return reserve_mw[0] + reserve_mw[1] + reserve_mw[2] + reserve_mw[3] + spot_buy_mw + spot_sell_mw;
}

double IntervalRevenue::net() const {
    return services[0] + services[1] + services[2] + services[3] + export_revenue - import_cost;
}

IntervalRevenue interval_revenue(const Allocation& allocation, const IntervalPrices& prices, double duration_h) {
    IntervalRevenue r;
    const auto reserve_prices = prices.reserves();
    for (std::size_t i = 0; i < r.services.size(); ++i)
        r.services[i] = reserve_prices[i] * allocation.reserve_mw[i] * duration_h;
    r.export_revenue = prices.spot * allocation.energy_out_mwh();
    r.import_cost = prices.spot * allocation.energy_in_mwh();
    return r;
}

double interval_objective(const BatterySpec& battery, const Allocation& allocation, const IntervalPrices& prices,
                          double duration_h, double energy_value) {
    const double stored_change = battery.charge_efficiency() * allocation.energy_in_mwh() -
                                 allocation.energy_out_mwh() / battery.discharge_efficiency();
    return interval_revenue(allocation, prices, duration_h).net() + energy_value * stored_change;
}

bool is_feasible(const BatterySpec& battery, double soc_mwh, const Allocation& a, double duration_h,
                 const StrategyConfig& strategy) {
    const double p = battery.rated_power() + kEnergyTolerance;
    for (double v : a.reserve_mw)
        if (v < 0.0) return false;
    if (a.spot_buy_mw < 0.0 || a.spot_sell_mw < 0.0 || a.spot_buy_mwh < 0.0 || a.spot_sell_mwh < 0.0) return false;
    if (a.spot_buy_mw > 0.0 && a.spot_sell_mw > 0.0) return false;
    if (a.upward_mw() > p || a.downward_mw() > p) return false;
    if (a.spot_sell_mwh > a.spot_sell_mw * duration_h + kEnergyTolerance) return false;
    if (a.spot_buy_mwh > a.spot_buy_mw * duration_h + kEnergyTolerance) return false;

    const double up_reserve = a.reserve_mw[0] + a.reserve_mw[1] + a.reserve_mw[3];
    const double down_reserve = a.reserve_mw[0] + a.reserve_mw[2];
    const double deliverable = battery.discharge_efficiency() * soc_mwh;
    const double absorbable = (battery.energy_capacity() - soc_mwh) / battery.charge_efficiency();
    if (a.energy_out_mwh() + up_reserve * strategy.backing_hours > deliverable + kEnergyTolerance) return false;
    if (a.energy_in_mwh() + down_reserve * strategy.backing_hours > absorbable + kEnergyTolerance) return false;
    return true;
}

Allocation allocate_interval(const BatterySpec& battery, const SocState& soc, const IntervalPrices& prices,
                             double duration_h, const StrategyConfig& strategy) {
    strategy.validate(battery);
    if (!std::isfinite(soc.soc_mwh) || soc.soc_mwh < -kEnergyTolerance ||
        soc.soc_mwh > battery.energy_capacity() + kEnergyTolerance)
        throw std::invalid_argument(fmt::format("SoC {} MWh outside [0, {}]", soc.soc_mwh, battery.energy_capacity()));
    if (!(duration_h > 0.0)) throw std::invalid_argument("interval duration must be > 0");

    const int n = grid_units(battery.rated_power(), strategy.step_mw);
    const double step = strategy.step_mw;
    const double tb = strategy.backing_hours;
    const double alpha = strategy.activation_fraction * duration_h * step;
    const double deliverable = battery.discharge_efficiency() * soc.soc_mwh;
    const double absorbable = (battery.energy_capacity() - soc.soc_mwh) / battery.charge_efficiency();

    Candidate best;
    best.objective = 0.0;

    Candidate c;
    for (int fcrn = 0; fcrn <= n; ++fcrn) {
        for (int dup = 0; fcrn + dup <= n; ++dup) {
            for (int ffr = 0; fcrn + dup + ffr <= n; ++ffr) {
                const int up_units = fcrn + dup + ffr;
                const double act_up = alpha * (dup + ffr + 0.5 * fcrn);
                const double up_left = deliverable - act_up - up_units * step * tb;
                if (up_left < -kEnergyTolerance) break;
                for (int ddown = 0; fcrn + ddown <= n; ++ddown) {
                    const int down_units = fcrn + ddown;
                    const double act_down = alpha * (ddown + 0.5 * fcrn);
                    const double down_left = absorbable - act_down - down_units * step * tb;
                    if (down_left < -kEnergyTolerance) break;

                    auto evaluate = [&](int buy, int sell) {
                        Allocation& a = c.allocation;
                        a.reserve_mw = {fcrn * step, dup * step, ddown * step, ffr * step};
                        a.spot_buy_mw = buy * step;
                        a.spot_sell_mw = sell * step;
                        a.spot_buy_mwh = std::min(a.spot_buy_mw * duration_h, std::max(0.0, down_left));
                        a.spot_sell_mwh = std::min(a.spot_sell_mw * duration_h, std::max(0.0, up_left));
                        a.activation_up_mwh = act_up;
                        a.activation_down_mwh = act_down;
                        c.units = {fcrn, dup, ddown, ffr, buy, sell};
                        c.units_total = up_units + down_units - fcrn + buy + sell;
                        c.objective = interval_objective(battery, a, prices, duration_h, strategy.energy_value);
                        if (preferred(c, best)) best = c;
                    };
                    for (int sell = 0; up_units + sell <= n; ++sell) evaluate(0, sell);
                    for (int buy = 1; down_units + buy <= n; ++buy) evaluate(buy, 0);
                }
            }
        }
    }
    return best.allocation;
}

SocState step_soc(const BatterySpec& battery, const SocState& state, const Allocation& allocation,
                  double duration_h) {
    if (!(duration_h > 0.0)) throw std::invalid_argument("interval duration must be > 0");
    const double cap = battery.energy_capacity();
    if (state.soc_mwh < -kEnergyTolerance || state.soc_mwh > cap + kEnergyTolerance)
        throw std::domain_error(fmt::format("SoC {} MWh outside [0, {}]", state.soc_mwh, cap));
    if (allocation.energy_in_mwh() < 0.0 || allocation.energy_out_mwh() < 0.0)
        throw std::domain_error("negative energy flow");

    double next = state.soc_mwh + battery.charge_efficiency() * allocation.energy_in_mwh() -
                  allocation.energy_out_mwh() / battery.discharge_efficiency();
    if (next < -kEnergyTolerance)
        throw std::domain_error(fmt::format("interval {} would discharge below empty (SoC {} MWh)", state.interval, next));
    if (next > cap + kEnergyTolerance)
        throw std::domain_error(
            fmt::format("interval {} would charge above capacity (SoC {} MWh > {})", state.interval, next, cap));
    // Floating-point residue only; anything larger was rejected above.
    if (next < 0.0) next = 0.0;
    if (next > cap) next = cap;
    return {next, state.interval + 1};
}

Money RevenueReport::recomputed_net() const {
    Money sum = money_sum(services, Currency::EUR);
    return sum + export_revenue - import_cost;
}

RevenueReport RevenueReport::from_totals(const IntervalRevenue& totals) {
    RevenueReport r;
    for (std::size_t i = 0; i < totals.services.size(); ++i)
        r.services[i] = Money::from_decimal(totals.services[i], Currency::EUR);
    r.export_revenue = Money::from_decimal(totals.export_revenue, Currency::EUR);
    r.import_cost = Money::from_decimal(totals.import_cost, Currency::EUR);
    r.net = r.recomputed_net();
    return r;
}

SimulationResult simulate_horizon(const BatterySpec& battery, const PriceSeries& series,
                                  const StrategyConfig& strategy) {
    strategy.validate(battery);
    SimulationResult result;
    result.soc_trajectory.reserve(series.size() + 1);
    result.log.reserve(series.size());

    SocState state{strategy.initial_soc_fraction * battery.energy_capacity(), 0};
    result.soc_trajectory.push_back(state.soc_mwh);
    const double d = series.interval_hours();
    for (std::size_t i = 0; i < series.size(); ++i) {
        DispatchRecord rec;
        rec.interval = i;
        rec.soc_start_mwh = state.soc_mwh;
        rec.allocation = allocate_interval(battery, state, series[i], d, strategy);
        rec.revenue = interval_revenue(rec.allocation, series[i], d);
        state = step_soc(battery, state, rec.allocation, d);
        rec.soc_end_mwh = state.soc_mwh;

        for (std::size_t k = 0; k < rec.revenue.services.size(); ++k)
            result.totals.services[k] += rec.revenue.services[k];
        result.totals.export_revenue += rec.revenue.export_revenue;
        result.totals.import_cost += rec.revenue.import_cost;
        result.soc_trajectory.push_back(state.soc_mwh);
        result.log.push_back(rec);
    }
    result.report = RevenueReport::from_totals(result.totals);
    return result;
}

std::string dispatch_log_csv(const SimulationResult& result) {
    std::string out =
        "interval,soc_start_mwh,fcr_n_mw,fcr_d_up_mw,fcr_d_down_mw,ffr_mw,spot_buy_mw,spot_sell_mw,"
        "spot_buy_mwh,spot_sell_mwh,activation_up_mwh,activation_down_mwh,revenue_eur,soc_end_mwh\n";
    for (const auto& r : result.log) {
        const auto& a = r.allocation;
        out += fmt::format("{},{:.6f},{:.3f},{:.3f},{:.3f},{:.3f},{:.3f},{:.3f},{:.6f},{:.6f},{:.6f},{:.6f},{:.4f},{:.6f}\n",
                           r.interval, r.soc_start_mwh, a.reserve_mw[0], a.reserve_mw[1], a.reserve_mw[2],
                           a.reserve_mw[3], a.spot_buy_mw, a.spot_sell_mw, a.spot_buy_mwh, a.spot_sell_mwh,
                           a.activation_up_mwh, a.activation_down_mwh, r.revenue.net(), r.soc_end_mwh);
    }
    return out;
}

std::string revenue_report_markdown(const SimulationResult& result, const BatterySpec& battery,
                                    const DkkPerEur& rate) {
    const auto& rep = result.report;
    std::string out = fmt::format("# Operating result for a {} MW / {} MWh battery\n\n", battery.rated_power(),
                                  battery.energy_capacity());
    out += fmt::format("Intervals simulated: {}. Round-trip efficiency {:.3f}.\n\n", result.log.size(),
                       battery.round_trip_efficiency());
    out += "| Component | EUR | DKK |\n|---|---:|---:|\n";
    auto row = [&](std::string_view label, const Money& m) {
        out += fmt::format("| {} | {} | {} |\n", label, m.format(), convert(m, rate).format());
    };
    for (std::size_t i = 0; i < kReserveProducts.size(); ++i) row(to_string(kReserveProducts[i]), rep.services[i]);
    row("Export revenue", rep.export_revenue);
    row("Import cost", -rep.import_cost);
    row("**Net operating result**", rep.net);
    const Money per_mw = Money::from_decimal(rep.net.to_double() / battery.rated_power(), Currency::EUR);
    out += fmt::format("\nNet per MW: {}. DKK at {:.4f} DKK/EUR.\n", per_mw.format(), rate.value());
    out += fmt::format("SoC start {:.4f} MWh, end {:.4f} MWh.\n", result.soc_trajectory.front(),
                       result.soc_trajectory.back());
    return out;
}

std::string revenue_report_json(const SimulationResult& result, const BatterySpec& battery) {
    const auto& rep = result.report;
    nlohmann::ordered_json j;
    j["rated_power_mw"] = battery.rated_power();
    j["energy_capacity_mwh"] = battery.energy_capacity();
    j["round_trip_efficiency"] = battery.round_trip_efficiency();
    j["intervals"] = result.log.size();
    j["currency"] = "EUR";
    nlohmann::ordered_json services;
    for (std::size_t i = 0; i < kReserveProducts.size(); ++i)
        services[std::string(to_string(kReserveProducts[i]))] = rep.services[i].to_double();
    j["services"] = services;
    j["export_revenue"] = rep.export_revenue.to_double();
    j["import_cost"] = rep.import_cost.to_double();
    j["net"] = rep.net.to_double();
    j["net_per_mw"] = rep.net.to_double() / battery.rated_power();
    j["soc_start_mwh"] = result.soc_trajectory.front();
    j["soc_end_mwh"] = result.soc_trajectory.back();
    return j.dump(2) + "\n";
}

}  // namespace bess
