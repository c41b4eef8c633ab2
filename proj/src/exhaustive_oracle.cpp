#include "bess/exhaustive_oracle.hpp"

#include <cmath>
#include <fmt/format.h>
#include <map>
#include <stdexcept>

namespace bess {

namespace {

struct Move {
    int fcr_n, fcr_d_up, fcr_d_down, ffr, buy, sell;
};

struct Step {
    double revenue;
    double next_soc;
    Allocation allocation;
};

class Search {
public:
    Search(const BatterySpec& battery, const PriceSeries& series, const StrategyConfig& strategy)
        : battery_(battery), series_(series), strategy_(strategy) {
        units_ = static_cast<int>(std::lround(battery.rated_power() / strategy.step_mw));
        for (int n = 0; n <= units_; ++n)
            for (int du = 0; n + du <= units_; ++du)
                for (int f = 0; n + du + f <= units_; ++f)
                    for (int s = 0; n + du + f + s <= units_; ++s)
                        for (int dd = 0; n + dd <= units_; ++dd)
                            for (int b = 0; n + dd + b <= units_; ++b)
                                if (b == 0 || s == 0) moves_.push_back({n, du, dd, f, b, s});
    }

    double best(std::size_t t, double soc) {
        if (t == series_.size()) return 0.0;
        const auto key = std::make_pair(t, std::llround(soc * 1e9));
        if (auto it = memo_.find(key); it != memo_.end()) return it->second.first;

        double best_value = -INFINITY;
        Allocation best_move;
        for (const auto& m : moves_) {
            auto step = apply(t, soc, m);
            if (!step) continue;
            const double value = step->revenue + best(t + 1, step->next_soc);
            if (value > best_value) {
                best_value = value;
                best_move = step->allocation;
            }
        }
        memo_.emplace(key, std::make_pair(best_value, best_move));
        return best_value;
    }

    OracleResult run(double soc0) {
        OracleResult r;
        r.total_revenue = best(0, soc0);
        double soc = soc0;
        for (std::size_t t = 0; t < series_.size(); ++t) {
            const auto& chosen = memo_.at(std::make_pair(t, std::llround(soc * 1e9))).second;
            r.schedule.push_back(chosen);
            soc += battery_.charge_efficiency() * (chosen.spot_buy_mwh + chosen.activation_down_mwh) -
                   (chosen.spot_sell_mwh + chosen.activation_up_mwh) / battery_.discharge_efficiency();
            soc = std::clamp(soc, 0.0, battery_.energy_capacity());
        }
        return r;
    }

private:
    std::optional<Step> apply(std::size_t t, double soc, const Move& m) const {
        const double w = strategy_.step_mw;
        const double d = series_.interval_hours();
        const double eta_c = battery_.charge_efficiency();
        const double eta_d = battery_.discharge_efficiency();
        const double cap = battery_.energy_capacity();
        const double a = strategy_.activation_fraction * d * w;

        const double up_backing = (m.fcr_n + m.fcr_d_up + m.ffr) * w * strategy_.backing_hours;
        const double down_backing = (m.fcr_n + m.fcr_d_down) * w * strategy_.backing_hours;
        const double act_up = a * (m.fcr_d_up + m.ffr + m.fcr_n / 2.0);
        const double act_down = a * (m.fcr_d_down + m.fcr_n / 2.0);

        const double out_room = soc * eta_d - act_up - up_backing;
        const double in_room = (cap - soc) / eta_c - act_down - down_backing;
        if (out_room < -1e-9 || in_room < -1e-9) return std::nullopt;

        Step s;
        Allocation& al = s.allocation;
        al.reserve_mw = {m.fcr_n * w, m.fcr_d_up * w, m.fcr_d_down * w, m.ffr * w};
        al.spot_buy_mw = m.buy * w;
        al.spot_sell_mw = m.sell * w;
        al.spot_sell_mwh = m.sell > 0 ? std::min(m.sell * w * d, std::max(out_room, 0.0)) : 0.0;
        al.spot_buy_mwh = m.buy > 0 ? std::min(m.buy * w * d, std::max(in_room, 0.0)) : 0.0;
        al.activation_up_mwh = act_up;
        al.activation_down_mwh = act_down;

        const auto& p = series_[t];
        const double reservation = d * w * (p.fcr_n * m.fcr_n + p.fcr_d_up * m.fcr_d_up +
                                            p.fcr_d_down * m.fcr_d_down + p.ffr * m.ffr);
        const double exported = al.spot_sell_mwh + act_up;
        const double imported = al.spot_buy_mwh + act_down;
        s.revenue = reservation + p.spot * (exported - imported);
        s.next_soc = std::clamp(soc + eta_c * imported - exported / eta_d, 0.0, cap);
        return s;
    }

    const BatterySpec& battery_;
    const PriceSeries& series_;
    const StrategyConfig& strategy_;
    int units_ = 0;
    std::vector<Move> moves_;
    std::map<std::pair<std::size_t, long long>, std::pair<double, Allocation>> memo_;
};

}  // namespace

OracleResult exhaustive_oracle(const BatterySpec& battery, const PriceSeries& series, const StrategyConfig& strategy,
                               std::optional<double> initial_soc_mwh) {
    if (series.size() > kOracleMaxIntervals)
        throw std::invalid_argument(fmt::format("exhaustive oracle is limited to {} intervals, got {}",
                                                kOracleMaxIntervals, series.size()));
    strategy.validate(battery);
    const double soc0 = initial_soc_mwh.value_or(strategy.initial_soc_fraction * battery.energy_capacity());
    if (!(soc0 >= 0.0 && soc0 <= battery.energy_capacity()))
        throw std::invalid_argument(fmt::format("initial SoC {} MWh outside [0, {}]", soc0, battery.energy_capacity()));
    Search search(battery, series, strategy);
    return search.run(soc0);
}

}  // namespace bess
