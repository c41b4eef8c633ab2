#pragma once

// Test-only generators with known ground truth.

#include <cmath>
#include <vector>

#include "bess/commissioning.hpp"

namespace bess::testing {

struct CycleProfile {
    int cycles = 3;
    double charge_mwh = 1.0;
    double efficiency = 0.9;
    double charge_mw = 0.5;
    double discharge_mw = 0.5;
    double ramp_s = 300.0;
    double rest_s = 600.0;
    double sample_period_s = 60.0;
    bool label_cycles = false;
};

/// Piecewise-linear trapezoids: ramp up, plateau, ramp down. Each block's
/// energy is power × (plateau + ramp), so discharge/charge equals `efficiency`
/// exactly in continuous time.
inline std::vector<CycleSample> cycle_samples(const CycleProfile& p) {
    struct Block {
        double start, ramp, plateau, power;
        int cycle;
    };
    std::vector<Block> blocks;
    double t = p.rest_s;
    for (int c = 0; c < p.cycles; ++c) {
        const double charge_plateau = p.charge_mwh * 3600.0 / p.charge_mw - p.ramp_s;
        blocks.push_back({t, p.ramp_s, charge_plateau, p.charge_mw, c});
        t += 2 * p.ramp_s + charge_plateau + p.rest_s;
        const double discharge_plateau = p.efficiency * p.charge_mwh * 3600.0 / p.discharge_mw - p.ramp_s;
        blocks.push_back({t, p.ramp_s, discharge_plateau, -p.discharge_mw, c});
        t += 2 * p.ramp_s + discharge_plateau + p.rest_s;
    }
    const double end = t;

    auto power_at = [&](double time, int& cycle) {
        for (const auto& b : blocks) {
            const double x = time - b.start;
            if (x < 0 || x > 2 * b.ramp + b.plateau) continue;
            cycle = b.cycle;
            if (x < b.ramp) return b.power * x / b.ramp;
            if (x <= b.ramp + b.plateau) return b.power;
            return b.power * (2 * b.ramp + b.plateau - x) / b.ramp;
        }
        return 0.0;
    };

    std::vector<CycleSample> samples;
    int cycle = 0;
    for (double time = 0.0; time <= end + 1e-9; time += p.sample_period_s) {
        const double power = power_at(time, cycle);
        samples.push_back({time, power, p.label_cycles ? cycle : -1});
    }
    return samples;
}

inline std::vector<CycleSample> rescale_time(std::vector<CycleSample> samples, double factor) {
    for (auto& s : samples) s.time_s *= factor;
    return samples;
}

}  // namespace bess::testing
