#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/. Output is deterministic."""

import argparse
import math
import random
from pathlib import Path

HOURS = 8760
HEADER = "fcr_n,fcr_d_up,fcr_d_down,ffr,spot"


def constant_fcrn(path: Path) -> None:
    rows = [HEADER] + ["10,0,0,0,0"] * HOURS
    path.write_text("\n".join(rows) + "\n")


def peak_like(path: Path) -> None:
    # Scarcity-year reserve prices: FCR-D well paid in both directions and
    # above spot, so committing capacity beats trading energy. A few
    # shallow negative-price hours.
    rng = random.Random(2022)
    rows = [HEADER]
    for h in range(HOURS):
        hour = h % 24
        season = math.cos(2 * math.pi * h / HOURS)
        daily = math.sin(2 * math.pi * (hour - 6) / 24)
        d_up = max(35.0, 52 + 8 * season + 6 * daily + rng.gauss(0, 6))
        d_down = max(30.0, 46 + 5 * season - 4 * daily + rng.gauss(0, 5))
        fcr_n = max(0.0, 30 + 10 * season + rng.gauss(0, 8))
        ffr = max(0.0, rng.gauss(4, 3)) if hour in (2, 3, 4) else 0.0
        spot = min(30.0, max(0.0, 18 + 6 * season + 6 * daily + rng.gauss(0, 4)))
        if rng.random() < 0.03:
            spot = -rng.uniform(1, 20)
        rows.append(f"{fcr_n:.2f},{d_up:.2f},{d_down:.2f},{ffr:.2f},{spot:.2f}")
    path.write_text("\n".join(rows) + "\n")


def cycle_log(path: Path, efficiency: float, cycles: int, period_s: float = 60.0) -> None:
    # Trapezoidal C/2 blocks on a 1 MW / 1 MWh unit, 1 MWh drawn per cycle.
    charge_mwh, power, ramp, rest = 1.0, 0.5, 300.0, 600.0
    blocks = []
    t = rest
    for c in range(cycles):
        for sign, energy in ((1.0, charge_mwh), (-1.0, efficiency * charge_mwh)):
            plateau = energy * 3600.0 / power - ramp
            blocks.append((t, plateau, sign * power, c))
            t += 2 * ramp + plateau + rest
    end = t

    def sample(time):
        for start, plateau, p, c in blocks:
            x = time - start
            if 0 <= x <= 2 * ramp + plateau:
                if x < ramp:
                    return p * x / ramp, c
                if x <= ramp + plateau:
                    return p, c
                return p * (2 * ramp + plateau - x) / ramp, c
        return 0.0, None

    rows = ["time_s,power_mw"]
    k = 0
    while k * period_s <= end:
        p, _ = sample(k * period_s)
        rows.append(f"{k * period_s:.0f},{p:.6f}")
        k += 1
    path.write_text("\n".join(rows) + "\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    constant_fcrn(args.out / "prices_constant_fcrn.csv")
    peak_like(args.out / "prices_peak_like.csv")
    cycle_log(args.out / "cycle_log_eta090.csv", 0.90, 3)
    cycle_log(args.out / "cycle_log_two_cycles.csv", 0.90, 2)


if __name__ == "__main__":
    main()
