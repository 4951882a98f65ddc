#!/usr/bin/env python3
"""Sweep the packet-drop probability and watch delivery statistics and
containment degrade. Each point is averaged over several seeds."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from wsansim.engine import run_scenario
from wsansim.scenario import scenario_from_dict

BASE = {
    "name": "sweep",
    "grid": {"n": 4, "r": 50.0},
    "fire_events": [
        {"x": 60.0, "y": 70.0, "speed": 1.5, "t0": 0.0},
        {"x": 340.0, "y": 310.0, "speed": 1.0, "t0": 5.0},
    ],
    "topology": {"kind": "semi_automatic"},
    "actors": {"speed": 5.0, "service_time": 15.0},
    "sensing": {"period": 1.0},
    "horizon": 300.0,
}

SEEDS = list(range(10))


def main():
    print(f"{'p(drop)':>8s} {'sent':>6s} {'delivered':>10s} {'dropped':>8s} {'contained':>10s}")
    for p in (0.0, 0.1, 0.2, 0.4, 0.6, 0.8):
        sent = delivered = dropped = contained = 0
        for seed in SEEDS:
            doc = dict(BASE, network={"wsan_latency_s": 0.005, "cloud_latency_s": 0.05,
                                      "drop_probability": p, "seed": seed})
            result = run_scenario(scenario_from_dict(doc))
            for stats in result.metrics.link_stats.values():
                sent += stats.sent
                delivered += stats.delivered
                dropped += stats.dropped
            contained += sum(1 for f in result.metrics.fires.values() if f.contained)
        runs = len(SEEDS)
        print(f"{p:8.2f} {sent / runs:6.1f} {delivered / runs:10.1f} "
              f"{dropped / runs:8.1f} {contained}/{2 * runs:d}".rjust(0))


if __name__ == "__main__":
    main()
