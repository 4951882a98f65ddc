#!/usr/bin/env python3
"""Push the same fire through all three integration topologies and compare
how the data path shapes the response latency."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from wsansim.engine import run_scenario
from wsansim.scenario import scenario_from_dict

BASE = {
    "name": "compare",
    "grid": {"n": 4, "r": 50.0},
    "fire_events": [{"x": 120.0, "y": 330.0, "speed": 2.0, "t0": 0.0}],
    "network": {"wsan_latency_s": 0.005, "cloud_latency_s": 0.05,
                "drop_probability": 0.0, "seed": 1},
    "actors": {"speed": 5.0, "service_time": 10.0},
    "sensing": {"period": 1.0},
    "horizon": 120.0,
}

TOPOLOGIES = [
    ("semi-automatic (direct)", {"kind": "semi_automatic"}),
    ("semi-automatic (cloud-gated)", {"kind": "semi_automatic", "cloud_gated": True}),
    ("automatic, in the cloud", {"kind": "automatic_in_cloud"}),
    ("automatic, with the cloud", {"kind": "automatic_with_cloud"}),
]


def main():
    print(f"{'topology':32s} {'detection':>10s} {'response':>10s} {'contained':>10s}")
    for label, topology in TOPOLOGIES:
        doc = dict(BASE, topology=topology)
        result = run_scenario(scenario_from_dict(doc))
        fm = result.metrics.fires["f0"]
        print(f"{label:32s} {float(fm.detection_latency):10.3f} "
              f"{float(fm.response_latency):10.3f} "
              f"{float(fm.containment_time):10.3f}")


if __name__ == "__main__":
    main()
