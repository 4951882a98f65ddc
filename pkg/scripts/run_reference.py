#!/usr/bin/env python3
"""Run the reference fire scenario in direct and cloud-gated control modes
and print the latency chain of each, plus the exact gating overhead."""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from wsansim.engine import run_scenario
from wsansim.scenario import load_scenario

HERE = os.path.dirname(os.path.abspath(__file__))
SCENARIOS = os.path.join(HERE, "..", "scenarios")


def describe(label, result):
    fm = result.metrics.fires["f0"]
    print(f"{label}:")
    print(f"  detection latency   {float(fm.detection_latency):12.6f} s")
    print(f"  dispatch latency    {float(fm.dispatch_latency):12.6f} s")
    print(f"  response latency    {float(fm.response_latency):12.6f} s")
    print(f"  containment time    {float(fm.containment_time):12.6f} s")
    print(f"  burned area         {fm.burned_area_at_containment:12.1f} m^2")
    return fm


def main():
    direct = run_scenario(load_scenario(os.path.join(SCENARIOS, "reference.json")))
    gated = run_scenario(load_scenario(os.path.join(SCENARIOS, "cloud_gated.json")))

    fd = describe("direct dispatch", direct)
    fg = describe("cloud-gated dispatch", gated)

    overhead = fg.response_latency - fd.response_latency
    print(f"cloud gating overhead: {float(overhead):.6f} s "
          f"(exactly 2x cloud latency: {overhead == 2 * Fraction(0.05)})")


if __name__ == "__main__":
    main()
