import copy

import pytest

from wsansim.scenario import scenario_from_dict

# single fire 150 m from its nearest sensor (s8 at (50, 250)); the point
# necessarily lies outside the 400 m square, which the validator allows
# with a warning
REFERENCE_DOC = {
    "name": "reference",
    "grid": {"n": 4, "r": 50.0},
    "topology": {"kind": "semi_automatic"},
    "fire_events": [{"x": -100.0, "y": 250.0, "speed": 1.0, "t0": 0.0}],
    "network": {
        "wsan_latency_s": 0.005,
        "cloud_latency_s": 0.05,
        "drop_probability": 0.0,
        "seed": 1,
    },
    "actors": {"speed": 5.0, "service_time": 10.0},
    "sensing": {"period": 1.0},
    "subscriptions": [
        {"subscriber": "monitor", "topic_filter": "wsan/reference/quadrant/+/fire", "period": 10.0}
    ],
    "horizon": 200.0,
}


def make_doc(**overrides) -> dict:
    doc = copy.deepcopy(REFERENCE_DOC)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(doc.get(key), dict):
            doc[key] = {**doc[key], **value}
        else:
            doc[key] = value
    return doc


@pytest.fixture
def reference_scenario():
    return scenario_from_dict(make_doc())
