"""Deterministic discrete-event simulator for cloud-integrated WSANs.

Models a grid-deployed sensor/actor network with cluster-head routing,
a cloud publish/subscribe layer, and a forest-fire detection and
extinguishing case study.
"""

__version__ = "0.1.0"

from .geometry import (
    GridSpec,
    Deployment,
    derive_cell_side,
    node_count_center,
    node_count_intersection,
    plan_deployment,
    quadrant_of,
    actor_travel_distance,
    actor_heading,
)
from .protocol import (
    BeaconNodePacket,
    ClusterHeadNodePacket,
    encode_beacon,
    decode_beacon,
    encode_cluster_head,
    decode_cluster_head,
)
from .fire import FireEvent, FireState, fire_radius, first_detection_time, burned_area
from .pubsub import Broker, Subscription, Update
from .topology import TopologyKind, Wiring, build_topology
from .engine import Engine, RunResult
from .scenario import Scenario, load_scenario, ScenarioValidationError

__all__ = [
    "GridSpec",
    "Deployment",
    "derive_cell_side",
    "node_count_center",
    "node_count_intersection",
    "plan_deployment",
    "quadrant_of",
    "actor_travel_distance",
    "actor_heading",
    "BeaconNodePacket",
    "ClusterHeadNodePacket",
    "encode_beacon",
    "decode_beacon",
    "encode_cluster_head",
    "decode_cluster_head",
    "FireEvent",
    "FireState",
    "fire_radius",
    "first_detection_time",
    "burned_area",
    "Broker",
    "Subscription",
    "Update",
    "TopologyKind",
    "Wiring",
    "build_topology",
    "Engine",
    "RunResult",
    "Scenario",
    "load_scenario",
    "ScenarioValidationError",
]
