"""Scenario files: schema, loading, and validation.

Scenarios are JSON with SI units (meters, seconds) and an exact field
schema; unknown fields are rejected to catch typos. Validation collects
every violation with its field path before giving up.

Schema (* = required):

  name                  topic-safe string, default "scenario"
  grid*                 {n: even int >= 2, r: meters > 0}
  topology*             {kind*: semi_automatic | automatic_in_cloud |
                               automatic_with_cloud,
                         cloud_gated: bool (semi_automatic only),
                         dispatch_policy: default | subscription-required,
                         direct_actor_variation: bool (with-cloud only),
                         processing_site: interface | actor,
                         filter: accept_all | reject_all}
  fire_events           [{x, y, speed >= 0, t0 >= 0}], default []
  network               {wsan_latency_s >= 0, cloud_latency_s >= 0,
                         drop_probability in [0, 1), seed: int}
  actors                {speed > 0, service_time >= 0}
  sensing               {period > 0}
  subscriptions         [{subscriber, topic_filter, period > 0}], default []
  horizon*              seconds > 0

An ignition outside the monitored area is allowed with a warning: the
front simply reaches the grid late.
"""

import hashlib
import json
import math
import re
from dataclasses import dataclass, field

from .geometry import GridSpec, GridSpecError
from .topology import TopologyKind

_NAME_RE = re.compile(r"^[A-Za-z0-9_-]+$")

DISPATCH_POLICIES = ("default", "subscription-required")
PROCESSING_SITES = ("interface", "actor")
DATA_FILTERS = ("accept_all", "reject_all")


class ScenarioValidationError(ValueError):
    """Carries every violation found, each prefixed with its field path."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))

    def report(self) -> str:
        return "\n".join(f"  - {v}" for v in self.violations)


@dataclass(frozen=True)
class GridConfig:
    n: int
    r: float


@dataclass(frozen=True)
class TopologyConfig:
    kind: TopologyKind
    cloud_gated: bool = False
    dispatch_policy: str = "default"
    direct_actor_variation: bool = False
    processing_site: str = "interface"
    data_filter: str = "accept_all"


@dataclass(frozen=True)
class FireConfig:
    x: float
    y: float
    speed: float
    t0: float


@dataclass(frozen=True)
class NetworkConfig:
    wsan_latency_s: float = 0.005
    cloud_latency_s: float = 0.05
    drop_probability: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class ActorsConfig:
    speed: float = 1.0
    service_time: float = 0.0


@dataclass(frozen=True)
class SensingConfig:
    period: float = 1.0


@dataclass(frozen=True)
class SubscriptionConfig:
    subscriber: str
    topic_filter: str
    period: float


@dataclass
class Scenario:
    name: str
    grid: GridConfig
    topology: TopologyConfig
    horizon: float
    fire_events: list[FireConfig] = field(default_factory=list)
    network: NetworkConfig = field(default_factory=NetworkConfig)
    actors: ActorsConfig = field(default_factory=ActorsConfig)
    sensing: SensingConfig = field(default_factory=SensingConfig)
    subscriptions: list[SubscriptionConfig] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def canonical_dict(self, include_seed: bool = False) -> dict:
        """Stable content form; the RNG seed is reported separately in the
        trace header and excluded here so zero-drop runs hash alike."""
        doc = {
            "name": self.name,
            "grid": {"n": self.grid.n, "r": self.grid.r},
            "topology": {
                "kind": self.topology.kind.value,
                "cloud_gated": self.topology.cloud_gated,
                "dispatch_policy": self.topology.dispatch_policy,
                "direct_actor_variation": self.topology.direct_actor_variation,
                "processing_site": self.topology.processing_site,
                "filter": self.topology.data_filter,
            },
            "fire_events": [
                {"x": f.x, "y": f.y, "speed": f.speed, "t0": f.t0}
                for f in self.fire_events
            ],
            "network": {
                "wsan_latency_s": self.network.wsan_latency_s,
                "cloud_latency_s": self.network.cloud_latency_s,
                "drop_probability": self.network.drop_probability,
            },
            "actors": {
                "speed": self.actors.speed,
                "service_time": self.actors.service_time,
            },
            "sensing": {"period": self.sensing.period},
            "subscriptions": [
                {"subscriber": s.subscriber, "topic_filter": s.topic_filter, "period": s.period}
                for s in self.subscriptions
            ],
            "horizon": self.horizon,
        }
        if include_seed:
            doc["network"]["seed"] = self.network.seed
        return doc

    def content_hash(self) -> str:
        blob = json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class _Validator:
    def __init__(self):
        self.errors: list[str] = []
        self.warnings: list[str] = []

    def error(self, path: str, message: str) -> None:
        self.errors.append(f"{path}: {message}")

    def warn(self, path: str, message: str) -> None:
        self.warnings.append(f"{path}: {message}")

    def check_keys(self, path: str, doc: dict, allowed: set[str]) -> None:
        for key in doc:
            if key not in allowed:
                self.error(f"{path}.{key}" if path else key, "unknown field")

    def number(self, path: str, doc: dict, key: str, default=None, *,
               minimum=None, exclusive_minimum=None, below_one=False):
        full = f"{path}.{key}" if path else key
        if key not in doc:
            if default is None:
                self.error(full, "required field missing")
            return default
        value = doc[key]
        if not _is_number(value) or not math.isfinite(value):
            self.error(full, f"must be a finite number, got {value!r}")
            return default
        if minimum is not None and value < minimum:
            self.error(full, f"must be >= {minimum}, got {value}")
            return default
        if exclusive_minimum is not None and value <= exclusive_minimum:
            self.error(full, f"must be > {exclusive_minimum}, got {value}")
            return default
        if below_one and value >= 1:
            self.error(full, f"must be < 1, got {value}")
            return default
        return float(value)


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a validated Scenario; raises with the full violation list."""
    v = _Validator()
    if not isinstance(doc, dict):
        raise ScenarioValidationError(["scenario: must be a JSON object"])

    v.check_keys("", doc, {
        "name", "grid", "topology", "fire_events", "network",
        "actors", "sensing", "subscriptions", "horizon",
    })

    name = doc.get("name", "scenario")
    if not isinstance(name, str) or not _NAME_RE.match(name or ""):
        v.error("name", "must match [A-Za-z0-9_-]+ (it is embedded in topics)")
        name = "scenario"

    # grid
    grid = GridConfig(n=2, r=1.0)
    gdoc = doc.get("grid")
    if not isinstance(gdoc, dict):
        v.error("grid", "required object missing")
    else:
        v.check_keys("grid", gdoc, {"n", "r"})
        n = gdoc.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            v.error("grid.n", f"must be an integer, got {n!r}")
            n = 2
        r = v.number("grid", gdoc, "r", default=None, exclusive_minimum=0)
        if r is not None:
            try:
                GridSpec(n=n, r=r)
                grid = GridConfig(n=n, r=r)
            except GridSpecError as exc:
                v.error("grid", str(exc))

    # topology
    topology = TopologyConfig(kind=TopologyKind.SEMI_AUTOMATIC)
    tdoc = doc.get("topology")
    if not isinstance(tdoc, dict):
        v.error("topology", "required object missing")
    else:
        v.check_keys("topology", tdoc, {
            "kind", "cloud_gated", "dispatch_policy",
            "direct_actor_variation", "processing_site", "filter",
        })
        kind_raw = tdoc.get("kind")
        kind = TopologyKind.SEMI_AUTOMATIC
        try:
            kind = TopologyKind(kind_raw)
        except ValueError:
            v.error("topology.kind", f"must be one of {[k.value for k in TopologyKind]}, got {kind_raw!r}")
        cloud_gated = tdoc.get("cloud_gated", False)
        if not isinstance(cloud_gated, bool):
            v.error("topology.cloud_gated", "must be a boolean")
            cloud_gated = False
        if cloud_gated and kind is not TopologyKind.SEMI_AUTOMATIC:
            v.error("topology.cloud_gated", "only the semi_automatic kind has a cloud-gated controller")
        policy = tdoc.get("dispatch_policy", "default")
        if policy not in DISPATCH_POLICIES:
            v.error("topology.dispatch_policy", f"must be one of {DISPATCH_POLICIES}, got {policy!r}")
            policy = "default"
        variation = tdoc.get("direct_actor_variation", False)
        if not isinstance(variation, bool):
            v.error("topology.direct_actor_variation", "must be a boolean")
            variation = False
        if variation and kind is not TopologyKind.AUTOMATIC_WITH_CLOUD:
            v.error("topology.direct_actor_variation",
                    "only the automatic_with_cloud kind supports the direct actor link")
        site = tdoc.get("processing_site", "interface")
        if site not in PROCESSING_SITES:
            v.error("topology.processing_site", f"must be one of {PROCESSING_SITES}, got {site!r}")
            site = "interface"
        data_filter = tdoc.get("filter", "accept_all")
        if data_filter not in DATA_FILTERS:
            v.error("topology.filter", f"must be one of {DATA_FILTERS}, got {data_filter!r}")
            data_filter = "accept_all"
        topology = TopologyConfig(
            kind=kind, cloud_gated=cloud_gated, dispatch_policy=policy,
            direct_actor_variation=variation, processing_site=site, data_filter=data_filter,
        )

    # fire events
    fire_events: list[FireConfig] = []
    fdocs = doc.get("fire_events", [])
    if not isinstance(fdocs, list):
        v.error("fire_events", "must be a list")
        fdocs = []
    area_side = 2.0 * grid.r * grid.n
    for i, fdoc in enumerate(fdocs):
        path = f"fire_events[{i}]"
        if not isinstance(fdoc, dict):
            v.error(path, "must be an object")
            continue
        v.check_keys(path, fdoc, {"x", "y", "speed", "t0"})
        x = v.number(path, fdoc, "x")
        y = v.number(path, fdoc, "y")
        speed = v.number(path, fdoc, "speed", minimum=0.0)
        t0 = v.number(path, fdoc, "t0", minimum=0.0)
        if None in (x, y, speed, t0):
            continue
        if not (0 <= x < area_side and 0 <= y < area_side):
            v.warn(path, f"ignition ({x}, {y}) outside the monitored area "
                         f"[0, {area_side}) square; the front reaches sensors late")
        fire_events.append(FireConfig(x=x, y=y, speed=speed, t0=t0))

    # network
    network = NetworkConfig()
    ndoc = doc.get("network", {})
    if not isinstance(ndoc, dict):
        v.error("network", "must be an object")
    else:
        v.check_keys("network", ndoc, {"wsan_latency_s", "cloud_latency_s", "drop_probability", "seed"})
        wsan = v.number("network", ndoc, "wsan_latency_s", default=network.wsan_latency_s, minimum=0.0)
        cloud = v.number("network", ndoc, "cloud_latency_s", default=network.cloud_latency_s, minimum=0.0)
        drop = v.number("network", ndoc, "drop_probability", default=network.drop_probability,
                        minimum=0.0, below_one=True)
        seed = ndoc.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            v.error("network.seed", f"must be an integer, got {seed!r}")
            seed = 0
        network = NetworkConfig(wsan_latency_s=wsan, cloud_latency_s=cloud,
                                drop_probability=drop, seed=seed)

    # actors
    actors = ActorsConfig()
    adoc = doc.get("actors", {})
    if not isinstance(adoc, dict):
        v.error("actors", "must be an object")
    else:
        v.check_keys("actors", adoc, {"speed", "service_time"})
        speed = v.number("actors", adoc, "speed", default=actors.speed, exclusive_minimum=0.0)
        service = v.number("actors", adoc, "service_time", default=actors.service_time, minimum=0.0)
        actors = ActorsConfig(speed=speed, service_time=service)

    # sensing
    sensing = SensingConfig()
    sdoc = doc.get("sensing", {})
    if not isinstance(sdoc, dict):
        v.error("sensing", "must be an object")
    else:
        v.check_keys("sensing", sdoc, {"period"})
        period = v.number("sensing", sdoc, "period", default=sensing.period, exclusive_minimum=0.0)
        sensing = SensingConfig(period=period)

    # subscriptions
    subscriptions: list[SubscriptionConfig] = []
    subdocs = doc.get("subscriptions", [])
    if not isinstance(subdocs, list):
        v.error("subscriptions", "must be a list")
        subdocs = []
    for i, sub in enumerate(subdocs):
        path = f"subscriptions[{i}]"
        if not isinstance(sub, dict):
            v.error(path, "must be an object")
            continue
        v.check_keys(path, sub, {"subscriber", "topic_filter", "period"})
        subscriber = sub.get("subscriber")
        topic_filter = sub.get("topic_filter")
        if not isinstance(subscriber, str) or not subscriber:
            v.error(f"{path}.subscriber", "must be a non-empty string")
            continue
        if not isinstance(topic_filter, str) or not topic_filter:
            v.error(f"{path}.topic_filter", "must be a non-empty string")
            continue
        period = v.number(path, sub, "period", exclusive_minimum=0.0)
        if period is None:
            continue
        subscriptions.append(SubscriptionConfig(
            subscriber=subscriber, topic_filter=topic_filter, period=period))

    horizon = v.number("", doc, "horizon", exclusive_minimum=0.0)

    if v.errors:
        raise ScenarioValidationError(v.errors)

    return Scenario(
        name=name, grid=grid, topology=topology, horizon=horizon,
        fire_events=fire_events, network=network, actors=actors,
        sensing=sensing, subscriptions=subscriptions, warnings=v.warnings,
    )


def load_scenario(path: str) -> Scenario:
    """Parse and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioValidationError([f"file: cannot read {path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError([f"file: not valid JSON: {exc}"]) from exc
    return scenario_from_dict(doc)
