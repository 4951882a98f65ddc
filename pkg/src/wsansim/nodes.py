"""Node state machines: beacon sensor, cluster head, actor, integration interface.

Nodes are deterministic state machines advanced by the engine's event
loop; they never share mutable state. Time arguments accept floats in
unit math and exact rationals inside the engine; helper conversions keep
rational arithmetic exact when the caller uses it.
"""

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .fire import FireState
from .geometry import (
    GridSpec,
    actor_heading,
    actor_travel_distance,
    quadrant_of,
    OutOfAreaError,
)
from .protocol import BeaconNodePacket, ClusterHeadNodePacket, encode_cluster_head
from .pubsub import Update, detection_topic


class ConfigurationError(ValueError):
    """Topology references a node that was never deployed."""


class RoutingError(ValueError):
    """A packet reached a node it was not addressed to."""


def _like(value: float, reference):
    """Lift a float into the arithmetic domain of `reference` (exact for rationals)."""
    if isinstance(reference, Fraction):
        return Fraction(value)
    return value


class DetectionTracker:
    """Clusters detections into fires by spatial proximity.

    A report in the same quadrant within `link_radius` of any point of a
    known fire joins that fire (the front keeps reaching sensors farther
    from the first report, so clusters grow by union). One dispatch per
    cluster within `window` (None = forever), mirroring the wire packets
    carrying no fire identifier.
    """

    def __init__(self, link_radius: float, window=None):
        self.link_radius = link_radius
        self.window = window
        self._clusters: list[tuple[int, list[tuple[float, float]], str]] = []
        self._dispatched: dict[str, object] = {}

    def classify(self, qno: int, point: tuple[float, float]) -> str:
        for cqno, points, key in self._clusters:
            if cqno != qno:
                continue
            if any(math.hypot(point[0] - x, point[1] - y) <= self.link_radius
                   for x, y in points):
                points.append(point)
                return key
        key = f"q{qno}-c{len(self._clusters)}"
        self._clusters.append((qno, [point], key))
        return key

    def should_dispatch(self, key: str, t) -> bool:
        last = self._dispatched.get(key)
        if last is None:
            return True
        if self.window is None:
            return False
        return t - last >= self.window

    def mark_dispatched(self, key: str, t) -> None:
        self._dispatched[key] = t


class BeaconNode:
    """Grid sensor: samples periodically, reports each fire at most once."""

    def __init__(self, node_id: int, position: tuple[float, float], chno_assigned: int,
                 sensing_period: float, sensing_range: float):
        self.id = node_id
        self.position = position
        self.chno_assigned = chno_assigned
        self.sensing_period = sensing_period
        self.sensing_range = sensing_range
        self.reported: set[str] = set()
        self.last_report: Optional[str] = None

    def on_sample(self, fire: FireState, t) -> Optional[BeaconNodePacket]:
        """Emit a report when the fire front is within sensing range.

        Called at sensing ticks. Contained fires no longer raise the
        phenomenon and are skipped.
        """
        ev = fire.event
        if ev.fire_id in self.reported or t < ev.t0 or fire.contained:
            return None
        dist = math.hypot(self.position[0] - ev.ignition[0], self.position[1] - ev.ignition[1])
        radius = ev.speed * float(t - ev.t0)
        if dist - radius > self.sensing_range:
            return None
        self.reported.add(ev.fire_id)
        self.last_report = ev.fire_id
        return BeaconNodePacket(xc=self.position[0], yc=self.position[1], chno=self.chno_assigned)


MODE_DIRECT = "direct"
MODE_CLOUD_GATED = "cloud-gated"


@dataclass
class ChBeaconOutcome:
    """What a cluster head decided about one beacon report."""

    warning: Optional[str] = None
    monitor_update: Optional[Update] = None
    command: Optional[ClusterHeadNodePacket] = None  # direct mode, novel fire
    detection_update: Optional[Update] = None  # cloud-gated request, novel fire
    pending_token: Optional[str] = None


class ClusterHead:
    """Per-quadrant aggregator: maps coordinates to a quadrant, dispatches its actor."""

    def __init__(self, chno: int, position: tuple[float, float], spec: GridSpec,
                 scenario_name: str, actor_for_quadrant: dict[int, int],
                 mode: str = MODE_DIRECT, dedup_window=None):
        self.chno = chno
        self.position = position
        self.spec = spec
        self.scenario_name = scenario_name
        self.actor_for_quadrant = actor_for_quadrant
        self.mode = mode
        # same-quadrant reports within 2r of a known fire are duplicates
        self.tracker = DetectionTracker(link_radius=2 * spec.r, window=dedup_window)
        self._pending: dict[str, ClusterHeadNodePacket] = {}

    def on_beacon(self, packet: BeaconNodePacket, t) -> ChBeaconOutcome:
        point = (packet.xc, packet.yc)
        try:
            qno = quadrant_of(point, self.spec)
        except OutOfAreaError:
            return ChBeaconOutcome(warning=f"beacon coordinates {point} outside area, dropped")
        aa = self.actor_for_quadrant.get(qno)
        if aa is None:
            raise ConfigurationError(f"no actor deployed for quadrant {qno}")

        command = ClusterHeadNodePacket(xc=packet.xc, yc=packet.yc, qno=qno, aa=aa)
        monitor = Update(
            topic=detection_topic(self.scenario_name, qno),
            payload=encode_cluster_head(command),
            published_at=t,
        )

        key = self.tracker.classify(qno, point)
        if not self.tracker.should_dispatch(key, t):
            return ChBeaconOutcome(monitor_update=monitor)
        self.tracker.mark_dispatched(key, t)

        if self.mode == MODE_CLOUD_GATED:
            token = f"ch{self.chno}-{key}"
            self._pending[token] = command
            return ChBeaconOutcome(
                monitor_update=monitor,
                detection_update=monitor,
                pending_token=token,
            )
        return ChBeaconOutcome(monitor_update=monitor, command=command)

    def on_authorization(self, token: str, granted: bool) -> Optional[ClusterHeadNodePacket]:
        """Release (or discard) a dispatch held for cloud approval."""
        command = self._pending.pop(token, None)
        return command if granted else None


class ActorPhase(Enum):
    IDLE = "idle"
    MOVING = "moving"
    EXTINGUISHING = "extinguishing"


@dataclass
class MotionPlan:
    target: tuple[float, float]
    distance: float
    heading: Optional[float]  # None when already at the target
    eta: object  # time


@dataclass
class ActorCommandOutcome:
    plan: Optional[MotionPlan] = None
    queued: bool = False
    extinguish_until: Optional[object] = None  # set when already at target


class Actor:
    """Mobile extinguisher: Idle -> Moving -> Extinguishing -> Idle."""

    def __init__(self, aa: int, home: tuple[float, float], speed: float,
                 extinguish_service_time: float):
        self.aa = aa
        self.home = home
        self.current = home
        self.speed = speed
        self.extinguish_service_time = extinguish_service_time
        self.phase = ActorPhase.IDLE
        self.queue: deque[tuple[ClusterHeadNodePacket, object]] = deque()
        self.moving_from: Optional[tuple[float, float]] = None
        self.moving_since = None
        self.target: Optional[tuple[float, float]] = None
        self.eta = None
        self.until = None
        self.active_meta = None

    def on_command(self, packet: ClusterHeadNodePacket, t, meta=None) -> ActorCommandOutcome:
        if packet.aa != self.aa:
            raise RoutingError(f"command for actor {packet.aa} delivered to actor {self.aa}")
        if self.phase is not ActorPhase.IDLE:
            self.queue.append((packet, meta))
            return ActorCommandOutcome(queued=True)
        return ActorCommandOutcome(plan=self._start(packet, t, meta))

    def _start(self, packet: ClusterHeadNodePacket, t, meta) -> MotionPlan:
        target = (packet.xc, packet.yc)
        dx = target[0] - self.current[0]
        dy = target[1] - self.current[1]
        distance = actor_travel_distance(dx, dy)
        self.active_meta = meta
        self.target = target
        if distance == 0.0:
            # nothing to travel: extinguish on the spot
            self.phase = ActorPhase.EXTINGUISHING
            self.until = t + _like(self.extinguish_service_time, t)
            self.eta = t
            return MotionPlan(target=target, distance=0.0, heading=None, eta=t)
        heading = actor_heading(dx, dy)
        eta = t + _like(distance, t) / _like(self.speed, t)
        self.phase = ActorPhase.MOVING
        self.moving_from = self.current
        self.moving_since = t
        self.eta = eta
        return MotionPlan(target=target, distance=distance, heading=heading, eta=eta)

    def on_arrival(self, t):
        """Reach the target: start extinguishing; returns the service end time."""
        if self.phase is not ActorPhase.MOVING or t != self.eta:
            raise RuntimeError(f"actor {self.aa} arrival signaled at {t} while {self.phase}")
        self.current = self.target
        self.moving_from = None
        self.moving_since = None
        self.phase = ActorPhase.EXTINGUISHING
        self.until = t + _like(self.extinguish_service_time, t)
        return self.until

    def on_extinguish_complete(self, t):
        """Finish the task; returns (finished meta, next queued command or None)."""
        finished = self.active_meta
        self.active_meta = None
        self.phase = ActorPhase.IDLE
        self.target = None
        self.eta = None
        self.until = None
        next_cmd = self.queue.popleft() if self.queue else None
        return finished, next_cmd

    def position_at(self, t) -> tuple[float, float]:
        """Interpolated position; lies on the straight segment while moving."""
        if self.phase is not ActorPhase.MOVING:
            return self.current
        span = self.eta - self.moving_since
        progress = float((t - self.moving_since) / span) if span else 1.0
        progress = min(1.0, max(0.0, progress))
        fx, fy = self.moving_from
        tx, ty = self.target
        return (fx + progress * (tx - fx), fy + progress * (ty - fy))


PROCESS_AT_INTERFACE = "interface"
PROCESS_AT_ACTOR = "actor"


@dataclass
class InterfaceOutcome:
    accepted: bool
    command: Optional[ClusterHeadNodePacket] = None  # processing at the interface
    raw_forward: Optional[BeaconNodePacket] = None  # processing at the actor
    forward_aa: Optional[int] = None
    monitor_update: Optional[Update] = None
    warning: Optional[str] = None


class IntegrationInterface:
    """Cloud-resident filter/store/forward stage of the automatic topologies."""

    def __init__(self, spec: GridSpec, scenario_name: str,
                 actor_for_quadrant: dict[int, int],
                 filter_rule: Callable[[BeaconNodePacket], bool] = lambda _p: True,
                 processing_site: str = PROCESS_AT_INTERFACE,
                 dedup_window=None):
        if processing_site not in (PROCESS_AT_INTERFACE, PROCESS_AT_ACTOR):
            raise ConfigurationError(f"unknown processing site {processing_site!r}")
        self.spec = spec
        self.scenario_name = scenario_name
        self.actor_for_quadrant = actor_for_quadrant
        self.filter_rule = filter_rule
        self.processing_site = processing_site
        self.tracker = DetectionTracker(link_radius=2 * spec.r, window=dedup_window)
        self.store: list[tuple[object, BeaconNodePacket]] = []
        self.rejected_count = 0

    def on_data(self, packet: BeaconNodePacket, t) -> InterfaceOutcome:
        if not self.filter_rule(packet):
            self.rejected_count += 1
            return InterfaceOutcome(accepted=False)
        self.store.append((t, packet))

        point = (packet.xc, packet.yc)
        try:
            qno = quadrant_of(point, self.spec)
        except OutOfAreaError:
            return InterfaceOutcome(
                accepted=True,
                warning=f"accepted data with out-of-area coordinates {point}, not forwarded",
            )
        aa = self.actor_for_quadrant.get(qno)
        if aa is None:
            raise ConfigurationError(f"no actor deployed for quadrant {qno}")

        command = ClusterHeadNodePacket(xc=packet.xc, yc=packet.yc, qno=qno, aa=aa)
        monitor = Update(
            topic=detection_topic(self.scenario_name, qno),
            payload=encode_cluster_head(command),
            published_at=t,
        )

        if self.processing_site == PROCESS_AT_ACTOR:
            # the actor has its own processing unit; it deduplicates and plans
            return InterfaceOutcome(
                accepted=True, raw_forward=packet, forward_aa=aa, monitor_update=monitor
            )

        key = self.tracker.classify(qno, point)
        if not self.tracker.should_dispatch(key, t):
            return InterfaceOutcome(accepted=True, monitor_update=monitor)
        self.tracker.mark_dispatched(key, t)
        return InterfaceOutcome(
            accepted=True, command=command, forward_aa=aa, monitor_update=monitor
        )


class ActorSideProcessor:
    """Raw-data processing unit used when actors receive beacon packets directly."""

    def __init__(self, spec: GridSpec, aa: int, dedup_window=None):
        self.spec = spec
        self.aa = aa
        self.tracker = DetectionTracker(link_radius=2 * spec.r, window=dedup_window)

    def process(self, packet: BeaconNodePacket, t) -> Optional[ClusterHeadNodePacket]:
        """Turn a raw beacon report into a self-addressed command, once per fire."""
        point = (packet.xc, packet.yc)
        qno = quadrant_of(point, self.spec)
        if qno != self.aa:
            raise RoutingError(
                f"raw data for quadrant {qno} reached the actor of quadrant {self.aa}"
            )
        key = self.tracker.classify(qno, point)
        if not self.tracker.should_dispatch(key, t):
            return None
        self.tracker.mark_dispatched(key, t)
        return ClusterHeadNodePacket(xc=packet.xc, yc=packet.yc, qno=qno, aa=self.aa)
