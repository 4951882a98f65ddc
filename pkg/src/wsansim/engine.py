"""Deterministic discrete-event core: clock, queue, simulated network, trace.

Event timestamps are exact rationals internally so that periodic
deliveries, sensing ticks, and the detection-to-response latency chain
obey their arithmetic identities exactly; traces and metrics serialize
times as double-precision seconds. All randomness (packet drops) flows
from one seeded generator consumed in event order; a zero drop
probability consumes no randomness at all, which keeps zero-drop runs
seed-invariant.
"""

import heapq
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__ as _tool_version
from .fire import FireEvent, FireState, burned_area
from .geometry import GridSpec, plan_deployment, quadrant_of
from .nodes import (
    Actor,
    ActorSideProcessor,
    BeaconNode,
    ClusterHead,
    IntegrationInterface,
    MODE_CLOUD_GATED,
    MODE_DIRECT,
    PROCESS_AT_ACTOR,
)
from .protocol import (
    decode_beacon,
    decode_cluster_head,
    encode_beacon,
    encode_cluster_head,
)
from .pubsub import Broker, Subscription, Update, actor_status_topic
from .scenario import Scenario
from .topology import (
    BROKER,
    INTERFACE,
    LATENCY_WSAN_CLOUD,
    LATENCY_WSAN_LOCAL,
    Link,
    PORT_BEACON,
    PORT_COMMAND,
    PORT_PUBSUB,
    TopologyKind,
    Wiring,
    WiringError,
    actor_id,
    build_topology,
    cluster_head_id,
    sensor_id,
)

EVT_FIRE_IGNITION = "fire-ignition"
EVT_SENSING_TICK = "sensing-tick"
EVT_MESSAGE_DELIVERY = "message-delivery"
EVT_ACTOR_ARRIVAL = "actor-arrival"
EVT_EXTINGUISH_COMPLETE = "extinguish-complete"
EVT_PUBSUB_DELIVERY = "pubsub-delivery"

TRACE_FORMAT = "wsansim-trace-1"


class SchedulingError(RuntimeError):
    """An event was scheduled in the past; signals a logic bug."""


class EventQueue:
    """Priority queue ordered by (time, scheduling sequence)."""

    def __init__(self, start=Fraction(0)):
        self._heap: list[tuple[Fraction, int, str, tuple]] = []
        self._seq = 0
        self.clock = start

    def schedule(self, t, kind: str, payload: tuple = ()) -> None:
        if t < self.clock:
            raise SchedulingError(f"event {kind!r} at {t} is before current time {self.clock}")
        heapq.heappush(self._heap, (t, self._seq, kind, payload))
        self._seq += 1

    def pop(self) -> tuple[Fraction, str, tuple]:
        t, _seq, kind, payload = heapq.heappop(self._heap)
        self.clock = t
        return t, kind, payload

    def __len__(self) -> int:
        return len(self._heap)


@dataclass
class LinkClassStats:
    sent: int = 0
    delivered: int = 0
    dropped: int = 0


@dataclass
class FireMetrics:
    """Per-fire latency chain; times are exact rationals, None when the
    stage never happened within the run."""

    fire_id: str
    ignition: tuple[float, float]
    speed: float
    t0: float
    detection_latency: Optional[Fraction] = None
    dispatch_latency: Optional[Fraction] = None
    response_latency: Optional[Fraction] = None
    containment_time: Optional[Fraction] = None
    contained: bool = False
    burned_area_at_containment: Optional[float] = None


METRICS_COLUMNS = [
    "record",
    "fire_id",
    "ignition_x_m",
    "ignition_y_m",
    "t0_s",
    "detection_latency_s",
    "dispatch_latency_s",
    "response_latency_s",
    "containment_time_s",
    "contained",
    "burned_area_at_containment_m2",
    "sent_wsan_local",
    "delivered_wsan_local",
    "dropped_wsan_local",
    "sent_wsan_cloud",
    "delivered_wsan_cloud",
    "dropped_wsan_cloud",
    "pubsub_deliveries",
]


@dataclass
class Metrics:
    fires: dict[str, FireMetrics] = field(default_factory=dict)
    link_stats: dict[str, LinkClassStats] = field(default_factory=dict)
    pubsub_deliveries: int = 0

    def stats_for(self, latency_class: str) -> LinkClassStats:
        if latency_class not in self.link_stats:
            self.link_stats[latency_class] = LinkClassStats()
        return self.link_stats[latency_class]

    def to_csv(self) -> str:
        def fmt(value) -> str:
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, Fraction):
                return repr(float(value))
            if isinstance(value, float):
                return repr(value)
            return str(value)

        lines = [",".join(METRICS_COLUMNS)]
        for fm in self.fires.values():
            row = [
                "fire",
                fm.fire_id,
                fmt(fm.ignition[0]),
                fmt(fm.ignition[1]),
                fmt(fm.t0),
                fmt(fm.detection_latency),
                fmt(fm.dispatch_latency),
                fmt(fm.response_latency),
                fmt(fm.containment_time),
                fmt(fm.contained),
                fmt(fm.burned_area_at_containment),
                "", "", "", "", "", "", "",
            ]
            lines.append(",".join(row))
        local = self.link_stats.get(LATENCY_WSAN_LOCAL, LinkClassStats())
        cloud = self.link_stats.get(LATENCY_WSAN_CLOUD, LinkClassStats())
        totals = [
            "totals",
            "", "", "", "", "", "", "", "", "", "",
            str(local.sent), str(local.delivered), str(local.dropped),
            str(cloud.sent), str(cloud.delivered), str(cloud.dropped),
            str(self.pubsub_deliveries),
        ]
        lines.append(",".join(totals))
        return "\n".join(lines) + "\n"


@dataclass
class RunResult:
    trace: str
    metrics: Metrics
    all_contained: bool


class Engine:
    """One scenario run; construct fresh per run for isolated state."""

    def __init__(self, scenario: Scenario, seed_override: Optional[int] = None):
        self.scenario = scenario
        self.spec = GridSpec(n=scenario.grid.n, r=scenario.grid.r)
        self.deployment = plan_deployment(self.spec)
        self.kind = scenario.topology.kind
        self.wiring: Wiring = build_topology(
            self.kind,
            self.deployment,
            processing_site=scenario.topology.processing_site,
            direct_actor_variation=scenario.topology.direct_actor_variation,
        )
        self.horizon = Fraction(scenario.horizon)
        self.seed = scenario.network.seed if seed_override is None else seed_override
        self.drop_probability = scenario.network.drop_probability
        self._rng = random.Random(self.seed)
        self._latency = {
            LATENCY_WSAN_LOCAL: Fraction(scenario.network.wsan_latency_s),
            LATENCY_WSAN_CLOUD: Fraction(scenario.network.cloud_latency_s),
        }

        self.broker = Broker(dispatch_policy=scenario.topology.dispatch_policy)
        self.metrics = Metrics()
        self.queue = EventQueue()
        self._trace_lines: list[str] = []

        actor_map = {qno: qno for qno, _pos in self.deployment.actors}
        period = scenario.sensing.period
        self.sensors = {
            sid: BeaconNode(
                node_id=sid,
                position=pos,
                chno_assigned=quadrant_of(pos, self.spec),
                sensing_period=period,
                sensing_range=self.spec.r,
            )
            for sid, pos in self.deployment.sensors
        }
        self.cluster_heads: dict[int, ClusterHead] = {}
        if self.kind is TopologyKind.SEMI_AUTOMATIC:
            mode = MODE_CLOUD_GATED if scenario.topology.cloud_gated else MODE_DIRECT
            self.cluster_heads = {
                chno: ClusterHead(
                    chno=chno,
                    position=pos,
                    spec=self.spec,
                    scenario_name=scenario.name,
                    actor_for_quadrant=actor_map,
                    mode=mode,
                )
                for chno, pos in self.deployment.cluster_heads
            }
        self.actors = {
            aa: Actor(
                aa=aa,
                home=pos,
                speed=scenario.actors.speed,
                extinguish_service_time=scenario.actors.service_time,
            )
            for aa, pos in self.deployment.actors
        }
        self.interface: Optional[IntegrationInterface] = None
        self.actor_processors: dict[int, ActorSideProcessor] = {}
        if self.kind is not TopologyKind.SEMI_AUTOMATIC:
            accept = scenario.topology.data_filter == "accept_all"
            site = (
                scenario.topology.processing_site
                if self.kind is TopologyKind.AUTOMATIC_IN_CLOUD
                # with-cloud data reaches actors inside the WSAN; the
                # interface only stores and publishes
                else PROCESS_AT_ACTOR
            )
            self.interface = IntegrationInterface(
                spec=self.spec,
                scenario_name=scenario.name,
                actor_for_quadrant=actor_map,
                filter_rule=(lambda _p: True) if accept else (lambda _p: False),
                processing_site=site,
            )
            raw_to_actor = self.kind is TopologyKind.AUTOMATIC_WITH_CLOUD or (
                self.kind is TopologyKind.AUTOMATIC_IN_CLOUD
                and scenario.topology.processing_site == PROCESS_AT_ACTOR
            )
            if raw_to_actor:
                self.actor_processors = {
                    aa: ActorSideProcessor(spec=self.spec, aa=aa)
                    for aa, _pos in self.deployment.actors
                }

        self.fires: dict[str, FireState] = {}
        for i, fc in enumerate(scenario.fire_events):
            fid = f"f{i}"
            event = FireEvent(fire_id=fid, ignition=(fc.x, fc.y), speed=fc.speed, t0=fc.t0)
            self.fires[fid] = FireState(event=event)
            self.metrics.fires[fid] = FireMetrics(
                fire_id=fid, ignition=event.ignition, speed=fc.speed, t0=fc.t0
            )
            self.queue.schedule(Fraction(fc.t0), EVT_FIRE_IGNITION, (fid,))

        for sid in self.sensors:
            self.queue.schedule(Fraction(0), EVT_SENSING_TICK, (sid,))

        for i, sc in enumerate(scenario.subscriptions):
            sub = Subscription(
                sub_id=f"sub{i}",
                subscriber=sc.subscriber,
                topic_filter=sc.topic_filter,
                period=Fraction(sc.period),
                created_at=Fraction(0),
            )
            result = self.broker.subscribe(sub)
            if not result.ok:  # pragma: no cover - validation precludes this
                raise WiringError(f"subscription rejected: {result.reason}")
            if result.first_delivery_at <= self.horizon:
                self.queue.schedule(
                    result.first_delivery_at, EVT_PUBSUB_DELIVERY, (sub.sub_id, 1)
                )

        self._pending_fire_of_token: dict[str, str] = {}

    # ------------------------------------------------------------------ trace

    def _record(self, t, kind: str, **extra) -> None:
        rec = {"t": float(t), "kind": kind}
        for key, value in extra.items():
            if value is not None:
                rec[key] = value
        self._trace_lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))

    def _header_line(self) -> str:
        header = {
            "format": TRACE_FORMAT,
            "tool_version": _tool_version,
            "scenario": self.scenario.name,
            "scenario_hash": self.scenario.content_hash(),
            # with zero drop probability the generator is never consumed,
            # so the seed is immaterial and recorded as null
            "seed": self.seed if self.drop_probability > 0 else None,
            "wiring": self.wiring.to_dict(),
        }
        return json.dumps(header, sort_keys=True, separators=(",", ":"))

    # ---------------------------------------------------------------- network

    def transmit(self, src: str, dst: str, port: str, frame: bytes, t=None, meta=None) -> None:
        """Send a frame over a wired link; may drop, else schedules delivery."""
        link = self.wiring.find(src, dst, port)  # raises WiringError when unwired
        if t is None:
            t = self.queue.clock
        stats = self.metrics.stats_for(link.latency_class)
        stats.sent += 1
        if self.drop_probability > 0 and self._rng.random() < self.drop_probability:
            stats.dropped += 1
            self._record(t, "message-drop", src=src, dst=dst, port=port,
                         payload=frame.hex(), meta=meta)
            return
        stats.delivered += 1
        self._record(t, "message-send", src=src, dst=dst, port=port,
                     payload=frame.hex(), meta=meta)
        self.queue.schedule(
            t + self._latency[link.latency_class],
            EVT_MESSAGE_DELIVERY,
            (link, frame, meta),
        )

    # -------------------------------------------------------------------- run

    def run(self) -> RunResult:
        self._trace_lines = [self._header_line()]
        while len(self.queue):
            t, kind, payload = self.queue.pop()
            if t > self.horizon:
                break
            if kind == EVT_FIRE_IGNITION:
                self._on_ignition(t, *payload)
            elif kind == EVT_SENSING_TICK:
                self._on_sensing_tick(t, *payload)
            elif kind == EVT_MESSAGE_DELIVERY:
                self._on_delivery(t, *payload)
            elif kind == EVT_ACTOR_ARRIVAL:
                self._on_actor_arrival(t, *payload)
            elif kind == EVT_EXTINGUISH_COMPLETE:
                self._on_extinguish_complete(t, *payload)
            elif kind == EVT_PUBSUB_DELIVERY:
                self._on_pubsub_delivery(t, *payload)
            else:  # pragma: no cover - kinds are closed
                raise RuntimeError(f"unknown event kind {kind!r}")
        all_contained = all(f.contained for f in self.fires.values())
        return RunResult(
            trace="\n".join(self._trace_lines) + "\n",
            metrics=self.metrics,
            all_contained=all_contained,
        )

    # ----------------------------------------------------------- event logic

    def _on_ignition(self, t, fire_id: str) -> None:
        fire = self.fires[fire_id]
        self._record(t, EVT_FIRE_IGNITION, meta={
            "fire_id": fire_id,
            "x": fire.event.ignition[0],
            "y": fire.event.ignition[1],
            "speed": fire.event.speed,
        })

    def _on_sensing_tick(self, t, sid: int) -> None:
        node = self.sensors[sid]
        for fire_id, fire in self.fires.items():
            packet = node.on_sample(fire, t)
            if packet is None:
                continue
            fm = self.metrics.fires[fire_id]
            if fm.detection_latency is None:
                fm.detection_latency = t - Fraction(fire.event.t0)
            frame = encode_beacon(packet)
            meta = {"fire_id": fire_id}
            src = sensor_id(sid)
            if self.kind is TopologyKind.SEMI_AUTOMATIC:
                self.transmit(src, cluster_head_id(packet.chno), PORT_BEACON, frame, t, meta)
            elif self.kind is TopologyKind.AUTOMATIC_IN_CLOUD:
                self.transmit(src, INTERFACE, PORT_BEACON, frame, t, meta)
            else:  # automatic with the cloud: WSAN-internal path + cloud copy
                q = quadrant_of(node.position, self.spec)
                self._note_dispatch(fire_id, t)
                self.transmit(src, actor_id(q), PORT_BEACON, frame, t, meta)
                self.transmit(src, INTERFACE, PORT_BEACON, frame, t, meta)
        nxt = t + Fraction(node.sensing_period)
        if nxt <= self.horizon:
            self.queue.schedule(nxt, EVT_SENSING_TICK, (sid,))

    def _on_delivery(self, t, link: Link, frame: bytes, meta) -> None:
        self._record(t, EVT_MESSAGE_DELIVERY, src=link.src, dst=link.dst,
                     port=link.port, payload=frame.hex(), meta=meta)
        dst = link.dst
        if dst.startswith("ch"):
            if link.port == PORT_BEACON:
                self._ch_handle_beacon(t, int(dst[2:]), frame, meta)
            else:
                self._ch_handle_pubsub(t, int(dst[2:]), meta)
        elif dst == BROKER:
            self._broker_handle(t, link, frame, meta)
        elif dst == INTERFACE:
            self._interface_handle(t, frame, meta)
        elif dst.startswith("a"):
            aa = int(dst[1:])
            if link.port == PORT_COMMAND:
                self._actor_handle_command(t, aa, decode_cluster_head(frame), meta)
            else:
                self._actor_handle_raw(t, aa, frame, meta)
        elif dst == "monitor":
            pass  # monitoring data is observed through pubsub deliveries

    def _ch_handle_beacon(self, t, chno: int, frame: bytes, meta) -> None:
        ch = self.cluster_heads[chno]
        outcome = ch.on_beacon(decode_beacon(frame), t)
        src = cluster_head_id(chno)
        if outcome.warning:
            self._record(t, "warning", src=src, meta={"note": outcome.warning, **(meta or {})})
            return
        fire_id = (meta or {}).get("fire_id")
        if outcome.detection_update is not None:
            # cloud-gated: one broker round trip before dispatch; the
            # request both retains the update and asks for authorization
            token = outcome.pending_token
            self._pending_fire_of_token[token] = fire_id
            self.transmit(src, BROKER, PORT_PUBSUB, outcome.detection_update.payload, t,
                          {"pubsub": "authorize", "topic": outcome.detection_update.topic,
                           "token": token, "fire_id": fire_id})
        elif outcome.monitor_update is not None:
            self.transmit(src, BROKER, PORT_PUBSUB, outcome.monitor_update.payload, t,
                          {"pubsub": "publish", "topic": outcome.monitor_update.topic,
                           "fire_id": fire_id})
        if outcome.command is not None:
            self._note_dispatch(fire_id, t)
            self.transmit(src, actor_id(outcome.command.aa), PORT_COMMAND,
                          encode_cluster_head(outcome.command), t, {"fire_id": fire_id})

    def _ch_handle_pubsub(self, t, chno: int, meta) -> None:
        ch = self.cluster_heads[chno]
        token = meta["token"]
        granted = meta["pubsub"] == "grant"
        command = ch.on_authorization(token, granted)
        fire_id = self._pending_fire_of_token.pop(token, None)
        if command is None:
            self._record(t, "note", src=cluster_head_id(chno),
                         meta={"note": "dispatch denied by cloud policy", "fire_id": fire_id})
            return
        self._note_dispatch(fire_id, t)
        self.transmit(cluster_head_id(chno), actor_id(command.aa), PORT_COMMAND,
                      encode_cluster_head(command), t, {"fire_id": fire_id})

    def _broker_handle(self, t, link: Link, frame: bytes, meta) -> None:
        update = Update(topic=meta["topic"], payload=frame, published_at=t)
        self.broker.publish(update)
        if meta.get("pubsub") != "authorize":
            return
        granted = self.broker.authorize_dispatch(update)
        reply = {"pubsub": "grant" if granted else "deny", "token": meta["token"],
                 "fire_id": meta.get("fire_id")}
        self.transmit(BROKER, link.src, PORT_PUBSUB, frame, t, reply)

    def _interface_handle(self, t, frame: bytes, meta) -> None:
        outcome = self.interface.on_data(decode_beacon(frame), t)
        fire_id = (meta or {}).get("fire_id")
        if not outcome.accepted:
            self._record(t, "note", src=INTERFACE,
                         meta={"note": "data rejected by filter", "fire_id": fire_id})
            return
        if outcome.warning:
            self._record(t, "warning", src=INTERFACE,
                         meta={"note": outcome.warning, "fire_id": fire_id})
        if outcome.monitor_update is not None:
            self.transmit(INTERFACE, BROKER, PORT_PUBSUB, outcome.monitor_update.payload, t,
                          {"pubsub": "publish", "topic": outcome.monitor_update.topic,
                           "fire_id": fire_id})
        target = actor_id(outcome.forward_aa) if outcome.forward_aa is not None else None
        if outcome.command is not None and self.wiring.has(INTERFACE, target, PORT_COMMAND):
            self._note_dispatch(fire_id, t)
            self.transmit(INTERFACE, target, PORT_COMMAND,
                          encode_cluster_head(outcome.command), t, {"fire_id": fire_id})
        elif outcome.raw_forward is not None and self.wiring.has(INTERFACE, target, PORT_BEACON):
            self._note_dispatch(fire_id, t)
            self.transmit(INTERFACE, target, PORT_BEACON,
                          encode_beacon(outcome.raw_forward), t, {"fire_id": fire_id})

    def _actor_handle_raw(self, t, aa: int, frame: bytes, meta) -> None:
        command = self.actor_processors[aa].process(decode_beacon(frame), t)
        if command is None:
            self._record(t, "note", src=actor_id(aa),
                         meta={"note": "duplicate detection ignored", **(meta or {})})
            return
        self._actor_handle_command(t, aa, command, meta)

    def _actor_handle_command(self, t, aa: int, packet, meta) -> None:
        actor = self.actors[aa]
        outcome = actor.on_command(packet, t, meta)
        name = actor_id(aa)
        if outcome.queued:
            self._record(t, "note", src=name,
                         meta={"note": "actor busy, command queued", **(meta or {})})
            return
        self._start_plan(t, aa, outcome.plan, meta)

    def _start_plan(self, t, aa: int, plan, meta) -> None:
        name = actor_id(aa)
        fire_id = (meta or {}).get("fire_id")
        self._record(t, "actor-dispatch", src=name, meta={
            "fire_id": fire_id,
            "target": list(plan.target),
            "distance": plan.distance,
            "heading": plan.heading,
            "eta": float(plan.eta),
        })
        self._publish_status(t, aa)
        if plan.distance == 0.0:
            # already on site: response coincides with the command instant
            fm = self.metrics.fires.get(fire_id)
            if fm is not None and fm.response_latency is None:
                fm.response_latency = t - Fraction(fm.t0)
            self.queue.schedule(self.actors[aa].until, EVT_EXTINGUISH_COMPLETE, (aa,))
        else:
            self.queue.schedule(plan.eta, EVT_ACTOR_ARRIVAL, (aa,))

    def _on_actor_arrival(self, t, aa: int) -> None:
        actor = self.actors[aa]
        meta = actor.active_meta or {}
        until = actor.on_arrival(t)
        fire_id = meta.get("fire_id")
        fm = self.metrics.fires.get(fire_id)
        if fm is not None and fm.response_latency is None:
            fm.response_latency = t - Fraction(fm.t0)
        self._record(t, EVT_ACTOR_ARRIVAL, src=actor_id(aa), meta={
            "fire_id": fire_id, "position": list(actor.current),
        })
        self._publish_status(t, aa)
        self.queue.schedule(until, EVT_EXTINGUISH_COMPLETE, (aa,))

    def _on_extinguish_complete(self, t, aa: int) -> None:
        actor = self.actors[aa]
        finished_meta, next_cmd = actor.on_extinguish_complete(t)
        fire_id = (finished_meta or {}).get("fire_id")
        fire = self.fires.get(fire_id)
        if fire is not None and not fire.contained:
            fire.contained_at = t
            fm = self.metrics.fires[fire_id]
            fm.contained = True
            fm.containment_time = t - Fraction(fm.t0)
            fm.burned_area_at_containment = burned_area(fire, t, self.spec)
            self._record(t, EVT_EXTINGUISH_COMPLETE, src=actor_id(aa), meta={
                "fire_id": fire_id, "contained": True,
                "burned_area_m2": fm.burned_area_at_containment,
            })
        else:
            self._record(t, EVT_EXTINGUISH_COMPLETE, src=actor_id(aa), meta={
                "fire_id": fire_id, "contained": False,
                "note": "fire already contained, no-op",
            })
        self._publish_status(t, aa)
        if next_cmd is not None:
            packet, meta = next_cmd
            outcome = actor.on_command(packet, t, meta)
            self._start_plan(t, aa, outcome.plan, meta)

    def _on_pubsub_delivery(self, t, sub_id: str, k: int) -> None:
        sub = self.broker.subscriptions[sub_id]
        if self.broker.is_due(sub, t):
            for update in self.broker.matching_retained(sub):
                self.metrics.pubsub_deliveries += 1
                self._record(t, EVT_PUBSUB_DELIVERY, src=BROKER, dst=sub.subscriber,
                             port=PORT_PUBSUB, payload=update.payload.hex(),
                             meta={"topic": update.topic, "sub_id": sub_id})
        nxt = sub.created_at + (k + 1) * sub.period
        if nxt <= self.horizon:
            self.queue.schedule(nxt, EVT_PUBSUB_DELIVERY, (sub_id, k + 1))

    # ---------------------------------------------------------------- helpers

    def _note_dispatch(self, fire_id, t) -> None:
        fm = self.metrics.fires.get(fire_id)
        if fm is not None and fm.dispatch_latency is None:
            fm.dispatch_latency = t - Fraction(fm.t0)

    def _publish_status(self, t, aa: int) -> None:
        # status reports reach cloud storage directly; the transport hop is
        # not part of any latency contract
        actor = self.actors[aa]
        payload = json.dumps({
            "aa": aa,
            "phase": actor.phase.value,
            "x": actor.current[0],
            "y": actor.current[1],
        }, sort_keys=True, separators=(",", ":")).encode()
        topic = actor_status_topic(self.scenario.name, aa)
        self.broker.publish(Update(topic=topic, payload=payload, published_at=t))
        self._record(t, "actor-status", src=actor_id(aa), meta={
            "topic": topic, "phase": actor.phase.value,
        })


def run_scenario(scenario: Scenario, seed_override: Optional[int] = None) -> RunResult:
    return Engine(scenario, seed_override=seed_override).run()
