"""Integration wiring for the three WSAN-cloud shapes.

Semi-automatic: sensors route reports to their quadrant's cluster head
(the central controller), which commands the quadrant's actor; cluster
heads and an external monitor talk to the cloud broker. Sensors carry
the cloud provider role, actors the user role.

Automatic (in / with the cloud): no cluster heads. In-cloud, sensor data
flows through the cloud-resident integration interface to the actors.
With-cloud, sensors reach actors directly inside the WSAN while the
interface mediates the cloud link; an optional variation adds a direct
cloud-to-actor command link.
"""

from dataclasses import dataclass
from enum import Enum

from .geometry import Deployment


class WiringError(ValueError):
    """Deployment and topology kind cannot be wired together."""


class TopologyKind(Enum):
    SEMI_AUTOMATIC = "semi_automatic"
    AUTOMATIC_IN_CLOUD = "automatic_in_cloud"
    AUTOMATIC_WITH_CLOUD = "automatic_with_cloud"


class Role(Enum):
    PROVIDER = "provider"
    USER = "user"
    SINK_CONTROLLER = "sink/controller"
    MONITOR = "monitor"
    NONE = "none"


# port names follow the block diagram wording (beaconodepacket is spelled
# there with a single n)
PORT_BEACON = "beaconodepacket"
PORT_COMMAND = "clusterheadnodepacket"
PORT_PUBSUB = "pubsub"
PORT_CONFIG = "config"

LATENCY_WSAN_LOCAL = "wsan-local"
LATENCY_WSAN_CLOUD = "wsan-cloud"

BROKER = "broker"
INTERFACE = "iface"
MONITOR = "monitor"


def sensor_id(i: int) -> str:
    return f"s{i}"


def cluster_head_id(chno: int) -> str:
    return f"ch{chno}"


def actor_id(aa: int) -> str:
    return f"a{aa}"


def node_kind(node: str) -> str:
    if node.startswith("ch"):
        return "cluster_head"
    if node.startswith("s"):
        return "sensor"
    if node.startswith("a"):
        return "actor"
    return node  # broker, iface, monitor


# allowed (src kind, dst kind) pairs per port; out-ports must meet the
# in/inout port of the same name
PORT_RULES: dict[str, set[tuple[str, str]]] = {
    PORT_BEACON: {
        ("sensor", "cluster_head"),
        ("sensor", INTERFACE),
        ("sensor", "actor"),
        (INTERFACE, "actor"),
    },
    PORT_COMMAND: {
        ("cluster_head", "actor"),
        (INTERFACE, "actor"),
        (BROKER, "actor"),
    },
    PORT_PUBSUB: {
        ("cluster_head", BROKER),
        (BROKER, "cluster_head"),
        (INTERFACE, BROKER),
        (BROKER, INTERFACE),
        (MONITOR, BROKER),
        (BROKER, MONITOR),
    },
    PORT_CONFIG: {(MONITOR, INTERFACE)},
}


@dataclass(frozen=True)
class Link:
    src: str
    dst: str
    port: str
    latency_class: str


@dataclass(frozen=True)
class Wiring:
    kind: TopologyKind
    links: tuple[Link, ...]
    role_map: dict[str, Role]

    def find(self, src: str, dst: str, port: str) -> Link:
        for link in self.links:
            if link.src == src and link.dst == dst and link.port == port:
                return link
        raise WiringError(f"no link {src} -> {dst} on port {port!r}")

    def has(self, src: str, dst: str, port: str) -> bool:
        try:
            self.find(src, dst, port)
            return True
        except WiringError:
            return False

    def to_dict(self) -> dict:
        """Deterministic form for the trace header."""
        return {
            "kind": self.kind.value,
            "links": [
                [l.src, l.dst, l.port, l.latency_class]
                for l in self.links
            ],
            "roles": {node: role.value for node, role in sorted(self.role_map.items())},
        }


def _bidirectional(a: str, b: str, port: str, latency_class: str) -> list[Link]:
    return [Link(a, b, port, latency_class), Link(b, a, port, latency_class)]


def build_topology(
    kind: TopologyKind,
    deployment: Deployment,
    *,
    processing_site: str = "interface",
    direct_actor_variation: bool = False,
) -> Wiring:
    """Wire one integration shape over a planned deployment."""
    if not deployment.actors:
        raise WiringError("deployment has no actors to wire")
    if not deployment.sensors:
        raise WiringError("deployment has no sensors to wire")

    spec = deployment.spec
    ch_for_quadrant = {chno: cluster_head_id(chno) for chno, _pos in deployment.cluster_heads}
    links: list[Link] = []
    roles: dict[str, Role] = {}

    from .geometry import quadrant_of  # placement-time quadrant lookup

    if kind is TopologyKind.SEMI_AUTOMATIC:
        for sid, pos in deployment.sensors:
            q = quadrant_of(pos, spec)
            links.append(Link(sensor_id(sid), ch_for_quadrant[q], PORT_BEACON, LATENCY_WSAN_LOCAL))
            roles[sensor_id(sid)] = Role.PROVIDER
        for chno, _pos in deployment.cluster_heads:
            links.append(Link(cluster_head_id(chno), actor_id(chno), PORT_COMMAND, LATENCY_WSAN_LOCAL))
            links.extend(_bidirectional(cluster_head_id(chno), BROKER, PORT_PUBSUB, LATENCY_WSAN_CLOUD))
            roles[cluster_head_id(chno)] = Role.SINK_CONTROLLER
        for aa, _pos in deployment.actors:
            roles[actor_id(aa)] = Role.USER
        links.extend(_bidirectional(MONITOR, BROKER, PORT_PUBSUB, LATENCY_WSAN_CLOUD))
        roles[MONITOR] = Role.MONITOR
        roles[BROKER] = Role.NONE

    elif kind is TopologyKind.AUTOMATIC_IN_CLOUD:
        # the interface lives inside the cloud; actors are physical nodes
        # reached through cloud-resident links
        command_port = PORT_COMMAND if processing_site == "interface" else PORT_BEACON
        for sid, _pos in deployment.sensors:
            links.append(Link(sensor_id(sid), INTERFACE, PORT_BEACON, LATENCY_WSAN_CLOUD))
            roles[sensor_id(sid)] = Role.NONE
        for aa, _pos in deployment.actors:
            links.append(Link(INTERFACE, actor_id(aa), command_port, LATENCY_WSAN_CLOUD))
            roles[actor_id(aa)] = Role.NONE
        links.extend(_bidirectional(INTERFACE, BROKER, PORT_PUBSUB, LATENCY_WSAN_CLOUD))
        links.extend(_bidirectional(MONITOR, BROKER, PORT_PUBSUB, LATENCY_WSAN_CLOUD))
        links.append(Link(MONITOR, INTERFACE, PORT_CONFIG, LATENCY_WSAN_CLOUD))
        roles[INTERFACE] = Role.NONE
        roles[MONITOR] = Role.MONITOR
        roles[BROKER] = Role.NONE

    elif kind is TopologyKind.AUTOMATIC_WITH_CLOUD:
        # WSAN-internal data path; the interface mediates the cloud link
        for sid, pos in deployment.sensors:
            q = quadrant_of(pos, spec)
            links.append(Link(sensor_id(sid), actor_id(q), PORT_BEACON, LATENCY_WSAN_LOCAL))
            links.append(Link(sensor_id(sid), INTERFACE, PORT_BEACON, LATENCY_WSAN_CLOUD))
            roles[sensor_id(sid)] = Role.NONE
        for aa, _pos in deployment.actors:
            roles[actor_id(aa)] = Role.NONE
            if direct_actor_variation:
                links.append(Link(BROKER, actor_id(aa), PORT_COMMAND, LATENCY_WSAN_CLOUD))
        links.extend(_bidirectional(INTERFACE, BROKER, PORT_PUBSUB, LATENCY_WSAN_CLOUD))
        links.extend(_bidirectional(MONITOR, BROKER, PORT_PUBSUB, LATENCY_WSAN_CLOUD))
        links.append(Link(MONITOR, INTERFACE, PORT_CONFIG, LATENCY_WSAN_CLOUD))
        roles[INTERFACE] = Role.NONE
        roles[MONITOR] = Role.MONITOR
        roles[BROKER] = Role.NONE

    else:  # pragma: no cover - enum is exhaustive
        raise WiringError(f"unknown topology kind {kind!r}")

    wiring = Wiring(kind=kind, links=tuple(links), role_map=roles)
    _check_port_compatibility(wiring)
    return wiring


def _check_port_compatibility(wiring: Wiring) -> None:
    for link in wiring.links:
        pair = (node_kind(link.src), node_kind(link.dst))
        if pair not in PORT_RULES.get(link.port, set()):
            raise WiringError(
                f"port {link.port!r} cannot connect {link.src} -> {link.dst}"
            )
