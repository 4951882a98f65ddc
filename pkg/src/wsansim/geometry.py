"""Grid-world deployment planning and spatial math.

The monitored area is an n-by-n grid of square cells with side D = 2r,
origin at the south-west corner, split into four equal quadrants.
Sensors sit at cell centers, one cluster head per quadrant at the
quadrant's outer area corner, one mobile actor per quadrant at the
quadrant's center.
"""

import json
import math
from dataclasses import dataclass


class GridSpecError(ValueError):
    """Grid parameters violate the deployment model."""


class OutOfAreaError(ValueError):
    """Point lies outside the monitored area."""


class ZeroDisplacementError(ValueError):
    """Heading is undefined for a zero displacement."""


def derive_cell_side(r: float) -> float:
    """Cell side from sensing range: D = 2r."""
    if not (r > 0) or not math.isfinite(r):
        raise GridSpecError(f"sensing range must be positive and finite, got {r}")
    return 2.0 * r


def node_count_center(n: int) -> int:
    """Sensors needed for center-of-cell placement: n^2."""
    if n < 1:
        raise GridSpecError(f"grid side must be >= 1, got {n}")
    return n * n


def node_count_intersection(n: int) -> int:
    """Sensors needed for grid-intersection placement: n^2 + 2n + 1."""
    if n < 1:
        raise GridSpecError(f"grid side must be >= 1, got {n}")
    return n * n + 2 * n + 1


@dataclass(frozen=True)
class GridSpec:
    """n cells per side, sensing range r meters, cell side D = 2r."""

    n: int
    r: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2 or self.n % 2 != 0:
            raise GridSpecError(
                f"cells per side must be an even integer >= 2 for four equal "
                f"quadrants, got {self.n}"
            )
        derive_cell_side(self.r)  # validates r

    @property
    def cell_side(self) -> float:
        return derive_cell_side(self.r)

    @property
    def area_side(self) -> float:
        return self.n * self.cell_side

    @property
    def midline(self) -> float:
        return self.area_side / 2.0

    def contains(self, point: tuple[float, float]) -> bool:
        x, y = point
        side = self.area_side
        return 0.0 <= x < side and 0.0 <= y < side


@dataclass(frozen=True)
class Quadrant:
    """One quarter of the area; bounds are half-open [x0, x1) x [y0, y1)."""

    qno: int
    bounds: tuple[float, float, float, float]

    @property
    def center(self) -> tuple[float, float]:
        x0, y0, x1, y1 = self.bounds
        return ((x0 + x1) / 2.0, (y0 + y1) / 2.0)


@dataclass(frozen=True)
class Deployment:
    """Planned node placement: immutable once computed."""

    spec: GridSpec
    sensors: tuple[tuple[int, tuple[float, float]], ...]
    cluster_heads: tuple[tuple[int, tuple[float, float]], ...]
    actors: tuple[tuple[int, tuple[float, float]], ...]

    def to_json(self) -> str:
        """Canonical serialization; equal deployments are byte-identical."""
        doc = {
            "grid": {"n": self.spec.n, "r": self.spec.r},
            "sensors": [[i, list(p)] for i, p in self.sensors],
            "cluster_heads": [[i, list(p)] for i, p in self.cluster_heads],
            "actors": [[i, list(p)] for i, p in self.actors],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def actor_home(self, aa: int) -> tuple[float, float]:
        for i, pos in self.actors:
            if i == aa:
                return pos
        raise KeyError(f"no actor with address {aa}")


def quadrants(spec: GridSpec) -> tuple[Quadrant, Quadrant, Quadrant, Quadrant]:
    """The four quadrants; disjoint, union equals the whole area."""
    m = spec.midline
    side = spec.area_side
    return (
        Quadrant(0, (0.0, 0.0, m, m)),
        Quadrant(1, (m, 0.0, side, m)),
        Quadrant(2, (0.0, m, m, side)),
        Quadrant(3, (m, m, side, side)),
    )


def quadrant_of(point: tuple[float, float], spec: GridSpec) -> int:
    """Quadrant number of an in-area point.

    Encoding: bit 0 set when x >= midline, bit 1 set when y >= midline.
    The >= tie-break makes the partition total on the half-open area.
    """
    x, y = point
    if not spec.contains(point):
        raise OutOfAreaError(f"point {point} outside [0, {spec.area_side}) square")
    m = spec.midline
    return (1 if x >= m else 0) + (2 if y >= m else 0)


def quadrant_outer_corner(qno: int, spec: GridSpec) -> tuple[float, float]:
    """The quadrant's corner on the area boundary (all four are distinct)."""
    side = spec.area_side
    return (side if qno & 1 else 0.0, side if qno & 2 else 0.0)


def plan_deployment(spec: GridSpec) -> Deployment:
    """Place n^2 sensors at cell centers, one CH and one actor per quadrant.

    Sensor ids are row-major from the south-west cell. CHNO and AA both
    equal the quadrant number.
    """
    d = spec.cell_side
    sensors = tuple(
        (j * spec.n + i, ((i + 0.5) * d, (j + 0.5) * d))
        for j in range(spec.n)
        for i in range(spec.n)
    )
    cluster_heads = tuple((q, quadrant_outer_corner(q, spec)) for q in range(4))
    actors = tuple((q.qno, q.center) for q in quadrants(spec))
    return Deployment(spec=spec, sensors=sensors, cluster_heads=cluster_heads, actors=actors)


def actor_travel_distance(b: float, c: float) -> float:
    """Straight-line travel distance from axis-aligned displacement legs."""
    return math.hypot(b, c)


def actor_heading(dx: float, dy: float) -> float:
    """Full-circle heading of a displacement, in radians within (-pi, pi].

    Reduces to arctan(dy/dx) when dx > 0; the quadrant-aware form keeps
    the direction unambiguous for dx <= 0.
    """
    if dx == 0.0 and dy == 0.0:
        raise ZeroDisplacementError("heading undefined for zero displacement")
    # dy + 0.0 folds -0.0 into +0.0 so atan2 never returns -pi
    return math.atan2(dy + 0.0, dx)
