"""Fire phenomenon: radial front with uniform constant speed.

A fire is a growing disk around its ignition point. Containment freezes
the front; the radius never shrinks. Burned area is the exact
disk/rectangle intersection with the monitored area.

Time arguments accept any real number type (float in unit math,
exact rationals inside the engine); comparisons stay exact either way.
The ignition point may lie outside the monitored area: the front then
reaches sensors late, and the burned-area clip handles the overhang.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

from .geometry import GridSpec


@dataclass(frozen=True)
class FireEvent:
    """One ignition: point, front speed (m/s, >= 0), start time."""

    fire_id: str
    ignition: tuple[float, float]
    speed: float
    t0: float


@dataclass
class FireState:
    """Runtime companion of a FireEvent; contained_at freezes the front."""

    event: FireEvent
    contained_at: Optional[object] = field(default=None)  # time, any Real

    @property
    def contained(self) -> bool:
        return self.contained_at is not None


def fire_radius(state: FireState, t) -> float:
    """Front radius at time t: 0 before ignition, frozen after containment."""
    ev = state.event
    if t < ev.t0:
        return 0.0
    if state.contained_at is not None and state.contained_at < t:
        t = state.contained_at
    return ev.speed * float(t - ev.t0)


def first_detection_time(event: FireEvent, sensor_pos: tuple[float, float], r: float) -> float:
    """Earliest time the front comes within sensing range r of a sensor.

    Returns math.inf when a zero-speed fire never reaches the sensor.
    """
    dist = math.hypot(sensor_pos[0] - event.ignition[0], sensor_pos[1] - event.ignition[1])
    if dist <= r:
        return event.t0
    if event.speed == 0.0:
        return math.inf
    return event.t0 + (dist - r) / event.speed


def burned_area(state: FireState, t, spec: GridSpec) -> float:
    """Area of the fire disk clipped to the monitored square, in m^2."""
    radius = fire_radius(state, t)
    cx, cy = state.event.ignition
    side = spec.area_side
    return circle_rect_intersection_area(cx, cy, radius, 0.0, 0.0, side, side)


def circle_rect_intersection_area(
    cx: float, cy: float, radius: float, x0: float, y0: float, x1: float, y1: float
) -> float:
    """Exact area of a disk intersected with an axis-aligned rectangle.

    Integrates the clipped vertical chord over x. On each interval
    between breakpoints (where a chord end crosses a rectangle edge)
    the integrand is one of a handful of closed forms.
    """
    if radius <= 0.0 or x0 >= x1 or y0 >= y1:
        return 0.0
    # work in circle-centered coordinates
    rx0, rx1 = x0 - cx, x1 - cx
    ry0, ry1 = y0 - cy, y1 - cy
    lo, hi = max(rx0, -radius), min(rx1, radius)
    if lo >= hi:
        return 0.0
    # fast paths: circle inside rect / rect inside circle
    if rx0 <= -radius and rx1 >= radius and ry0 <= -radius and ry1 >= radius:
        return math.pi * radius * radius
    corners_in = all(
        x * x + y * y <= radius * radius
        for x in (rx0, rx1)
        for y in (ry0, ry1)
    )
    if corners_in:
        return (rx1 - rx0) * (ry1 - ry0)

    breakpoints = {lo, hi}
    for yy in (ry0, ry1):
        if abs(yy) < radius:
            xx = math.sqrt(radius * radius - yy * yy)
            for s in (-xx, xx):
                if lo < s < hi:
                    breakpoints.add(s)
    points = sorted(breakpoints)

    total = 0.0
    for a, b in zip(points, points[1:]):
        mid = 0.5 * (a + b)
        half = math.sqrt(max(0.0, radius * radius - mid * mid))
        top_flat = ry1 <= half  # min(ry1, half) is the constant ry1
        bot_flat = ry0 >= -half  # max(ry0, -half) is the constant ry0
        if min(ry1, half) <= max(ry0, -half):
            continue  # chord entirely outside the y-range on this interval
        seg = _chord_integral(b, radius) - _chord_integral(a, radius)
        width = b - a
        if top_flat and bot_flat:
            total += (ry1 - ry0) * width
        elif top_flat:
            total += ry1 * width + seg
        elif bot_flat:
            total += seg - ry0 * width
        else:
            total += 2.0 * seg
    return total


def _chord_integral(x: float, radius: float) -> float:
    """Antiderivative of sqrt(radius^2 - t^2) evaluated at x, clamped."""
    x = max(-radius, min(radius, x))
    return 0.5 * (x * math.sqrt(radius * radius - x * x) + radius * radius * math.asin(x / radius))
