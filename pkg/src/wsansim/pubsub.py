"""Cloud-side publish/subscribe broker.

Retains the latest update per topic; delivery is periodic per
subscription (at created_at + k*period, k >= 1), never per-publish.
Topic filters use segment wildcards: '+' matches one level, a trailing
'#' matches the remainder.

Topics used by the case study:

  wsan/<scenario>/quadrant/<qno>/fire    cluster-head detections
  wsan/<scenario>/actor/<aa>/status      actor status reports

The broker also gates cluster-head dispatch in cloud-controlled runs:
'default' policy authorizes everything, 'subscription-required' only
detections some subscriber listens to.
"""

from dataclasses import dataclass
from typing import Optional

DISPATCH_DEFAULT = "default"
DISPATCH_SUBSCRIPTION_REQUIRED = "subscription-required"


@dataclass(frozen=True)
class Subscription:
    sub_id: str
    subscriber: str
    topic_filter: str
    period: object  # seconds, any Real > 0
    created_at: object = 0


@dataclass(frozen=True)
class Update:
    topic: str
    payload: bytes
    published_at: object


@dataclass
class SubscribeResult:
    ok: bool
    reason: Optional[str] = None
    first_delivery_at: Optional[object] = None


def topic_matches(topic_filter: str, topic: str) -> bool:
    """Segment-wise filter match; '+' is one level, trailing '#' the rest."""
    fparts = topic_filter.split("/")
    tparts = topic.split("/")
    for i, fp in enumerate(fparts):
        if fp == "#":
            return i == len(fparts) - 1
        if i >= len(tparts):
            return False
        if fp != "+" and fp != tparts[i]:
            return False
    return len(fparts) == len(tparts)


class Broker:
    """Single logical state machine; mutated only by the engine loop."""

    def __init__(self, dispatch_policy: str = DISPATCH_DEFAULT):
        if dispatch_policy not in (DISPATCH_DEFAULT, DISPATCH_SUBSCRIPTION_REQUIRED):
            raise ValueError(f"unknown dispatch policy {dispatch_policy!r}")
        self.dispatch_policy = dispatch_policy
        self.subscriptions: dict[str, Subscription] = {}
        self.retained: dict[str, Update] = {}

    def subscribe(self, req: Subscription) -> SubscribeResult:
        """Record a subscription; first delivery due one period later."""
        if req.period <= 0:
            return SubscribeResult(ok=False, reason="period must be > 0")
        if req.sub_id in self.subscriptions:
            return SubscribeResult(ok=False, reason=f"duplicate sub_id {req.sub_id!r}")
        self.subscriptions[req.sub_id] = req
        return SubscribeResult(ok=True, first_delivery_at=req.created_at + req.period)

    def publish(self, update: Update) -> None:
        """Retain as latest value for the topic; no immediate delivery."""
        self.retained[update.topic] = update

    def matching_retained(self, sub: Subscription) -> list[Update]:
        """Retained updates the subscription would currently receive."""
        return [
            self.retained[topic]
            for topic in sorted(self.retained)
            if topic_matches(sub.topic_filter, topic)
        ]

    def is_due(self, sub: Subscription, t) -> bool:
        """True when t is exactly created_at + k*period for integer k >= 1."""
        elapsed = t - sub.created_at
        if elapsed <= 0:
            return False
        k = round(elapsed / sub.period)
        return k >= 1 and sub.created_at + k * sub.period == t

    def due_deliveries(self, t) -> list[tuple[str, Update]]:
        """Deliveries owed at simulation time t, in stable order."""
        out: list[tuple[str, Update]] = []
        for sub_id in sorted(self.subscriptions):
            sub = self.subscriptions[sub_id]
            if not self.is_due(sub, t):
                continue
            for update in self.matching_retained(sub):
                out.append((sub.subscriber, update))
        return out

    def authorize_dispatch(self, detection: Update) -> bool:
        """Gate a cluster-head dispatch on the configured policy."""
        if self.dispatch_policy == DISPATCH_DEFAULT:
            return True
        return any(
            topic_matches(sub.topic_filter, detection.topic)
            for sub in self.subscriptions.values()
        )


def detection_topic(scenario_name: str, qno: int) -> str:
    return f"wsan/{scenario_name}/quadrant/{qno}/fire"


def actor_status_topic(scenario_name: str, aa: int) -> str:
    return f"wsan/{scenario_name}/actor/{aa}/status"
