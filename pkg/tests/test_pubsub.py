import random
from fractions import Fraction

from hypothesis import given, strategies as st

from wsansim.pubsub import (
    Broker,
    DISPATCH_SUBSCRIPTION_REQUIRED,
    Subscription,
    Update,
    actor_status_topic,
    detection_topic,
    topic_matches,
)


def sub(sub_id="s1", subscriber="monitor", topic_filter="wsan/x/quadrant/+/fire",
        period=10, created_at=0):
    return Subscription(sub_id=sub_id, subscriber=subscriber,
                        topic_filter=topic_filter, period=period, created_at=created_at)


class TestTopicMatching:
    def test_exact(self):
        assert topic_matches("wsan/x/quadrant/1/fire", "wsan/x/quadrant/1/fire")
        assert not topic_matches("wsan/x/quadrant/1/fire", "wsan/x/quadrant/2/fire")

    def test_single_level_wildcard(self):
        assert topic_matches("wsan/x/quadrant/+/fire", "wsan/x/quadrant/3/fire")
        assert not topic_matches("wsan/x/quadrant/+/fire", "wsan/x/quadrant/3/status")
        assert not topic_matches("wsan/x/+/fire", "wsan/x/quadrant/3/fire")

    def test_tail_wildcard(self):
        assert topic_matches("wsan/x/#", "wsan/x/quadrant/3/fire")
        assert topic_matches("wsan/x/#", "wsan/x/actor/0/status")
        assert not topic_matches("wsan/y/#", "wsan/x/actor/0/status")
        assert not topic_matches("wsan/#/fire", "wsan/x/fire")  # '#' only at the tail

    def test_length_mismatch(self):
        assert not topic_matches("wsan/x/quadrant/1", "wsan/x/quadrant/1/fire")
        assert not topic_matches("wsan/x/quadrant/1/fire", "wsan/x/quadrant/1")

    def test_topic_helpers(self):
        assert detection_topic("demo", 2) == "wsan/demo/quadrant/2/fire"
        assert actor_status_topic("demo", 0) == "wsan/demo/actor/0/status"


class TestSubscribe:
    def test_ack_and_first_delivery(self):
        broker = Broker()
        result = broker.subscribe(sub(period=10, created_at=0))
        assert result.ok
        assert result.first_delivery_at == 10

    def test_duplicate_rejected(self):
        broker = Broker()
        assert broker.subscribe(sub()).ok
        result = broker.subscribe(sub())
        assert not result.ok and "duplicate" in result.reason

    def test_nonpositive_period_rejected(self):
        broker = Broker()
        assert not broker.subscribe(sub(period=0)).ok
        assert not broker.subscribe(sub(sub_id="s2", period=-1)).ok


class TestPublish:
    def test_retained_gains_entry(self):
        broker = Broker()
        broker.publish(Update("t/a", b"1", 0))
        assert len(broker.retained) == 1

    def test_latest_value_wins(self):
        broker = Broker()
        broker.publish(Update("t/a", b"old", 0))
        broker.publish(Update("t/a", b"new", 5))
        assert broker.retained["t/a"].payload == b"new"
        assert len(broker.retained) == 1

    def test_no_subscriber_no_delivery(self):
        broker = Broker()
        broker.publish(Update("t/a", b"1", 0))
        for t in range(0, 100):
            assert broker.due_deliveries(t) == []

    def test_publish_exposes_no_subscribers(self):
        # source decoupling: publishing returns nothing and updates carry
        # no subscriber identity
        broker = Broker()
        broker.subscribe(sub(topic_filter="t/a"))
        result = broker.publish(Update("t/a", b"1", 0))
        assert result is None
        assert not hasattr(Update("t/a", b"1", 0), "subscriber")


class TestDueDeliveries:
    def test_exactly_ten_over_horizon(self):
        broker = Broker()
        broker.subscribe(sub(period=10, created_at=0))
        broker.publish(Update("wsan/x/quadrant/1/fire", b"u", 0))
        deliveries = []
        # integer times keep the exact-instant rule easy to drive
        for t in range(0, 101):
            deliveries.extend(broker.due_deliveries(t))
        assert len(deliveries) == 10

    def test_exact_instants_only(self):
        broker = Broker()
        broker.subscribe(sub(period=Fraction(1, 3), created_at=Fraction(0)))
        broker.publish(Update("wsan/x/quadrant/0/fire", b"u", 0))
        assert broker.due_deliveries(Fraction(1, 3))
        assert broker.due_deliveries(Fraction(2, 3))
        assert not broker.due_deliveries(Fraction(1, 2))
        assert not broker.due_deliveries(Fraction(0))

    def test_no_retained_value(self):
        broker = Broker()
        broker.subscribe(sub(period=10))
        assert broker.due_deliveries(10) == []

    def test_two_subscriptions_independent(self):
        broker = Broker()
        broker.subscribe(sub(sub_id="a", subscriber="m1", period=10))
        broker.subscribe(sub(sub_id="b", subscriber="m2", period=25))
        broker.publish(Update("wsan/x/quadrant/1/fire", b"u", 0))
        per_subscriber = {"m1": [], "m2": []}
        for t in range(0, 101):
            for who, _u in broker.due_deliveries(t):
                per_subscriber[who].append(t)
        # per-subscription schedule oracle: multiples of the own period only
        assert per_subscriber["m1"] == [10, 20, 30, 40, 50, 60, 70, 80, 90, 100]
        assert per_subscriber["m2"] == [25, 50, 75, 100]

    def test_filter_never_leaks_mismatched_topic(self):
        rng = random.Random(23)
        segments = ["wsan", "x", "y", "quadrant", "actor", "0", "1", "fire", "status"]
        for _ in range(500):
            topic = "/".join(rng.choices(segments, k=rng.randint(1, 5)))
            filt = "/".join(
                rng.choices(segments + ["+"], k=rng.randint(1, 5))
            )
            if rng.random() < 0.3:
                filt = filt.rsplit("/", 1)[0] + "/#"
            broker = Broker()
            broker.subscribe(sub(topic_filter=filt, period=5))
            broker.publish(Update(topic, b"u", 0))
            got = broker.due_deliveries(5)
            if got:
                assert topic_matches(filt, topic)

    def test_replay_determinism(self):
        def drive():
            broker = Broker()
            broker.subscribe(sub(period=7))
            broker.subscribe(sub(sub_id="s2", subscriber="m2", topic_filter="wsan/#", period=3))
            out = []
            for t in range(0, 50):
                if t % 4 == 0:
                    broker.publish(Update(f"wsan/x/quadrant/{t % 4}/fire", str(t).encode(), t))
                out.extend((t, who, u.topic, u.payload) for who, u in broker.due_deliveries(t))
            return out

        assert drive() == drive()


class TestAuthorizeDispatch:
    DETECTION = Update("wsan/x/quadrant/1/fire", b"d", 0)

    def test_default_policy_authorizes(self):
        assert Broker().authorize_dispatch(self.DETECTION)

    def test_subscription_required_denies_without_subscribers(self):
        broker = Broker(dispatch_policy=DISPATCH_SUBSCRIPTION_REQUIRED)
        assert not broker.authorize_dispatch(self.DETECTION)

    def test_subscription_required_authorizes_with_match(self):
        broker = Broker(dispatch_policy=DISPATCH_SUBSCRIPTION_REQUIRED)
        broker.subscribe(sub(topic_filter="wsan/x/quadrant/+/fire"))
        assert broker.authorize_dispatch(self.DETECTION)

    def test_subscription_required_ignores_non_matching(self):
        broker = Broker(dispatch_policy=DISPATCH_SUBSCRIPTION_REQUIRED)
        broker.subscribe(sub(topic_filter="wsan/x/actor/+/status"))
        assert not broker.authorize_dispatch(self.DETECTION)

    @given(st.integers(min_value=0, max_value=3))
    def test_filter_match_oracle(self, qno):
        broker = Broker(dispatch_policy=DISPATCH_SUBSCRIPTION_REQUIRED)
        broker.subscribe(sub(topic_filter="wsan/x/quadrant/2/fire"))
        detection = Update(detection_topic("x", qno), b"d", 0)
        assert broker.authorize_dispatch(detection) == (qno == 2)
