"""Tests for the event bus."""

from gaugekit.events import Event, EventBus, EventType


def test_subscribe_and_publish(event_bus: EventBus):
    received = []

    def handler(event: Event):
        received.append(event)

    event_bus.subscribe(EventType.CHECK_PASSED, handler)
    event_bus.publish(Event(event_type=EventType.CHECK_PASSED, data={"name": "lie.jacobi"}))

    assert len(received) == 1
    assert received[0].data["name"] == "lie.jacobi"


def test_no_cross_event_delivery(event_bus: EventBus):
    received = []

    event_bus.subscribe(EventType.CHECK_PASSED, received.append)
    event_bus.publish(Event(event_type=EventType.CHECK_FAILED, data={}))

    assert received == []


def test_multiple_subscribers(event_bus: EventBus):
    calls = {"a": 0, "b": 0}

    def handler_a(event: Event):
        calls["a"] += 1

    def handler_b(event: Event):
        calls["b"] += 1

    event_bus.subscribe(EventType.RUN_FINISHED, handler_a)
    event_bus.subscribe(EventType.RUN_FINISHED, handler_b)
    event_bus.publish(Event(event_type=EventType.RUN_FINISHED, data={"passed": True}))

    assert calls == {"a": 1, "b": 1}


def test_subscriber_error_does_not_stop_others(event_bus: EventBus):
    calls = []

    def bad_handler(event: Event):
        raise ValueError("boom")

    def good_handler(event: Event):
        calls.append(True)

    event_bus.subscribe(EventType.CHECK_FAILED, bad_handler)
    event_bus.subscribe(EventType.CHECK_FAILED, good_handler)
    event_bus.publish(Event(event_type=EventType.CHECK_FAILED, data={}))

    assert len(calls) == 1


def test_unsubscribe(event_bus: EventBus):
    received = []
    event_bus.subscribe(EventType.RUN_STARTED, received.append)
    event_bus.unsubscribe(EventType.RUN_STARTED, received.append)
    event_bus.unsubscribe(EventType.RUN_STARTED, received.append)
    event_bus.publish(Event(event_type=EventType.RUN_STARTED, data={}))

    assert received == []


def test_subscribed_only_inside_block(event_bus: EventBus):
    received = []
    with event_bus.subscribed(received.append, EventType.CHECK_FAILED):
        event_bus.publish(Event(event_type=EventType.CHECK_FAILED, data={"name": "inside"}))
        event_bus.publish(Event(event_type=EventType.CHECK_PASSED, data={}))
    event_bus.publish(Event(event_type=EventType.CHECK_FAILED, data={"name": "after"}))

    assert [e.data["name"] for e in received] == ["inside"]


def test_subscribed_defaults_to_every_type_and_cleans_up_on_error(event_bus: EventBus):
    received = []
    try:
        with event_bus.subscribed(received.append):
            for event_type in EventType:
                event_bus.publish(Event(event_type=event_type, data={}))
            raise RuntimeError("boom")
    except RuntimeError:
        pass
    event_bus.publish(Event(event_type=EventType.RUN_STARTED, data={}))

    assert [e.event_type for e in received] == list(EventType)


def test_outcome_event_type():
    assert EventType.for_outcome(True) is EventType.CHECK_PASSED
    assert EventType.for_outcome(False) is EventType.CHECK_FAILED
