"""In-process pub/sub for check runs: one event per run boundary and per result row."""

from __future__ import annotations

import logging
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable, Iterator

logger = logging.getLogger(__name__)


class EventType(str, Enum):
    RUN_STARTED = "run_started"
    CHECK_PASSED = "check_passed"
    CHECK_FAILED = "check_failed"
    RUN_FINISHED = "run_finished"

    @classmethod
    def for_outcome(cls, ok: bool) -> EventType:
        """CHECK_PASSED when a row behaved as expected, CHECK_FAILED otherwise."""
        return cls.CHECK_PASSED if ok else cls.CHECK_FAILED


@dataclass
class Event:
    event_type: EventType
    data: dict[str, Any]
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))


Subscriber = Callable[[Event], None]


def _label(callback: Subscriber) -> str:
    return getattr(callback, "__qualname__", None) or repr(callback)


class EventBus:
    """Synchronous bus; a raising subscriber is logged and skipped."""

    def __init__(self) -> None:
        self._subscribers: dict[EventType, list[Subscriber]] = defaultdict(list)

    def subscribe(self, event_type: EventType, callback: Subscriber) -> None:
        self._subscribers[event_type].append(callback)
        logger.debug("Subscribed %s to %s", _label(callback), event_type.value)

    def unsubscribe(self, event_type: EventType, callback: Subscriber) -> None:
        """Unknown callbacks are ignored."""
        callbacks = self._subscribers.get(event_type, [])
        if callback in callbacks:
            callbacks.remove(callback)

    @contextmanager
    def subscribed(self, callback: Subscriber, *event_types: EventType) -> Iterator[None]:
        """Keep ``callback`` on ``event_types`` (default: all) for the duration of a block."""
        types = event_types or tuple(EventType)
        for event_type in types:
            self.subscribe(event_type, callback)
        try:
            yield
        finally:
            for event_type in types:
                self.unsubscribe(event_type, callback)

    def publish(self, event: Event) -> None:
        logger.debug("Publishing %s", event.event_type.value)
        for callback in list(self._subscribers.get(event.event_type, [])):
            try:
                callback(event)
            except Exception:
                logger.exception("Subscriber %s failed on %s", _label(callback), event.event_type.value)


event_bus = EventBus()
