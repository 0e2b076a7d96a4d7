"""Derived time structures: rest blocks, shifts, days, weeks, calendar weeks.

Shifts, days and weeks are stretches of the timeline delimited by rests of
at least 45 minutes, 9 hours and 24 hours respectively. A segment's
``events`` hold what lies strictly between its bounding rests; the rests
themselves ride along as ``leading_rest``/``trailing_rest`` so that
aggregation over a segment measures the time that passes between the two
delimiting rests. Calendar weeks run Monday 00:00 to Sunday 24:00 UTC.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .timeline import DAY, HOUR, Activity, Duration, Event, EventList, Timestamp

SHIFT_REST_MIN = 45 * 60          # 45 min delimits shifts
DAILY_REST_MIN = 9 * HOUR         # 9 h (minimum daily rest) delimits days
WEEKLY_REST_MIN = 24 * HOUR       # 24 h (minimum reduced weekly rest) delimits weeks

WEEK_SECONDS = 7 * DAY
MONDAY_EPOCH = 4 * DAY            # 1970-01-05 00:00 UTC, the first Monday after the epoch


class EmptyTimeline(ValueError):
    """Raised where an operation needs at least one event."""


@dataclass(frozen=True)
class RestBlock:
    """A maximal run of rest activity."""

    start: Timestamp
    duration: Duration

    @property
    def end(self) -> Timestamp:
        return self.start + self.duration


class SegmentKind(Enum):
    SHIFT = "shift"
    DAY = "day"
    WEEK = "week"


KIND_THRESHOLD = {
    SegmentKind.SHIFT: SHIFT_REST_MIN,
    SegmentKind.DAY: DAILY_REST_MIN,
    SegmentKind.WEEK: WEEKLY_REST_MIN,
}


@dataclass(frozen=True)
class Segment:
    """Timeline stretch between two qualifying rests (or a timeline edge).

    ``partial`` is True when a bounding rest is missing because the
    timeline simply starts or stops there.
    """

    kind: SegmentKind
    events: tuple[Event, ...]
    leading_rest: RestBlock | None
    trailing_rest: RestBlock | None
    partial: bool

    @property
    def start(self) -> Timestamp:
        """Span start, including the leading bounding rest when present."""
        return self.leading_rest.start if self.leading_rest else self.events[0].start

    @property
    def end(self) -> Timestamp:
        """Span end, including the trailing bounding rest when present."""
        return self.trailing_rest.end if self.trailing_rest else self.events[-1].end

    @property
    def span(self) -> Duration:
        return self.end - self.start


@dataclass(frozen=True)
class CalendarWeek:
    """Monday 00:00 UTC to the following Monday 00:00, by index from 1970-01-05."""

    index: int

    @property
    def start(self) -> Timestamp:
        return MONDAY_EPOCH + self.index * WEEK_SECONDS

    @property
    def end(self) -> Timestamp:
        return self.start + WEEK_SECONDS


def week_index(t: Timestamp) -> int:
    """Calendar-week index containing moment ``t`` (negative before 1970-01-05)."""
    return (t - MONDAY_EPOCH) // WEEK_SECONDS


def rest_blocks(el: EventList) -> tuple[RestBlock, ...]:
    """Maximal rest runs in time order (one per rest event, lists being minimal)."""
    return tuple(RestBlock(e.start, e.duration) for e in el.events if e.activity is Activity.REST)


def _segments(el: EventList, kind: SegmentKind) -> tuple[Segment, ...]:
    threshold = KIND_THRESHOLD[kind]
    if not el.events:
        return ()
    bounds = [
        (i, RestBlock(e.start, e.duration))
        for i, e in enumerate(el.events)
        if e.activity is Activity.REST and e.duration >= threshold
    ]
    if not bounds:
        return (Segment(kind, el.events, None, None, partial=True),)
    segments: list[Segment] = []
    first_i, first_rest = bounds[0]
    if first_i > 0:
        segments.append(Segment(kind, el.events[:first_i], None, first_rest, partial=True))
    for (i, lead), (j, trail) in zip(bounds, bounds[1:]):
        segments.append(Segment(kind, el.events[i + 1:j], lead, trail, partial=False))
    last_i, last_rest = bounds[-1]
    if last_i + 1 < len(el.events):
        segments.append(Segment(kind, el.events[last_i + 1:], last_rest, None, partial=True))
    return tuple(segments)


def shifts_of(el: EventList) -> tuple[Segment, ...]:
    """Segments delimited by rests of at least 45 minutes."""
    return _segments(el, SegmentKind.SHIFT)


def days_of(el: EventList) -> tuple[Segment, ...]:
    """Segments delimited by rests of at least 9 hours."""
    return _segments(el, SegmentKind.DAY)


def weeks_of(el: EventList) -> tuple[Segment, ...]:
    """Segments delimited by rests of at least 24 hours."""
    return _segments(el, SegmentKind.WEEK)


def calendar_weeks_of(el: EventList) -> tuple[CalendarWeek, ...]:
    """All calendar weeks intersecting the timeline's span.

    Raises:
        EmptyTimeline: for an empty list (no span to locate).
    """
    if not el.events:
        raise EmptyTimeline("calendar weeks are undefined for an empty timeline")
    first = week_index(el.start)
    last = week_index(el.end - 1)
    return tuple(CalendarWeek(i) for i in range(first, last + 1))


Timed = Union[EventList, Segment, Iterable[Event]]


def _events_of(s: Timed) -> Iterable[Event]:
    if isinstance(s, (EventList, Segment)):
        return s.events
    return s


def driving_time(s: Timed) -> Duration:
    """Total seconds spent driving."""
    return sum(e.duration for e in _events_of(s) if e.activity is Activity.DRIVING)


def total_time(s: Timed) -> Duration:
    """Total seconds covered. For a segment this is the stretch between its
    bounding rests; for an event list it equals the span."""
    return sum(e.duration for e in _events_of(s))
