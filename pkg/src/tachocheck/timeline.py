"""Canonical event data model and event-log ingestion.

A driver's recorded activity is a gapless, time-sorted sequence of events
(driving, other work, availability, rest) with whole-second resolution.
Everything downstream (segmentation, restriction checks, weekly-rest
analysis) consumes the validated ``EventList`` built here.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

# Whole seconds since 1970-01-01 00:00:00 UTC. No sub-second values exist
# anywhere in the system; no time zones, no leap seconds.
Timestamp = int
Duration = int

SECOND = 1
MINUTE = 60
HOUR = 3600
DAY = 86400


class Activity(Enum):
    """The four recorded activity kinds. An event has exactly one."""

    DRIVING = "driving"
    OTHER_WORK = "other_work"
    AVAILABILITY = "availability"
    REST = "rest"

    @classmethod
    def from_token(cls, token: str) -> "Activity":
        try:
            return cls(token)
        except ValueError:
            raise KeyError(token) from None


class TimelineError(Exception):
    """Base class for timeline ingestion errors."""


class ValidationError(TimelineError):
    """A raw event sequence violates a structural invariant.

    ``index`` is the 0-based position of the later event of the first
    offending pair (or of the offending event itself for zero durations).
    """

    def __init__(self, kind: str, index: int, message: str, missing_seconds: int = 0):
        super().__init__(message)
        self.kind = kind
        self.index = index
        self.missing_seconds = missing_seconds

    @classmethod
    def overlap(cls, index: int, prev_end: Timestamp, start: Timestamp) -> "ValidationError":
        return cls(
            "overlap", index,
            f"event {index} starts at {start} before previous event ends at {prev_end}",
        )

    @classmethod
    def gap(cls, index: int, prev_end: Timestamp, start: Timestamp) -> "ValidationError":
        return cls(
            "gap", index,
            f"event {index} starts at {start}, leaving {start - prev_end}s uncovered after {prev_end}",
            missing_seconds=start - prev_end,
        )

    @classmethod
    def zero_duration(cls, index: int, start: Timestamp) -> "ValidationError":
        return cls("zero_duration", index, f"event {index} at {start} has non-positive duration")


class ParseError(TimelineError):
    """Malformed event-log text. Carries the 1-based source line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Event:
    """One recorded activity interval: occupies [start, start + duration)."""

    start: Timestamp
    duration: Duration
    activity: Activity
    crew: int | None = None  # recorded but ignored by every check

    @property
    def end(self) -> Timestamp:
        return self.start + self.duration


@dataclass(frozen=True)
class EventList:
    """A validated, contiguous, minimal event sequence for one driver.

    Invariants (established by :func:`validate_event_list`):
      - consecutive events are contiguous: ``events[i+1].start == events[i].end``;
      - no two adjacent events share an activity (same-activity runs merge);
      - may be empty.
    """

    events: tuple[Event, ...] = ()
    driver_id: str = ""

    @property
    def start(self) -> Timestamp:
        return self.events[0].start if self.events else 0

    @property
    def end(self) -> Timestamp:
        return self.events[-1].end if self.events else 0

    @property
    def span(self) -> Duration:
        return self.end - self.start

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


@dataclass(frozen=True)
class GapPolicy:
    """What to do with uncovered time between parsed records.

    ``fill`` of None rejects gaps (the default); otherwise each hole becomes
    one synthetic event of that activity.
    """

    fill: Activity | None = None

    @classmethod
    def reject(cls) -> "GapPolicy":
        return cls(None)

    @classmethod
    def fill_with_rest(cls) -> "GapPolicy":
        return cls(Activity.REST)

    @classmethod
    def fill_with(cls, activity: Activity) -> "GapPolicy":
        return cls(activity)


REJECT_GAPS = GapPolicy.reject()


def _merge_adjacent(events: list[Event]) -> tuple[Event, ...]:
    # Adjacent same-activity events collapse into one; the first event's
    # crew value is kept.
    merged: list[Event] = []
    for e in events:
        if merged and merged[-1].activity is e.activity:
            prev = merged[-1]
            merged[-1] = replace(prev, duration=prev.duration + e.duration)
        else:
            merged.append(e)
    return tuple(merged)


def validate_event_list(
    raw: Sequence[Event] | Iterable[Event],
    driver_id: str = "",
    gaps: GapPolicy = REJECT_GAPS,
) -> EventList:
    """Build a contiguous, merged :class:`EventList` from raw events.

    Sorts by start time, then rejects the first overlap, gap (unless the
    policy fills it) or non-positive duration found.

    Raises:
        ValidationError: with the kind and index of the first offence.
    """
    events = sorted(raw, key=lambda e: (e.start, e.end))
    for i, e in enumerate(events):
        if e.duration <= 0:
            raise ValidationError.zero_duration(i, e.start)
    filled: list[Event] = []
    for i, e in enumerate(events):
        if filled:
            prev_end = filled[-1].end
            if e.start < prev_end:
                raise ValidationError.overlap(i, prev_end, e.start)
            if e.start > prev_end:
                if gaps.fill is None:
                    raise ValidationError.gap(i, prev_end, e.start)
                filled.append(Event(prev_end, e.start - prev_end, gaps.fill))
        filled.append(e)
    return EventList(_merge_adjacent(filled), driver_id)


CSV_HEADER = ("driver_id", "start", "duration", "activity", "crew")


def _record(line: int, driver: str, start: str, dur: str, act: str, crew: str) -> tuple[str, Event]:
    try:
        start_s = int(start)
        dur_s = int(dur)
    except ValueError:
        raise ParseError(line, f"start/duration must be decimal integers, got {start!r}/{dur!r}")
    if start_s < 0:
        raise ParseError(line, f"negative start time {start_s}")
    try:
        activity = Activity.from_token(act)
    except KeyError:
        raise ParseError(line, f"unknown activity {act!r}")
    crew_n: int | None = None
    if crew not in ("", None):
        try:
            crew_n = int(crew)
        except ValueError:
            raise ParseError(line, f"crew must be a positive integer, got {crew!r}")
        if crew_n <= 0:
            raise ParseError(line, f"crew must be a positive integer, got {crew_n}")
    return driver, Event(start_s, dur_s, activity, crew_n)


def _parse_csv(text: str) -> tuple[str, list[Event]]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return "", []
    if tuple(rows[0]) != CSV_HEADER:
        raise ParseError(1, f"expected header {','.join(CSV_HEADER)}")
    driver = ""
    events: list[Event] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 5:
            raise ParseError(lineno, f"expected 5 fields, got {len(row)}")
        row_driver, event = _record(lineno, *row)
        if events and row_driver != driver:
            raise ParseError(lineno, f"mixed driver ids {driver!r} and {row_driver!r}")
        driver = row_driver
        events.append(event)
    return driver, events


def _parse_json(text: str) -> tuple[str, list[Event]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg)
    if not isinstance(data, list):
        raise ParseError(1, "expected a JSON array of event objects")
    driver = ""
    events: list[Event] = []
    for i, obj in enumerate(data):
        if not isinstance(obj, dict):
            raise ParseError(1, f"entry {i} is not an object")
        try:
            row = (str(obj.get("driver_id", "")), str(obj["start"]), str(obj["duration"]),
                   str(obj["activity"]), "" if obj.get("crew") is None else str(obj["crew"]))
        except KeyError as exc:
            raise ParseError(1, f"entry {i} is missing field {exc.args[0]!r}")
        row_driver, event = _record(1, *row)
        if events and row_driver != driver:
            raise ParseError(1, f"mixed driver ids {driver!r} and {row_driver!r}")
        driver = row_driver
        events.append(event)
    return driver, events


def parse_events(text: str, format: str = "csv", gaps: GapPolicy = REJECT_GAPS) -> EventList:
    """Parse an event log (``csv`` or ``json``) and validate it.

    Raises:
        ParseError: on malformed text or unknown activity tokens.
        ValidationError: when the parsed records overlap or leave gaps
            rejected by the policy.
    """
    if format == "csv":
        driver, events = _parse_csv(text)
    elif format == "json":
        driver, events = _parse_json(text)
    else:
        raise ValueError(f"unknown format {format!r}")
    return validate_event_list(events, driver, gaps)


def serialize_events(el: EventList, format: str = "csv") -> str:
    """Byte-stable rendering: header order, no padding, LF line endings."""
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for e in el.events:
            writer.writerow([el.driver_id, e.start, e.duration, e.activity.value,
                             "" if e.crew is None else e.crew])
        return out.getvalue()
    if format == "json":
        rows = [
            {"activity": e.activity.value, "crew": e.crew, "driver_id": el.driver_id,
             "duration": e.duration, "start": e.start}
            for e in el.events
        ]
        return json.dumps(rows, sort_keys=True, indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")


def sniff_format(text: str) -> str:
    """Guess csv vs json from the first non-space character."""
    stripped = text.lstrip()
    return "json" if stripped[:1] in ("[", "{") else "csv"
