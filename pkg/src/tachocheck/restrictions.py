"""Restriction checks over a validated timeline.

Each check answers "is this legal?" with a verdict carrying localized
violation witnesses. Limits are inclusive on the legal side: measuring
exactly the limit passes, one second more fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import segmentation as seg
from .timeline import HOUR, Duration, EventList, Timestamp

DAILY_DRIVING_MAX = 10 * HOUR        # hard per-day ceiling
DAILY_DRIVING_BASE = 9 * HOUR        # driving beyond this is an "extension"
EXTENSIONS_PER_WEEK = 2
SHIFT_DRIVING_MAX = 16200            # 4.5 h between 45-min breaks
WEEK_TOTAL_MAX = 6 * 24 * HOUR       # next weekly rest due within six 24-h periods
DAILY_REST_MIN = 9 * HOUR
DAILY_REST_WINDOW = 24 * HOUR
REGULAR_DAILY_MIN = 11 * HOUR
REDUCED_WEEKLY_MIN = 24 * HOUR
REGULAR_WEEKLY_MIN = 45 * HOUR


class Boundary(Enum):
    """How to treat the unseen timeline outside the analyzed window.

    OPEN assumes favorable behavior outside the window; CLOSED assumes the
    window is all there is.
    """

    OPEN = "open"
    CLOSED = "closed"


class RestClass(Enum):
    NOT_DAILY_REST = "not_daily_rest"      # < 9 h
    REDUCED_DAILY = "reduced_daily"        # [9 h, 11 h)
    REGULAR_DAILY = "regular_daily"        # [11 h, 24 h)
    REDUCED_WEEKLY = "reduced_weekly"      # [24 h, 45 h)
    REGULAR_WEEKLY = "regular_weekly"      # >= 45 h


def classify_rest(r: seg.RestBlock) -> RestClass:
    """Class of a rest block by total duration; lower bounds inclusive."""
    d = r.duration
    if d < DAILY_REST_MIN:
        return RestClass.NOT_DAILY_REST
    if d < REGULAR_DAILY_MIN:
        return RestClass.REDUCED_DAILY
    if d < REDUCED_WEEKLY_MIN:
        return RestClass.REGULAR_DAILY
    if d < REGULAR_WEEKLY_MIN:
        return RestClass.REDUCED_WEEKLY
    return RestClass.REGULAR_WEEKLY


@dataclass(frozen=True)
class Violation:
    """One localized rule breach: the interval, what was measured, the limit."""

    rule: str
    start: Timestamp
    end: Timestamp
    measured: int
    limit: int
    message: str


@dataclass(frozen=True)
class Verdict:
    legal: bool
    violations: tuple[Violation, ...] = ()

    @classmethod
    def from_violations(cls, violations: list[Violation]) -> "Verdict":
        return cls(not violations, tuple(violations))


ALL_RULES = ("f1", "daily_driving", "f2", "f3", "daily_rest", "weekly_regime")


@dataclass(frozen=True)
class CheckConfig:
    boundary: Boundary = Boundary.OPEN
    rules: frozenset[str] = frozenset(ALL_RULES)

    def __post_init__(self):
        unknown = self.rules - set(ALL_RULES)
        if unknown:
            raise ValueError(f"unknown rules: {sorted(unknown)}")


DEFAULT_CONFIG = CheckConfig()


def check_f1(el: EventList) -> Verdict:
    """Driving within any day (partial included) must not exceed 10 hours."""
    violations = [
        Violation("f1", d.start, d.end, seg.driving_time(d), DAILY_DRIVING_MAX,
                  f"day drives {seg.driving_time(d)}s, over the {DAILY_DRIVING_MAX}s limit")
        for d in seg.days_of(el)
        if seg.driving_time(d) > DAILY_DRIVING_MAX
    ]
    return Verdict.from_violations(violations)


def check_daily_driving(el: EventList) -> Verdict:
    """10-hour ceiling plus at most two days over 9 hours per calendar week.

    A day belongs to the calendar week containing its first non-bounding
    event's start.
    """
    violations = list(check_f1(el).violations)
    violations = [
        Violation("daily_driving", v.start, v.end, v.measured, v.limit, v.message)
        for v in violations
    ]
    extended: dict[int, list[seg.Segment]] = {}
    for d in seg.days_of(el):
        if seg.driving_time(d) > DAILY_DRIVING_BASE:
            extended.setdefault(seg.week_index(d.events[0].start), []).append(d)
    for week, days in sorted(extended.items()):
        if len(days) > EXTENSIONS_PER_WEEK:
            cw = seg.CalendarWeek(week)
            violations.append(Violation(
                "daily_driving", cw.start, cw.end, len(days), EXTENSIONS_PER_WEEK,
                f"{len(days)} days over {DAILY_DRIVING_BASE}s driving in week {week}, "
                f"at most {EXTENSIONS_PER_WEEK} allowed"))
    return Verdict.from_violations(violations)


def check_f2(el: EventList) -> Verdict:
    """Driving within any shift (between 45-min breaks) capped at 4.5 hours."""
    violations = [
        Violation("f2", s.start, s.end, seg.driving_time(s), SHIFT_DRIVING_MAX,
                  f"shift drives {seg.driving_time(s)}s, over the {SHIFT_DRIVING_MAX}s limit")
        for s in seg.shifts_of(el)
        if seg.driving_time(s) > SHIFT_DRIVING_MAX
    ]
    return Verdict.from_violations(violations)


def check_f3(el: EventList, cfg: CheckConfig = DEFAULT_CONFIG) -> Verdict:
    """At most six 24-hour periods may pass between 24-hour rests.

    Exceeding the bound is final regardless of unseen behavior, so OPEN and
    CLOSED coincide here; the config is accepted for interface uniformity.
    """
    violations = [
        Violation("f3", w.start, w.end, seg.total_time(w), WEEK_TOTAL_MAX,
                  f"week runs {seg.total_time(w)}s between weekly rests, over the "
                  f"{WEEK_TOTAL_MAX}s limit")
        for w in seg.weeks_of(el)
        if seg.total_time(w) > WEEK_TOTAL_MAX
    ]
    return Verdict.from_violations(violations)


def check_daily_rest(el: EventList, cfg: CheckConfig = DEFAULT_CONFIG) -> Verdict:
    """A new daily rest must have begun within 24 hours of the previous one.

    Anchors sit at the timeline start and at the end of every rest of at
    least 9 hours; a rest of at least 9 hours must begin strictly within
    24 hours after each anchor ("begun" suffices, it may end later). A final
    window cut short by the timeline end passes under OPEN; under CLOSED it
    fails unless the timeline ends exactly at the anchor.
    """
    if not el.events:
        return Verdict(True)
    qualifying = [r for r in seg.rest_blocks(el) if r.duration >= DAILY_REST_MIN]
    anchors = [el.start] + [r.end for r in qualifying]
    violations: list[Violation] = []
    for anchor in anchors:
        nxt = next((r for r in qualifying if r.start >= anchor), None)
        window_end = anchor + DAILY_REST_WINDOW
        if nxt is not None and nxt.start < window_end:
            continue
        if el.end >= window_end:
            measured = (nxt.start if nxt is not None else el.end) - anchor
            violations.append(Violation(
                "daily_rest", anchor, window_end, measured, DAILY_REST_WINDOW,
                f"no rest of {DAILY_REST_MIN}s began within {DAILY_REST_WINDOW}s "
                f"after {anchor}"))
        elif cfg.boundary is Boundary.CLOSED and el.end > anchor:
            violations.append(Violation(
                "daily_rest", anchor, el.end, el.end - anchor, DAILY_REST_WINDOW,
                f"timeline ends {el.end - anchor}s after {anchor} with no daily rest begun"))
    return Verdict.from_violations(violations)


@dataclass(frozen=True)
class Report:
    """Aggregate of per-rule verdicts for one driver's timeline."""

    driver_id: str
    overall_legal: bool
    verdicts: dict[str, Verdict]
    boundary: Boundary
    rules: tuple[str, ...]
    version: str


def check_all(el: EventList, cfg: CheckConfig = DEFAULT_CONFIG) -> Report:
    """Run every enabled rule and aggregate the verdicts."""
    from . import __version__
    from .weekly_regime import check_weekly_regime  # late import: weekly layer builds on this one

    checks = {
        "f1": lambda: check_f1(el),
        "daily_driving": lambda: check_daily_driving(el),
        "f2": lambda: check_f2(el),
        "f3": lambda: check_f3(el, cfg),
        "daily_rest": lambda: check_daily_rest(el, cfg),
        "weekly_regime": lambda: check_weekly_regime(el, cfg),
    }
    enabled = tuple(r for r in ALL_RULES if r in cfg.rules)
    verdicts = {rule: checks[rule]() for rule in enabled}
    return Report(
        driver_id=el.driver_id,
        overall_legal=all(v.legal for v in verdicts.values()),
        verdicts=verdicts,
        boundary=cfg.boundary,
        rules=enabled,
        version=__version__,
    )
