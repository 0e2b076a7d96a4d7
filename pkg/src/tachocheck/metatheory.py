"""Executable meta-theory: satisfiability witnesses, the non-locality
witness family, and an empirical linear-growth probe for the core checks.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from enum import Enum

from .restrictions import Boundary, CheckConfig, check_f1, check_f2, check_f3
from .segmentation import MONDAY_EPOCH, WEEK_SECONDS
from .timeline import HOUR, Activity, Event, EventList
from .weekly_regime import WeekHours, check_compensation


class Profile(Enum):
    MINIMAL = "minimal"
    BUSY = "busy"


@dataclass(frozen=True)
class SynthesisSpec:
    weeks: int
    seed: int = 0
    profile: Profile = Profile.BUSY

    def __post_init__(self):
        if self.weeks < 1:
            raise ValueError("weeks must be at least 1")


@dataclass(frozen=True)
class SatisfiabilityResult:
    satisfiable: bool
    witness: EventList                    # the canonical (empty) witness
    nontrivial_witness: EventList | None  # a one-week working schedule, when verified


@dataclass(frozen=True)
class NonLocalityReport:
    n: int
    full_illegal: bool
    without_first_legal: bool
    without_last_legal: bool
    witness: tuple[WeekHours, ...]

    @property
    def confirmed(self) -> bool:
        return self.full_illegal and self.without_first_legal and self.without_last_legal


@dataclass(frozen=True)
class ProbeRow:
    size: int
    nanoseconds: dict[str, int]


class DomainError(ValueError):
    """Argument outside the documented family range."""


def _busy_week(rng: random.Random, week_start: int, driver_events: list[Event]) -> None:
    # Five working days of two sub-4.5h drives around a 45-min-plus break,
    # each closed by an 11h-plus rest; the week's tail is one long rest
    # ending exactly on the next Monday, which leaves it comfortably above
    # the 45h regular weekly rest.
    t = week_start
    for day in range(5):
        for block in (
            16200 - rng.randrange(0, 601),
            -(2700 + rng.randrange(0, 901)),
            16200 - rng.randrange(0, 601),
        ):
            activity = Activity.DRIVING if block > 0 else Activity.REST
            driver_events.append(Event(t, abs(block), activity))
            t += abs(block)
        if day < 4:
            nightly = 11 * HOUR + rng.randrange(0, 3601)
            driver_events.append(Event(t, nightly, Activity.REST))
            t += nightly
    driver_events.append(Event(t, week_start + WEEK_SECONDS - t, Activity.REST))


def synthesize_legal(spec: SynthesisSpec) -> EventList:
    """Construct a schedule of the given profile that passes every check.

    MINIMAL is rest-only; for more than one week a one-second work pip marks
    each interior Monday so that every calendar week keeps a weekly rest of
    its own to count. BUSY is a full working pattern aligned to calendar
    weeks; the seed perturbs drive, break and nightly-rest lengths within
    the legal slack.
    """
    rng = random.Random(spec.seed)
    start = MONDAY_EPOCH + rng.randrange(0, 520) * WEEK_SECONDS
    events: list[Event] = []
    if spec.profile is Profile.MINIMAL:
        t = start
        for w in range(spec.weeks):
            if w < spec.weeks - 1:
                events.append(Event(t, WEEK_SECONDS - 1, Activity.REST))
                events.append(Event(t + WEEK_SECONDS - 1, 1, Activity.OTHER_WORK))
            else:
                events.append(Event(t, WEEK_SECONDS, Activity.REST))
            t += WEEK_SECONDS
    else:
        for w in range(spec.weeks):
            _busy_week(rng, start + w * WEEK_SECONDS, events)
    driver = f"synthetic-{spec.profile.value}-{spec.weeks}w-{spec.seed}"
    return EventList(tuple(events), driver)


def check_satisfiable(rules: set[str] | frozenset[str]) -> SatisfiabilityResult:
    """The empty timeline satisfies every rule; also offer a working witness."""
    from .restrictions import check_all

    cfg = CheckConfig(rules=frozenset(rules))  # validates the rule names
    empty = EventList((), "empty-witness")
    assert check_all(empty, cfg).overall_legal
    candidate = synthesize_legal(SynthesisSpec(weeks=1, seed=0, profile=Profile.BUSY))
    nontrivial = candidate if check_all(candidate, cfg).overall_legal else None
    return SatisfiabilityResult(True, empty, nontrivial)


def nonlocal_witness(n: int) -> tuple[WeekHours, ...]:
    """The n-week family that is illegal yet legal after erasing either end:
    44h, then 45h weeks, a 24h penultimate week, and a 45h last week."""
    if n < 6:
        raise DomainError(f"the non-locality family starts at 6 weeks, got {n}")
    hours = [44] + [45] * (n - 3) + [24, 45]
    return tuple(WeekHours(i, h * HOUR) for i, h in enumerate(hours))


def verify_nonlocality(n: int) -> NonLocalityReport:
    """Check the witness and both single-week erasures under an open window."""
    witness = nonlocal_witness(n)
    full = check_compensation(witness, Boundary.OPEN)
    without_first = check_compensation(witness[1:], Boundary.OPEN)
    without_last = check_compensation(witness[:-1], Boundary.OPEN)
    return NonLocalityReport(
        n=n,
        full_illegal=not full.legal,
        without_first_legal=without_first.legal,
        without_last_legal=without_last.legal,
        witness=witness,
    )


_PROBE_CHECKS = {
    "f1": check_f1,
    "f2": check_f2,
    "f3": lambda el: check_f3(el),
}
_BUSY_EVENTS_PER_WEEK = 20


def feasibility_probe(sizes: list[int], repeats: int = 3) -> list[ProbeRow]:
    """Wall time of the f1/f2/f3 checks on busy schedules of the given event
    counts (best of ``repeats`` runs each). Near-constant ratios between
    10x sizes indicate the one-pass, linear evaluation the checks claim."""
    rows: list[ProbeRow] = []
    for size in sizes:
        weeks = max(1, math.ceil(size / _BUSY_EVENTS_PER_WEEK))
        full = synthesize_legal(SynthesisSpec(weeks=weeks, seed=7, profile=Profile.BUSY))
        el = EventList(full.events[:size], full.driver_id)
        nanos: dict[str, int] = {}
        for name, check in _PROBE_CHECKS.items():
            best = None
            for _ in range(repeats):
                t0 = time.perf_counter_ns()
                check(el)
                elapsed = time.perf_counter_ns() - t0
                best = elapsed if best is None else min(best, elapsed)
            nanos[name] = max(best, 1)
        rows.append(ProbeRow(size, nanos))
    return rows


def probe_csv(rows: list[ProbeRow]) -> str:
    lines = ["size,check,nanoseconds"]
    for row in rows:
        for name, ns in row.nanoseconds.items():
            lines.append(f"{row.size},{name},{ns}")
    return "\n".join(lines) + "\n"
