"""Weekly-rest counting and reduced-rest compensation search.

Two coupled problems decide the weekly layer:

1. Counting: a weekly rest (any rest of 24 hours or more) that straddles a
   Monday-midnight boundary may be counted in either adjacent calendar week,
   never both. Every in-scope week must end up with a counted weekly rest.
2. Compensation: a week whose counted rest is below 45 hours is "reduced";
   the missing amount must be donated en bloc by extra rest in one of the
   three following weeks, no two consecutive weeks may both be reduced, and
   a donor's own classification is recomputed after its donation.

Compensation flows strictly forward. Under an OPEN window boundary, a debt
whose three-week deadline extends past the window is assumed settled
outside it; under CLOSED every debt must settle in-window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .restrictions import (
    Boundary,
    CheckConfig,
    DEFAULT_CONFIG,
    REDUCED_WEEKLY_MIN,
    REGULAR_WEEKLY_MIN,
    Verdict,
    Violation,
)
from .segmentation import CalendarWeek, RestBlock, calendar_weeks_of, rest_blocks, week_index
from .timeline import EventList

COMPENSATION_HORIZON = 3  # donor week at most this many weeks after the debtor


class MalformedInput(ValueError):
    """Week-hours input is not a contiguous sequence of non-negative seconds."""


@dataclass(frozen=True)
class WeeklyRest:
    """A rest block long enough to count as weekly rest, with the calendar
    weeks it may be counted in (the weeks of its first and last second)."""

    rest: RestBlock
    candidates: frozenset[int]

    @property
    def duration(self) -> int:
        return self.rest.duration

    def weeks(self) -> list[int]:
        return sorted(self.candidates)


@dataclass(frozen=True)
class AssignmentResult:
    feasible: bool
    assignment: dict[WeeklyRest, int] | None
    blamed_weeks: frozenset[int]


@dataclass(frozen=True)
class WeekHours:
    """Counted weekly rest for one calendar week."""

    week: int
    rest_seconds: int


@dataclass(frozen=True)
class Donation:
    debtor_week: int
    donor_week: int
    seconds: int


@dataclass(frozen=True)
class CompensationPlan:
    donations: tuple[Donation, ...]
    effective: dict[int, int]


@dataclass(frozen=True)
class CompensationResult:
    verdict: Verdict
    plan: CompensationPlan | None

    @property
    def legal(self) -> bool:
        return self.verdict.legal


def weekly_rest_candidates(el: EventList) -> tuple[WeeklyRest, ...]:
    """All rests of at least 24 hours, with their candidate calendar weeks."""
    return tuple(
        WeeklyRest(r, frozenset({week_index(r.start), week_index(r.end - 1)}))
        for r in rest_blocks(el)
        if r.duration >= REDUCED_WEEKLY_MIN
    )


def _check_week_range(rests: Iterable[WeeklyRest], weeks: Sequence[int]) -> list[int]:
    weeks = sorted(weeks)
    if weeks and weeks != list(range(weeks[0], weeks[-1] + 1)):
        raise ValueError("weeks must form a contiguous index range")
    candidates = {w for r in rests for w in r.candidates}
    if not candidates <= set(weeks):
        raise ValueError(f"rest candidates {sorted(candidates - set(weeks))} outside week range")
    return weeks


def assign_greedy(rests: Sequence[WeeklyRest], weeks: Sequence[int]) -> AssignmentResult:
    """Left-to-right counting: a straddling rest goes to its earlier week if
    that week still needs one, otherwise to the later week. Blames the first
    week left without a counted rest."""
    weeks = _check_week_range(rests, weeks)
    ordered = sorted(rests, key=lambda r: r.rest.start)
    assignment: dict[WeeklyRest, int] = {}
    covered: set[int] = set()
    for w in weeks:
        for r in ordered:
            if r in assignment:
                continue
            cand = r.weeks()
            if cand[0] != w:
                continue
            chosen = cand[-1] if len(cand) > 1 and w in covered else w
            assignment[r] = chosen
            covered.add(chosen)
    uncovered = [w for w in weeks if w not in covered]
    if uncovered:
        return AssignmentResult(False, assignment, frozenset({uncovered[0]}))
    return AssignmentResult(True, assignment, frozenset())


def _neighbourhood(rests: Sequence[WeeklyRest], weeks: Iterable[int]) -> set[WeeklyRest]:
    ws = set(weeks)
    return {r for r in rests if r.candidates & ws}


def assign_exact(rests: Sequence[WeeklyRest], weeks: Sequence[int]) -> AssignmentResult:
    """Exact decision: is there any way of counting that covers every week?

    Coverage needs each week to claim a distinct rest from among those that
    may be counted in it, i.e. a week-saturating matching. On failure the
    blame is an inclusion-minimal set of weeks demanding more rests than
    exist (a Hall-condition violator), not a single arbitrary week.
    """
    weeks = _check_week_range(rests, weeks)
    ordered = sorted(rests, key=lambda r: r.rest.start)
    adj = {w: [r for r in ordered if w in r.candidates] for w in weeks}
    matched_rest: dict[WeeklyRest, int] = {}

    def augment(w: int, seen: set[WeeklyRest]) -> bool:
        for r in adj[w]:
            if r in seen:
                continue
            seen.add(r)
            if r not in matched_rest or augment(matched_rest[r], seen):
                matched_rest[r] = w
                return True
        return False

    unmatched = [w for w in weeks if not augment(w, set())]
    if not unmatched:
        assignment = dict(matched_rest)
        for r in ordered:
            if r not in assignment:
                assignment[r] = r.weeks()[0]
        return AssignmentResult(True, assignment, frozenset())

    # Alternating reachability from an unsaturated week yields a deficient
    # week set; shrink it until no week can be dropped.
    blamed = {unmatched[0]}
    while True:
        reach_rests = _neighbourhood(ordered, blamed)
        next_weeks = blamed | {matched_rest[r] for r in reach_rests if r in matched_rest}
        if next_weeks == blamed:
            break
        blamed = next_weeks
    changed = True
    while changed:
        changed = False
        for w in sorted(blamed):
            smaller = blamed - {w}
            if smaller and len(_neighbourhood(ordered, smaller)) < len(smaller):
                blamed = smaller
                changed = True
                break
    return AssignmentResult(False, None, frozenset(blamed))


def weekly_hours(el: EventList, assignment: dict[WeeklyRest, int]) -> tuple[WeekHours, ...]:
    """Counted weekly rest per calendar week: the longest rest assigned to
    it (surplus assigned rests do not add up), zero when none."""
    best: dict[int, int] = {}
    for rest, w in assignment.items():
        best[w] = max(best.get(w, 0), rest.duration)
    return tuple(WeekHours(cw.index, best.get(cw.index, 0)) for cw in calendar_weeks_of(el))


def _normalize_hours(hours: Sequence[WeekHours] | Sequence[int]) -> list[WeekHours]:
    packed = [
        wh if isinstance(wh, WeekHours) else WeekHours(i, int(wh))
        for i, wh in enumerate(hours)
    ]
    for wh in packed:
        if wh.rest_seconds < 0:
            raise MalformedInput(f"week {wh.week} has negative rest {wh.rest_seconds}")
    for a, b in zip(packed, packed[1:]):
        if b.week != a.week + 1:
            raise MalformedInput(f"weeks {a.week} and {b.week} are not contiguous")
    return packed


class _Frontier:
    """Deepest week any search branch died at, with the reasons seen there."""

    def __init__(self) -> None:
        self.week: int | None = None
        self.reasons: list[str] = []

    def note(self, week: int, reason: str) -> None:
        if self.week is None or week > self.week:
            self.week = week
            self.reasons = [reason]
        elif week == self.week and reason not in self.reasons:
            self.reasons.append(reason)


Debt = tuple[int, int]  # (debtor week, seconds owed)


def _hosting_choices(pending: tuple[Debt, ...], week: int, available: int,
                     prev_reduced: bool, frontier: _Frontier):
    """Yield (remaining debts, reduced flag, effective rest, hosted debts)
    for every legal way this week can host pending donations.

    Debts whose three-week deadline lands on this week must be hosted now;
    the rest are optional. Each hosted debt is donated whole.
    """
    mandatory = tuple(d for d in pending if d[0] + COMPENSATION_HORIZON == week)
    optional = tuple(d for d in pending if d[0] + COMPENSATION_HORIZON != week)
    for bits in range(1 << len(optional)):
        extra = tuple(d for i, d in enumerate(optional) if bits >> i & 1)
        hosted = mandatory + extra
        effective = available - sum(a for _, a in hosted)
        if effective < REDUCED_WEEKLY_MIN:
            if hosted:
                frontier.note(week, "donating would drop its weekly rest below 24h")
            else:
                frontier.note(week, "no weekly rest of at least 24h to count")
            continue
        reduced = effective < REGULAR_WEEKLY_MIN
        if reduced and prev_reduced:
            frontier.note(week, "two consecutive weeks with reduced weekly rest")
            continue
        remaining = tuple(d for i, d in enumerate(optional) if not bits >> i & 1)
        if reduced:
            remaining = remaining + ((week, REGULAR_WEEKLY_MIN - effective),)
        yield remaining, reduced, effective, hosted


def check_compensation(
    hours: Sequence[WeekHours] | Sequence[int],
    boundary: Boundary = Boundary.OPEN,
) -> CompensationResult:
    """Decide whether the reduced-rest debts of a week window can all be
    compensated, and produce a witness plan when they can.

    Depth-first search over donor choices; donation amounts are forced (each
    debt is exactly the week's reduction), so branching is only on where
    each debt lands. Failed (week, pending-debts) states are memoized.
    """
    packed = _normalize_hours(hours)
    n = len(packed)
    if n == 0:
        return CompensationResult(Verdict(True), CompensationPlan((), {}))
    first = packed[0].week
    rest = [wh.rest_seconds for wh in packed]
    frontier = _Frontier()
    dead: set[tuple[int, tuple[Debt, ...], bool]] = set()

    def search(pos: int, pending: tuple[Debt, ...], prev_reduced: bool):
        if pos == n:
            if boundary is Boundary.CLOSED and pending:
                frontier.note(first + n - 1,
                              "debts of weeks %s cannot settle inside a closed window"
                              % sorted(d for d, _ in pending))
                return None
            return []
        key = (pos, pending, prev_reduced)
        if key in dead:
            return None
        week = first + pos
        for remaining, reduced, effective, hosted in _hosting_choices(
                pending, week, rest[pos], prev_reduced, frontier):
            tail = search(pos + 1, remaining, reduced)
            if tail is not None:
                return [(week, effective, hosted)] + tail
        dead.add(key)
        return None

    path = search(0, (), False)
    if path is None:
        week = frontier.week if frontier.week is not None else first
        why = "; ".join(frontier.reasons) or "no compensation plan exists"
        pos = week - first
        violation = Violation(
            "weekly_regime", week, week, rest[pos] if 0 <= pos < n else 0,
            REGULAR_WEEKLY_MIN, f"week {week}: {why}")
        return CompensationResult(Verdict(False, (violation,)), None)
    donations = tuple(
        Donation(debtor, week, amount)
        for week, _, hosted in path
        for debtor, amount in hosted
    )
    effective = {week: eff for week, eff, _ in path}
    return CompensationResult(Verdict(True), CompensationPlan(donations, effective))


def check_weekly_regime(el: EventList, cfg: CheckConfig = DEFAULT_CONFIG) -> Verdict:
    """Legal iff some way of counting the weekly rests admits a legal
    compensation plan for the resulting per-week hours.

    Counting choices and compensation are searched together, week by week,
    memoizing failed states, so straddling rests do not blow up into a
    separate enumeration per assignment.
    """
    if not el.events:
        return Verdict(True)
    weeks = [cw.index for cw in calendar_weeks_of(el)]
    rests = weekly_rest_candidates(el)

    exact = assign_exact(rests, weeks)
    if not exact.feasible:
        blamed = sorted(exact.blamed_weeks)
        span = CalendarWeek(blamed[0]).start, CalendarWeek(blamed[-1]).end
        violation = Violation(
            "weekly_regime", span[0], span[1], len(_neighbourhood(rests, blamed)),
            len(blamed),
            "weeks %s demand %d weekly rests but only %d can be counted there"
            % (blamed, len(blamed), len(_neighbourhood(rests, blamed))))
        return Verdict(False, (violation,))

    interior_max: dict[int, int] = {w: 0 for w in weeks}
    straddle: dict[int, WeeklyRest] = {}
    loose: list[WeeklyRest] = []
    for r in rests:
        cand = r.weeks()
        if len(cand) == 1:
            interior_max[cand[0]] = max(interior_max[cand[0]], r.duration)
        elif cand[1] == cand[0] + 1 and cand[0] not in straddle:
            straddle[cand[0]] = r
        else:
            loose.append(r)  # spans several boundaries, or shares one: rare, pre-branched

    n = len(weeks)
    frontier = _Frontier()

    def run(fixed: dict[int, int]) -> bool:
        base = {w: max(interior_max[w], fixed.get(w, 0)) for w in weeks}
        dead: set[tuple[int, bool, tuple[Debt, ...], bool]] = set()

        def search(pos: int, carried: int, pending: tuple[Debt, ...], prev_reduced: bool) -> bool:
            if pos == n:
                return not (cfg.boundary is Boundary.CLOSED and pending)
            key = (pos, carried > 0, pending, prev_reduced)
            if key in dead:
                return False
            week = weeks[pos]
            s = straddle.get(week)
            pools: list[tuple[int, int]] = []  # (hours this week, carry to the next)
            here = max(base[week], carried)
            if s is not None and pos + 1 < n:
                pools.append((here, s.duration))          # push the straddler right
                pools.append((max(here, s.duration), 0))  # count it here
            else:
                pools.append((max(here, s.duration if s else 0), 0))
            for hours_w, carry in pools:
                for remaining, reduced, _, _ in _hosting_choices(
                        pending, week, hours_w, prev_reduced, frontier):
                    if search(pos + 1, carry, remaining, reduced):
                        return True
            dead.add(key)
            return False

        return search(0, 0, (), False)

    def branch(idx: int, fixed: dict[int, int]) -> bool:
        if idx == len(loose):
            return run(fixed)
        r = loose[idx]
        for w in r.weeks():
            chosen = dict(fixed)
            chosen[w] = max(chosen.get(w, 0), r.duration)
            if branch(idx + 1, chosen):
                return True
        return False

    if branch(0, {}):
        return Verdict(True)
    week = frontier.week if frontier.week is not None else weeks[0]
    cw = CalendarWeek(week)
    why = "; ".join(frontier.reasons) or "no compensation plan exists"
    violation = Violation(
        "weekly_regime", cw.start, cw.end, interior_max.get(week, 0),
        REGULAR_WEEKLY_MIN, f"week {week}: {why}")
    return Verdict(False, (violation,))
