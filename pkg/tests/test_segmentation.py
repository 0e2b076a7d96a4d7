import pytest
from hypothesis import given, strategies as st

from conftest import DRIVE, REST, WORK, build
from oracles import week_index_datetime
from tachocheck import (
    EmptyTimeline,
    calendar_weeks_of,
    days_of,
    driving_time,
    rest_blocks,
    shifts_of,
    total_time,
    week_index,
    weeks_of,
)
from tachocheck.metatheory import Profile, SynthesisSpec, synthesize_legal
from tachocheck.segmentation import KIND_THRESHOLD, MONDAY_EPOCH, WEEK_SECONDS, SegmentKind
from tachocheck.timeline import HOUR

H = HOUR


class TestRestBlocks:
    def test_adjacent_rests_form_one_block(self):
        el = build([(H, DRIVE), (30 * 60, REST), (H, DRIVE)])
        assert [(r.start, r.duration) for r in rest_blocks(el)] == [(H, 1800)]

    def test_all_rest_day(self):
        el = build([(24 * H, REST)])
        assert [r.duration for r in rest_blocks(el)] == [86400]

    def test_no_rest(self):
        assert rest_blocks(build([(H, DRIVE), (H, WORK)])) == ()


class TestShifts:
    def test_bounded_shift(self):
        el = build([(H, REST), (4 * H, DRIVE), (H, REST)])
        (shift,) = shifts_of(el)
        assert not shift.partial
        assert driving_time(shift) == 4 * H
        assert shift.leading_rest.duration == H and shift.trailing_rest.duration == H

    def test_no_qualifying_rest_one_partial(self):
        el = build([(2 * H, DRIVE), (30 * 60, REST), (2 * H, DRIVE)])
        (shift,) = shifts_of(el)
        assert shift.partial
        assert shift.span == el.span

    def test_two_bounded_shifts(self):
        el = build([(2700, REST), (H, DRIVE), (2700, REST), (2 * H, DRIVE), (2700, REST)])
        segs = shifts_of(el)
        assert [s.partial for s in segs] == [False, False]
        assert [driving_time(s) for s in segs] == [H, 2 * H]


class TestDays:
    def test_bounded_day(self):
        el = build([(9 * H, REST), (8 * H, DRIVE), (9 * H, REST)])
        (day,) = days_of(el)
        assert not day.partial and driving_time(day) == 8 * H

    def test_eight_hour_rest_does_not_delimit(self):
        el = build([(9 * H, REST), (8 * H, DRIVE), (8 * H, REST), (8 * H, DRIVE), (9 * H, REST)])
        (day,) = days_of(el)
        assert not day.partial
        assert driving_time(day) == 16 * H

    def test_empty(self):
        assert days_of(build([])) == ()


class TestWeeks:
    def test_working_week(self):
        pairs = [(24 * H, REST), (9 * H, DRIVE), (11 * H, REST), (9 * H, DRIVE),
                 (11 * H, REST), (9 * H, DRIVE), (45 * H, REST)]
        el = build(pairs)
        (week,) = weeks_of(el)
        assert not week.partial
        assert total_time(week) == 49 * H  # the stretch between the two weekly rests

    def test_no_weekly_rest_is_one_partial(self):
        el = build([(23 * H, REST), (100 * H, WORK)])
        (week,) = weeks_of(el)
        assert week.partial

    def test_rest_drive_rest(self):
        el = build([(45 * H, REST), (H, DRIVE), (45 * H, REST)])
        (week,) = weeks_of(el)
        assert week.span == 91 * H
        assert total_time(week) == H


class TestCalendarWeeks:
    def test_first_monday_week(self):
        el = build([(WEEK_SECONDS, WORK)], start=MONDAY_EPOCH)
        weeks = calendar_weeks_of(el)
        assert [w.index for w in weeks] == [0]
        # derived from the day-of-week oracle: 1970-01-05 is a Monday
        assert week_index_datetime(MONDAY_EPOCH) == 0
        assert week_index_datetime(MONDAY_EPOCH + WEEK_SECONDS - 1) == 0

    def test_boundary_spanning(self):
        el = build([(2 * H, WORK)], start=MONDAY_EPOCH + WEEK_SECONDS - H)
        assert [w.index for w in calendar_weeks_of(el)] == [0, 1]

    def test_epoch_is_week_minus_one(self):
        el = build([(1, WORK)], start=0)
        assert [w.index for w in calendar_weeks_of(el)] == [-1]
        assert week_index_datetime(0) == -1

    def test_empty_raises(self):
        with pytest.raises(EmptyTimeline):
            calendar_weeks_of(build([]))


@given(st.integers(0, 4 * 10**9))
def test_week_index_matches_datetime_oracle(t):
    assert week_index(t) == week_index_datetime(t)


class TestAggregators:
    def test_driving_time(self):
        el = build([(2 * H, DRIVE), (H, REST), (3 * H, DRIVE)])
        assert driving_time(el) == 18000

    def test_driving_time_empty_and_rest_only(self):
        assert driving_time(build([])) == 0
        assert driving_time(build([(5 * H, REST)])) == 0

    def test_total_time(self):
        assert total_time(build([(2 * H, DRIVE), (H, REST)])) == 10800
        assert total_time(build([])) == 0
        assert total_time(build([(45 * H, REST)])) == 162000


def _spans(segments):
    return [(s.start, s.end) for s in segments]


@given(st.lists(st.tuples(st.integers(60, 40 * H),
                          st.sampled_from([DRIVE, WORK, REST])), min_size=1, max_size=40))
def test_segments_tile_the_span(specs):
    el = build(specs)
    for kind, segs_fn in ((SegmentKind.SHIFT, shifts_of),
                          (SegmentKind.DAY, days_of),
                          (SegmentKind.WEEK, weeks_of)):
        segs = segs_fn(el)
        if not segs:
            # only a lone qualifying rest produces no segments at all
            (block,) = rest_blocks(el)
            assert block.duration >= KIND_THRESHOLD[kind]
            assert (block.start, block.end) == (el.start, el.end)
            continue
        spans = _spans(segs)
        assert spans[0][0] == el.start and spans[-1][1] == el.end
        for (_, prev_end), (nxt_start, _) in zip(spans, spans[1:]):
            shared = next(s.trailing_rest for s in segs if s.end == prev_end)
            assert nxt_start == shared.start  # consecutive segments share the bounding rest


@given(st.lists(st.tuples(st.integers(60, 40 * H),
                          st.sampled_from([DRIVE, WORK, REST])), min_size=1, max_size=40))
def test_threshold_nesting(specs):
    el = build(specs)
    shift_bounds = {s.leading_rest for s in shifts_of(el)} | {s.trailing_rest for s in shifts_of(el)}
    for day in days_of(el):
        for rest in (day.leading_rest, day.trailing_rest):
            assert rest is None or rest in shift_bounds
    day_bounds = {d.leading_rest for d in days_of(el)} | {d.trailing_rest for d in days_of(el)}
    for week in weeks_of(el):
        for rest in (week.leading_rest, week.trailing_rest):
            assert rest is None or rest in day_bounds


def test_aggregators_additive_and_ordered():
    el = synthesize_legal(SynthesisSpec(weeks=2, seed=3, profile=Profile.BUSY))
    for segs in (shifts_of(el), days_of(el), weeks_of(el)):
        for s in segs:
            assert driving_time(s) <= total_time(s)
    left = build([(H, DRIVE), (H, REST)])
    right = build([(H, WORK)], start=left.end)
    both = build([(H, DRIVE), (H, REST), (H, WORK)])
    assert driving_time(both) == driving_time(left) + driving_time(right)
    assert total_time(both) == total_time(left) + total_time(right)
