import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tachocheck import Activity, Event, EventList, validate_event_list
from tachocheck.segmentation import MONDAY_EPOCH, WEEK_SECONDS
from tachocheck.timeline import HOUR, MINUTE

DRIVE = Activity.DRIVING
WORK = Activity.OTHER_WORK
AVAIL = Activity.AVAILABILITY
REST = Activity.REST


def build(pairs, start=0, driver="T1") -> EventList:
    """Contiguous event list from (duration, activity) pairs."""
    events = []
    t = start
    for duration, activity in pairs:
        events.append(Event(t, duration, activity))
        t += duration
    return validate_event_list(events, driver)


def hours_to_seconds(hours):
    return [int(h * HOUR) for h in hours]


def _regime_week(weekly_rest: int) -> list[tuple[int, Activity]]:
    # A calendar week that satisfies every daily rule and whose only rest of
    # 24h or more is one block of `weekly_rest` seconds ending on the next
    # Monday 00:00. Days are 4h drive, 45min break, 4h drive, 11h-plus rest.
    partial_day = 4 * HOUR + 45 * MINUTE + 4 * HOUR
    base_day = partial_day + 11 * HOUR
    available = WEEK_SECONDS - weekly_rest - partial_day
    n_days = available // base_day
    assert n_days >= 1, "weekly rest too long for a work week"
    slack = available - n_days * base_day
    share, first_extra = divmod(slack, n_days)
    assert 11 * HOUR + share + first_extra < 24 * HOUR, "daily rest would become weekly"
    pairs: list[tuple[int, Activity]] = []
    for day in range(n_days):
        nightly = 11 * HOUR + share + (first_extra if day == 0 else 0)
        pairs += [(4 * HOUR, DRIVE), (45 * MINUTE, REST), (4 * HOUR, DRIVE), (nightly, REST)]
    pairs += [(4 * HOUR, DRIVE), (45 * MINUTE, REST), (4 * HOUR, DRIVE), (weekly_rest, REST)]
    assert sum(d for d, _ in pairs) == WEEK_SECONDS
    return pairs


def regime_events(weekly_rest_hours, start_week=0, driver="T1") -> EventList:
    """Timeline of full calendar weeks whose counted weekly rests are the
    given hour values, legal under every non-weekly rule."""
    pairs: list[tuple[int, Activity]] = []
    for h in weekly_rest_hours:
        pairs += _regime_week(int(h * HOUR))
    return build(pairs, start=MONDAY_EPOCH + start_week * WEEK_SECONDS, driver=driver)


def figure_1_events(driver="T1") -> EventList:
    """Six calendar weeks, five weekly rests: one inside week 0, a 48h rest
    straddling the week 1|2 boundary, a 72h rest straddling 2|3, and one
    inside each of weeks 4 and 5. Fillers are other work."""
    t0 = MONDAY_EPOCH
    rests = [  # (offset hours from t0, duration hours)
        (24, 45),
        (312, 48),   # crosses 336h = Monday between weeks 1 and 2
        (468, 72),   # crosses 504h = Monday between weeks 2 and 3
        (722, 45),
        (890, 45),
    ]
    events = []
    t = t0
    for offset, duration in rests:
        start = t0 + offset * HOUR
        if start > t:
            events.append(Event(t, start - t, WORK))
        events.append(Event(start, duration * HOUR, REST))
        t = start + duration * HOUR
    end = t0 + 6 * WEEK_SECONDS
    events.append(Event(t, end - t, WORK))
    return validate_event_list(events, driver)


@pytest.fixture
def figure_1():
    return figure_1_events()


@pytest.fixture
def figure_2():
    return regime_events([44, 45, 45, 45, 24, 45])
