"""Driver-activity legality engine: timeline ingestion, driving/rest
restriction checks, weekly-rest counting and compensation search, plus the
meta-theory and knowledge-closure layers."""

__version__ = "0.1.0"

from .timeline import (
    Activity,
    Event,
    EventList,
    GapPolicy,
    ParseError,
    ValidationError,
    parse_events,
    serialize_events,
    validate_event_list,
)
from .segmentation import (
    CalendarWeek,
    EmptyTimeline,
    RestBlock,
    Segment,
    SegmentKind,
    calendar_weeks_of,
    days_of,
    driving_time,
    rest_blocks,
    shifts_of,
    total_time,
    week_index,
    weeks_of,
)
from .restrictions import (
    Boundary,
    CheckConfig,
    Report,
    RestClass,
    Verdict,
    Violation,
    check_all,
    check_daily_driving,
    check_daily_rest,
    check_f1,
    check_f2,
    check_f3,
    classify_rest,
)
from .weekly_regime import (
    AssignmentResult,
    CompensationPlan,
    CompensationResult,
    Donation,
    MalformedInput,
    WeekHours,
    WeeklyRest,
    assign_exact,
    assign_greedy,
    check_compensation,
    check_weekly_regime,
    weekly_hours,
    weekly_rest_candidates,
)
from .metatheory import (
    DomainError,
    NonLocalityReport,
    Profile,
    SatisfiabilityResult,
    SynthesisSpec,
    check_satisfiable,
    feasibility_probe,
    nonlocal_witness,
    probe_csv,
    synthesize_legal,
    verify_nonlocality,
)
from .knowledge import (
    Answer,
    Inconsistent,
    InferenceRule,
    KnowledgeBase,
    Proposition,
    answer_query,
    infer_fixpoint,
    infer_step,
    load_document,
)

__all__ = [name for name in dir() if not name.startswith("_")]
