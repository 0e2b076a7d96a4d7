"""Command-line surface: validate, check, assign, compensate,
analyze-locality, synthesize, bench, report.

Exit codes: 0 legal/success, 1 illegal (a report is still emitted),
2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .metatheory import (
    DomainError,
    Profile,
    SynthesisSpec,
    feasibility_probe,
    probe_csv,
    synthesize_legal,
    verify_nonlocality,
)
from .restrictions import ALL_RULES, Boundary, CheckConfig, Report, check_all
from .segmentation import EmptyTimeline, calendar_weeks_of
from .timeline import (
    Activity,
    EventList,
    GapPolicy,
    TimelineError,
    parse_events,
    serialize_events,
    sniff_format,
)
from .weekly_regime import (
    MalformedInput,
    assign_exact,
    assign_greedy,
    check_compensation,
    weekly_hours,
    weekly_rest_candidates,
)

_GAP_CHOICES = {
    "reject": GapPolicy.reject(),
    "rest": GapPolicy.fill_with_rest(),
    "other_work": GapPolicy.fill_with(Activity.OTHER_WORK),
    "availability": GapPolicy.fill_with(Activity.AVAILABILITY),
    "driving": GapPolicy.fill_with(Activity.DRIVING),
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_events(path: str, gaps: str) -> EventList:
    text = _read_text(path)
    return parse_events(text, sniff_format(text), _GAP_CHOICES[gaps])


def _config(args: argparse.Namespace) -> CheckConfig:
    rules = frozenset(ALL_RULES)
    if getattr(args, "rules", None):
        rules = frozenset(token.strip() for token in args.rules.split(",") if token.strip())
    return CheckConfig(boundary=Boundary(args.boundary), rules=rules)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def report_to_dict(report: Report) -> dict:
    return {
        "schema": 1,
        "version": report.version,
        "driver_id": report.driver_id,
        "overall_legal": report.overall_legal,
        "config": {"boundary": report.boundary.value, "rules": list(report.rules)},
        "rules": {
            rule: {
                "legal": verdict.legal,
                "violations": [
                    {"rule": v.rule, "start": v.start, "end": v.end,
                     "measured": v.measured, "limit": v.limit, "message": v.message}
                    for v in verdict.violations
                ],
            }
            for rule, verdict in report.verdicts.items()
        },
    }


def emit_report(report: Report, format: str = "json") -> str:
    """Render a report: stable-keyed JSON, or text with one violation per line."""
    if format == "json":
        return _json_dump(report_to_dict(report))
    lines = [
        f"driver {report.driver_id or '(unnamed)'}: "
        f"{'LEGAL' if report.overall_legal else 'ILLEGAL'} "
        f"(boundary={report.boundary.value}, rules={','.join(report.rules)})"
    ]
    for rule in report.rules:
        verdict = report.verdicts[rule]
        if verdict.legal:
            lines.append(f"  {rule}: ok")
        for v in verdict.violations:
            lines.append(f"  {rule}: [{v.start}, {v.end}) measured={v.measured} "
                         f"limit={v.limit} {v.message}")
    return "\n".join(lines) + "\n"


def _violations_csv(report: Report) -> str:
    lines = ["rule,start,end,measured,limit,message"]
    for rule in report.rules:
        for v in report.verdicts[rule].violations:
            message = v.message.replace('"', "'")
            lines.append(f'{v.rule},{v.start},{v.end},{v.measured},{v.limit},"{message}"')
    return "\n".join(lines) + "\n"


def _cmd_validate(args) -> int:
    el = _load_events(args.file, args.gaps)
    print(f"ok: {len(el)} events, span {el.span}s, driver {el.driver_id or '(unnamed)'}")
    return 0


def _cmd_check(args) -> int:
    el = _load_events(args.file, args.gaps)
    report = check_all(el, _config(args))
    sys.stdout.write(emit_report(report, args.format))
    return 0 if report.overall_legal else 1


def _cmd_assign(args) -> int:
    el = _load_events(args.file, args.gaps)
    rests = weekly_rest_candidates(el)
    try:
        weeks = [cw.index for cw in calendar_weeks_of(el)]
    except EmptyTimeline:
        weeks = []
    solver = assign_greedy if args.greedy else assign_exact
    result = solver(rests, weeks)
    payload = {
        "algorithm": "greedy" if args.greedy else "exact",
        "feasible": result.feasible,
        "weeks": weeks,
        "blamed_weeks": sorted(result.blamed_weeks),
        "assignment": None if result.assignment is None else {
            str(rest.rest.start): week for rest, week in sorted(
                result.assignment.items(), key=lambda kv: kv[0].rest.start)
        },
    }
    sys.stdout.write(_json_dump(payload))
    return 0 if result.feasible else 1


def _parse_hours(arg: str) -> list[int]:
    text = arg if arg.lstrip().startswith("[") else _read_text(arg)
    hours = json.loads(text)
    if not isinstance(hours, list) or not all(isinstance(h, int) for h in hours):
        raise MalformedInput("expected a JSON array of integer seconds")
    return hours


def _cmd_compensate(args) -> int:
    hours = _parse_hours(args.hours)
    result = check_compensation(hours, Boundary(args.boundary))
    payload: dict = {"legal": result.legal, "boundary": args.boundary,
                     "weeks": len(hours)}
    if result.plan is not None:
        payload["donations"] = [
            {"debtor_week": d.debtor_week, "donor_week": d.donor_week, "seconds": d.seconds}
            for d in result.plan.donations
        ]
        payload["effective"] = {str(w): s for w, s in sorted(result.plan.effective.items())}
    else:
        payload["violations"] = [v.message for v in result.verdict.violations]
    sys.stdout.write(_json_dump(payload))
    if args.figure:
        from .figures import weekly_hours_figure
        from .weekly_regime import WeekHours
        weekly_hours_figure([WeekHours(i, h) for i, h in enumerate(hours)],
                            args.figure, result.plan)
    return 0 if result.legal else 1


def _cmd_analyze_locality(args) -> int:
    report = verify_nonlocality(args.n)
    payload = {
        "n": report.n,
        "confirmed": report.confirmed,
        "full_illegal": report.full_illegal,
        "without_first_legal": report.without_first_legal,
        "without_last_legal": report.without_last_legal,
        "witness_hours_seconds": [wh.rest_seconds for wh in report.witness],
    }
    sys.stdout.write(_json_dump(payload))
    if args.figure:
        from .figures import nonlocality_figure
        nonlocality_figure(report, args.figure)
    return 0 if report.confirmed else 1


def _cmd_synthesize(args) -> int:
    spec = SynthesisSpec(weeks=args.weeks, seed=args.seed, profile=Profile(args.profile))
    sys.stdout.write(serialize_events(synthesize_legal(spec), args.format))
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(token) for token in args.sizes.split(",") if token.strip()]
    sys.stdout.write(probe_csv(feasibility_probe(sizes)))
    return 0


def _cmd_report(args) -> int:
    from .figures import timeline_figure, weekly_hours_figure

    el = _load_events(args.file, args.gaps)
    report = check_all(el, _config(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(emit_report(report, "json"), encoding="utf-8")
    (out / "violations.csv").write_text(_violations_csv(report), encoding="utf-8")
    written = ["report.json", "violations.csv"]
    if el.events:
        timeline_figure(el, str(out / "timeline.png"))
        written.append("timeline.png")
        rests = weekly_rest_candidates(el)
        weeks = [cw.index for cw in calendar_weeks_of(el)]
        result = assign_exact(rests, weeks)
        assignment = result.assignment
        if assignment is None:
            assignment = assign_greedy(rests, weeks).assignment or {}
        hours = weekly_hours(el, assignment)
        plan = check_compensation(hours, report.boundary).plan
        weekly_hours_figure(hours, str(out / "weekly_hours.png"), plan)
        written.append("weekly_hours.png")
    print(f"wrote {', '.join(written)} to {out}")
    return 0 if report.overall_legal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tachocheck",
        description="Check driver activity timelines against driving and rest rules.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("file", help="event log (CSV or JSON array), '-' for stdin")
        p.add_argument("--gaps", choices=sorted(_GAP_CHOICES), default="reject",
                       help="how to treat uncovered time between records")

    p = sub.add_parser("validate", help="parse and validate an event log")
    add_input(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="run the restriction checks")
    add_input(p)
    p.add_argument("--boundary", choices=["open", "closed"], default="open")
    p.add_argument("--rules", help="comma-separated rule subset (default: all)")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("assign", help="count weekly rests into calendar weeks")
    add_input(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--greedy", action="store_true")
    p.set_defaults(func=_cmd_assign)

    p = sub.add_parser("compensate", help="check per-week rest hours for compensability")
    p.add_argument("hours", help="JSON array of weekly rest seconds, or a file holding one")
    p.add_argument("--boundary", choices=["open", "closed"], default="open")
    p.add_argument("--figure", help="also render the week chart to this PNG path")
    p.set_defaults(func=_cmd_compensate)

    p = sub.add_parser("analyze-locality", help="verify the non-locality witness family")
    p.add_argument("--n", type=int, required=True, help="family size (at least 6 weeks)")
    p.add_argument("--figure", help="also render the three windows to this PNG path")
    p.set_defaults(func=_cmd_analyze_locality)

    p = sub.add_parser("synthesize", help="emit a legal synthetic schedule")
    p.add_argument("--weeks", type=int, required=True)
    p.add_argument("--profile", choices=["busy", "minimal"], default="busy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("bench", help="time the core checks on growing inputs")
    p.add_argument("--sizes", required=True, help="comma-separated event counts")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("report", help="write report.json, violations.csv and figures")
    add_input(p)
    p.add_argument("--boundary", choices=["open", "closed"], default="open")
    p.add_argument("--rules", help="comma-separated rule subset (default: all)")
    p.add_argument("--out", default="tachocheck-report", help="output directory")
    p.set_defaults(func=_cmd_report)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (TimelineError, EmptyTimeline, MalformedInput, DomainError,
            json.JSONDecodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
