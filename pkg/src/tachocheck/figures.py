"""Figure rendering for reports: activity strips and weekly-rest charts."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .metatheory import NonLocalityReport  # noqa: E402
from .restrictions import REDUCED_WEEKLY_MIN, REGULAR_WEEKLY_MIN  # noqa: E402
from .timeline import DAY, HOUR, EventList  # noqa: E402
from .weekly_regime import CompensationPlan, WeekHours  # noqa: E402

_ACTIVITY_STYLE = {
    "driving": ("tab:red", 3),
    "other_work": ("tab:orange", 2),
    "availability": ("tab:blue", 1),
    "rest": ("tab:green", 0),
}


def timeline_figure(el: EventList, path: str) -> str:
    """Activity strip: one lane per activity, x axis in days from the start."""
    fig, ax = plt.subplots(figsize=(10, 2.4))
    origin = el.start
    for e in el.events:
        color, lane = _ACTIVITY_STYLE[e.activity.value]
        ax.broken_barh([((e.start - origin) / DAY, e.duration / DAY)],
                       (lane - 0.4, 0.8), facecolors=color)
    ax.set_yticks([v[1] for v in _ACTIVITY_STYLE.values()])
    ax.set_yticklabels(list(_ACTIVITY_STYLE))
    ax.set_xlabel("days from timeline start")
    ax.set_title(f"activity timeline: {el.driver_id or 'unnamed driver'}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def weekly_hours_figure(
    hours: list[WeekHours] | tuple[WeekHours, ...],
    path: str,
    plan: CompensationPlan | None = None,
    title: str = "counted weekly rest per calendar week",
) -> str:
    """Bar chart of counted weekly rest with the 24h/45h thresholds marked.

    When a compensation plan is given, its donations are drawn as arrows
    from donor to debtor week.
    """
    weeks = [wh.week for wh in hours]
    values = [wh.rest_seconds / HOUR for wh in hours]
    fig, ax = plt.subplots(figsize=(8, 3.2))
    colors = ["tab:green" if v >= 45 else "tab:orange" if v >= 24 else "tab:red"
              for v in values]
    ax.bar(weeks, values, color=colors)
    ax.axhline(REGULAR_WEEKLY_MIN / HOUR, color="black", lw=0.8, ls="--", label="regular (45h)")
    ax.axhline(REDUCED_WEEKLY_MIN / HOUR, color="black", lw=0.8, ls=":", label="reduced (24h)")
    if plan is not None:
        top = max(values, default=45) + 4
        for d in plan.donations:
            ax.annotate(
                f"{d.seconds / HOUR:g}h",
                xy=(d.debtor_week, top), xytext=(d.donor_week, top + 4),
                arrowprops={"arrowstyle": "->", "color": "tab:purple"},
                ha="center", fontsize=8, color="tab:purple")
        ax.set_ylim(0, top + 10)
    ax.set_xlabel("calendar week index")
    ax.set_ylabel("hours")
    ax.set_xticks(weeks)
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def nonlocality_figure(report: NonLocalityReport, path: str) -> str:
    """The witness family: the full interval and both single-week erasures."""
    windows = [
        ("full interval", report.witness, not report.full_illegal),
        ("without first week", report.witness[1:], report.without_first_legal),
        ("without last week", report.witness[:-1], report.without_last_legal),
    ]
    fig, axes = plt.subplots(3, 1, figsize=(8, 6), sharex=True)
    for ax, (label, hours, legal) in zip(axes, windows):
        weeks = [wh.week for wh in hours]
        values = [wh.rest_seconds / HOUR for wh in hours]
        ax.bar(weeks, values, color="tab:green" if legal else "tab:red")
        ax.axhline(45, color="black", lw=0.8, ls="--")
        ax.axhline(24, color="black", lw=0.8, ls=":")
        ax.set_ylabel("hours")
        ax.set_title(f"{label}: {'legal' if legal else 'illegal'}", fontsize=9)
    axes[-1].set_xlabel("week index")
    fig.suptitle(f"non-locality witness, {report.n} weeks")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
