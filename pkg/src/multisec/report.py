"""Analysis reports: orchestration of the full pipeline on one card and the
deterministic text/JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cards import AnalysisCard, card_to_setup, is_builtin
from .core import (
    RING_R,
    RING_T,
    CanonicalReport,
    HeightReport,
    MultiSectionSetup,
    QuotientPresentation,
    canonical_report,
    check_hypothesis_R,
    check_hypothesis_T,
    class_group,
    compute_U,
    height_report,
)
from .hilbert import (
    MARKER_OMEGA_R,
    MARKER_OMEGA_T,
    default_window,
    verify_free_shift,
)

ZARISKI_NOTE = "Noetherian by a famous result of Zariski (builtin card)"
ASSUMED_NOTE = "Noetherian-ness of T is assumed, not certified"


@dataclass(frozen=True)
class HilbertSummary:
    ring: str
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    passed: bool
    witness: tuple[int, ...] | None
    cells: int


@dataclass(frozen=True)
class AnalysisReport:
    card_name: str
    hypothesis_T: bool
    hypothesis_R: bool
    noetherian_assumed: bool
    noetherian_note: str
    u_set: frozenset[int] | None
    class_group_T: QuotientPresentation | None
    class_group_R: QuotientPresentation | None
    canonical_T: CanonicalReport | None
    canonical_R: CanonicalReport | None
    heights: HeightReport | None
    hilbert_verification: tuple[HilbertSummary, ...] | None


def analyze_card(card: AnalysisCard) -> AnalysisReport:
    """Run the full analysis; on hypothesis failure the dependent sections
    are left empty and only the hypothesis flags are reported."""
    setup = card_to_setup(card)
    hyp_t = check_hypothesis_T(setup)
    hyp_r = check_hypothesis_R(setup)
    builtin = is_builtin(card)
    if not hyp_t:
        return AnalysisReport(
            card_name=card.name,
            hypothesis_T=hyp_t,
            hypothesis_R=hyp_r,
            noetherian_assumed=not builtin,
            noetherian_note=ZARISKI_NOTE if builtin else ASSUMED_NOTE,
            u_set=None,
            class_group_T=None,
            class_group_R=None,
            canonical_T=None,
            canonical_R=None,
            heights=None,
            hilbert_verification=None,
        )
    u = compute_U(setup)
    report_t = canonical_report(setup, RING_T)
    report_r = canonical_report(setup, RING_R)
    summaries = None
    if setup.variety.oracle is not None and (report_t.free or report_r.free):
        summaries = tuple(_hilbert_summaries(setup, report_t, report_r))
    return AnalysisReport(
        card_name=card.name,
        hypothesis_T=hyp_t,
        hypothesis_R=hyp_r,
        noetherian_assumed=not builtin,
        noetherian_note=ZARISKI_NOTE if builtin else ASSUMED_NOTE,
        u_set=u,
        class_group_T=class_group(setup, RING_T),
        class_group_R=class_group(setup, RING_R),
        canonical_T=report_t,
        canonical_R=report_r,
        heights=height_report(setup),
        hilbert_verification=summaries,
    )


def _hilbert_summaries(setup: MultiSectionSetup, report_t, report_r):
    for report, marker in ((report_t, MARKER_OMEGA_T), (report_r, MARKER_OMEGA_R)):
        if not report.free:
            continue
        window = default_window(setup, marker)
        verdict = verify_free_shift(setup, report, window)
        yield HilbertSummary(
            ring=report.ring,
            lo=window.lo,
            hi=window.hi,
            passed=verdict.passed,
            witness=verdict.witness,
            cells=verdict.cells,
        )


def format_group(presentation: QuotientPresentation) -> str:
    parts = []
    if presentation.free_rank == 1:
        parts.append("Z")
    elif presentation.free_rank > 1:
        parts.append(f"Z^{presentation.free_rank}")
    parts.extend(f"Z/{f}" for f in presentation.invariant_factors)
    return " x ".join(parts) if parts else "0"


def _group_dict(presentation: QuotientPresentation | None):
    if presentation is None:
        return None
    return {
        "ambient_rank": presentation.ambient_rank,
        "free_rank": presentation.free_rank,
        "invariant_factors": list(presentation.invariant_factors),
        "projection": [list(row) for row in presentation.projection.entries],
        "pretty": format_group(presentation),
    }


def _canonical_dict(report: CanonicalReport | None):
    if report is None:
        return None
    return {
        "omega_class": list(report.omega_class),
        "free": report.free,
        "shift": None if report.shift is None else list(report.shift),
        "shift_solution_lattice": [list(b) for b in report.shift_solution_lattice],
    }


def report_to_json_dict(report: AnalysisReport) -> dict:
    heights = None
    if report.heights is not None:
        heights = [
            {"index": j, "height": h}
            for j, h in enumerate(report.heights.heights, start=1)
        ]
    hilbert = None
    if report.hilbert_verification is not None:
        hilbert = [
            {
                "ring": s.ring,
                "box_lo": list(s.lo),
                "box_hi": list(s.hi),
                "passed": s.passed,
                "witness": None if s.witness is None else list(s.witness),
                "cells": s.cells,
            }
            for s in report.hilbert_verification
        ]
    return {
        "card": report.card_name,
        "hypothesis_T": report.hypothesis_T,
        "hypothesis_R": report.hypothesis_R,
        "noetherian_assumed": report.noetherian_assumed,
        "noetherian_note": report.noetherian_note,
        "U": None if report.u_set is None else sorted(report.u_set),
        "class_group_T": _group_dict(report.class_group_T),
        "class_group_R": _group_dict(report.class_group_R),
        "canonical_T": _canonical_dict(report.canonical_T),
        "canonical_R": _canonical_dict(report.canonical_R),
        "heights": heights,
        "hilbert_verification": hilbert,
    }


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_json_dict(report), indent=2, sort_keys=True) + "\n"


def _canonical_lines(label: str, report: CanonicalReport | None) -> list[str]:
    if report is None:
        return [f"{label}: not computed"]
    lines = [
        f"{label}: class {list(report.omega_class)}, "
        f"{'free' if report.free else 'not free'}"
    ]
    if report.free:
        lines.append(f"  shift: {list(report.shift)}")
        if report.shift_solution_lattice:
            basis = [list(b) for b in report.shift_solution_lattice]
            lines.append(f"  shift solution lattice: {basis}")
    return lines


def render_text(report: AnalysisReport) -> str:
    lines = [
        f"card: {report.card_name}",
        f"hypothesis T (some positive combination ample): "
        f"{str(report.hypothesis_T).lower()}",
        f"hypothesis R (some integer combination ample): "
        f"{str(report.hypothesis_R).lower()}",
        f"noetherian: {report.noetherian_note}",
    ]
    if report.u_set is None:
        lines.append("analysis skipped: hypothesis for T fails")
        return "\n".join(lines) + "\n"
    members = ", ".join(str(j) for j in sorted(report.u_set))
    lines.append(f"U: {{{members}}}" if members else "U: {}")
    lines.append(f"Cl(T): {format_group(report.class_group_T)}")
    lines.append(f"Cl(R): {format_group(report.class_group_R)}")
    lines.extend(_canonical_lines("omega_T", report.canonical_T))
    lines.extend(_canonical_lines("omega_R", report.canonical_R))
    heights = ", ".join(
        f"Q_{j}: {h}" for j, h in enumerate(report.heights.heights, start=1)
    )
    lines.append(f"heights: {heights}")
    if report.hilbert_verification is not None:
        for s in report.hilbert_verification:
            box = "x".join(f"[{lo},{hi}]" for lo, hi in zip(s.lo, s.hi))
            status = "pass" if s.passed else f"FAIL at {list(s.witness)}"
            lines.append(
                f"hilbert verification ({s.ring}, box {box}): {status} "
                f"({s.cells} degrees)"
            )
    return "\n".join(lines) + "\n"
