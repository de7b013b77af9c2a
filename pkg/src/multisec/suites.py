"""Builtin verification suites: each reproduces the assertions of one worked
example family and reports expected vs computed values."""

from __future__ import annotations

from dataclasses import dataclass

from .cards import BUILTIN_CARDS, card_to_setup
from .core import (
    HEIGHT_ONE,
    HEIGHT_TWO_PLUS,
    RING_R,
    RING_T,
    CanonicalReport,
    MultiSectionSetup,
    canonical_report,
    check_hypothesis_T,
    class_group,
    compute_U,
    height_report,
)
from .geometry import build_product, build_projective
from .hilbert import DegreeWindow, verify_free_shift
from .lattice import IntMatrix, solve_membership


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name: str, expected, computed) -> CheckResult:
    return CheckResult(
        name=name,
        passed=expected == computed,
        detail=f"expected {expected}, computed {computed}",
    )


def _grid_check(name: str, total: int, failures: list[str]) -> CheckResult:
    if failures:
        shown = "; ".join(failures[:3])
        return CheckResult(
            name=name,
            passed=False,
            detail=f"{len(failures)}/{total} cases failed: {shown}",
        )
    return CheckResult(name=name, passed=True, detail=f"all {total} cases agree")


def ample_product_grid():
    """All (m, n, a, b, c, d) with m, n in 1..3, a..d in 1..4, ad != bc."""
    for m in range(1, 4):
        for n in range(1, 4):
            for a in range(1, 5):
                for b in range(1, 5):
                    for c in range(1, 5):
                        for d in range(1, 5):
                            if a * d != b * c:
                                yield m, n, a, b, c, d


def product_setup(m, n, a, b, c, d) -> MultiSectionSetup:
    return MultiSectionSetup(
        variety=build_product(m, n), divisors=((a, b), (c, d))
    )


def suite_veronese() -> list[CheckResult]:
    """P^n with D = d*H for n, d in 1..6: Cl(T) = Z/d, freeness iff d | n+1,
    shift -(n+1)/d when free."""
    cases = 0
    group_failures: list[str] = []
    free_failures: list[str] = []
    shift_failures: list[str] = []
    u_failures: list[str] = []
    for n in range(1, 7):
        for d in range(1, 7):
            cases += 1
            setup = MultiSectionSetup(
                variety=build_projective(n), divisors=((d,),)
            )
            tag = f"(n={n}, d={d})"
            if compute_U(setup) != frozenset():
                u_failures.append(tag)
            group = class_group(setup, RING_T)
            expected_factors = () if d == 1 else (d,)
            if (group.free_rank, group.invariant_factors) != (0, expected_factors):
                group_failures.append(
                    f"{tag}: got rank {group.free_rank}, "
                    f"factors {group.invariant_factors}"
                )
            report = canonical_report(setup, RING_T)
            should_be_free = (n + 1) % d == 0
            if report.free != should_be_free:
                free_failures.append(f"{tag}: free={report.free}")
            if should_be_free and report.shift != (-(n + 1) // d,):
                shift_failures.append(f"{tag}: shift={report.shift}")
    return [
        _grid_check("U empty for a single ample divisor", cases, u_failures),
        _grid_check("Cl(T) is Z/d", cases, group_failures),
        _grid_check("omega_T free iff d divides n+1", cases, free_failures),
        _grid_check("shift is -(n+1)/d when free", cases, shift_failures),
    ]


def suite_fano_product() -> list[CheckResult]:
    """Two ample divisors on P^m x P^n: U = {1, 2}, Cl(T) = Cl(X) = Z^2, and
    freeness exactly when D_1 + D_2 is the anticanonical class."""
    total = 0
    u_failures: list[str] = []
    group_failures: list[str] = []
    free_failures: list[str] = []
    for m, n, a, b, c, d in ample_product_grid():
        total += 1
        setup = product_setup(m, n, a, b, c, d)
        tag = f"(m={m},n={n},D1=({a},{b}),D2=({c},{d}))"
        if compute_U(setup) != frozenset({1, 2}):
            u_failures.append(tag)
        group = class_group(setup, RING_T)
        if (group.free_rank, group.invariant_factors) != (2, ()):
            group_failures.append(tag)
        report = canonical_report(setup, RING_T)
        fano = (a + c, b + d) == (m + 1, n + 1)
        if report.free != fano:
            free_failures.append(f"{tag}: free={report.free}, fano={fano}")
    return [
        _grid_check("U = {1, 2} on the ample grid", total, u_failures),
        _grid_check("Cl(T) = Z^2 (Cl(X) survives)", total, group_failures),
        _grid_check(
            "omega_T free iff D_1 + D_2 is anticanonical", total, free_failures
        ),
    ]


def suite_gorenstein_grid() -> list[CheckResult]:
    """The closed-form Gorenstein criteria on P^m x P^n: the T-ring verdict is
    m+1 = a+c and n+1 = b+d; the R-ring verdict is lattice membership of the
    anticanonical class."""
    total = 0
    t_failures: list[str] = []
    r_failures: list[str] = []
    for m, n, a, b, c, d in ample_product_grid():
        total += 1
        setup = product_setup(m, n, a, b, c, d)
        tag = f"(m={m},n={n},D1=({a},{b}),D2=({c},{d}))"
        verdict_t = canonical_report(setup, RING_T).free
        closed_form_t = (m + 1 == a + c) and (n + 1 == b + d)
        if verdict_t != closed_form_t:
            t_failures.append(f"{tag}: T verdict {verdict_t} vs {closed_form_t}")
        verdict_r = canonical_report(setup, RING_R).free
        membership = solve_membership(
            (m + 1, n + 1), IntMatrix.from_columns([(a, b), (c, d)])
        )
        if verdict_r != (membership is not None):
            r_failures.append(f"{tag}: R verdict {verdict_r}")
    return [
        _grid_check(
            "T Gorenstein verdict equals (m+1 = a+c and n+1 = b+d)",
            total,
            t_failures,
        ),
        _grid_check(
            "R Gorenstein verdict equals membership of (m+1, n+1)",
            total,
            r_failures,
        ),
    ]


def suite_blowup() -> list[CheckResult]:
    """The blown-up plane with divisors (-E, A): class groups, canonical
    shifts, prime heights, and the Hilbert-function verification of the
    graded shift over fixed boxes."""
    setup = card_to_setup(BUILTIN_CARDS["blowup-p2-point"])
    results = [
        _check("hypothesis T holds", True, check_hypothesis_T(setup)),
        _check("U = {1}", frozenset({1}), compute_U(setup)),
    ]
    group_t = class_group(setup, RING_T)
    results.append(
        _check(
            "Cl(T) = Z",
            (1, ()),
            (group_t.free_rank, group_t.invariant_factors),
        )
    )
    group_r = class_group(setup, RING_R)
    results.append(_check("Cl(R) trivial", True, group_r.is_trivial))
    report_t = canonical_report(setup, RING_T)
    report_r = canonical_report(setup, RING_R)
    results.append(_check("omega_T free", True, report_t.free))
    results.append(_check("omega_T shift (-1, -3)", (-1, -3), report_t.shift))
    results.append(_check("omega_R free", True, report_r.free))
    results.append(_check("omega_R shift (-1, -3)", (-1, -3), report_r.shift))
    heights = height_report(setup)
    results.append(_check("ht Q_1 = 1", HEIGHT_ONE, heights.for_index(1)))
    results.append(_check("ht Q_2 >= 2", HEIGHT_TWO_PLUS, heights.for_index(2)))

    u = compute_U(setup)
    window_t = DegreeWindow(u_set=u, lo=(1, -2), hi=(6, 8))
    verdict_t = verify_free_shift(setup, report_t, window_t)
    results.append(
        _check(
            "Hilbert check of omega_T = T(-1, -3) over [1,6]x[-2,8]",
            True,
            verdict_t.passed,
        )
    )
    window_r = DegreeWindow(u_set=frozenset(), lo=(-4, -4), hi=(6, 6))
    verdict_r = verify_free_shift(setup, report_r, window_r)
    results.append(
        _check(
            "Hilbert check of omega_R = R(-1, -3) over [-4,6]^2",
            True,
            verdict_r.passed,
        )
    )
    for ring, report, window in (
        (RING_T, report_t, window_t),
        (RING_R, report_r, window_r),
    ):
        for i in range(2):
            for delta in (-1, 1):
                wrong = list(report.shift)
                wrong[i] += delta
                perturbed = CanonicalReport(
                    ring=report.ring,
                    omega_class=report.omega_class,
                    free=True,
                    shift=tuple(wrong),
                    shift_solution_lattice=(),
                )
                verdict = verify_free_shift(setup, perturbed, window)
                results.append(
                    _check(
                        f"perturbed {ring} shift {tuple(wrong)} fails with a witness",
                        True,
                        (not verdict.passed) and verdict.witness is not None,
                    )
                )
    return results


SUITES = {
    "veronese": suite_veronese,
    "fano-product": suite_fano_product,
    "gorenstein-grid": suite_gorenstein_grid,
    "blowup": suite_blowup,
}


def run_suites(names, writer=print) -> bool:
    """Run the named suites, printing one line per assertion; True iff all
    assertions passed."""
    all_passed = True
    for name in names:
        for result in SUITES[name]():
            status = "PASS" if result.passed else "FAIL"
            writer(f"{status} {name}: {result.name} ({result.detail})")
            all_passed = all_passed and result.passed
    return all_passed
