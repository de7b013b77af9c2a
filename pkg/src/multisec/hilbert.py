"""Multigraded Hilbert tables for the section rings and their canonical
modules, the graded free-shift verifier, and self-contained brute-force
counting oracles used to cross-check the geometry oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import RING_T, MultiSectionSetup, CanonicalReport, compute_U
from .geometry import h0

MARKER_T = "T"
MARKER_R = "R"
MARKER_OMEGA_T = "omegaT"
MARKER_OMEGA_R = "omegaR"
MARKERS = (MARKER_T, MARKER_R, MARKER_OMEGA_T, MARKER_OMEGA_R)

_ENUMERATION_BOUND = 2_000_000


class ReportNotFree(RuntimeError):
    """Free-shift verification requires a free canonical module."""


@dataclass(frozen=True)
class DegreeWindow:
    """A coordinate box of multidegrees together with the U-set that shapes
    the admissible region of each table."""

    u_set: frozenset[int]
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u_set", frozenset(self.u_set))
        object.__setattr__(self, "lo", tuple(int(x) for x in self.lo))
        object.__setattr__(self, "hi", tuple(int(x) for x in self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have the same length")

    @property
    def arity(self) -> int:
        return len(self.lo)

    def degrees(self):
        """All lattice points of the box in lexicographic order."""
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lo, self.hi)]
        return itertools.product(*ranges)


def admissible(marker: str, u_set: frozenset[int], degree) -> bool:
    """Does `degree` belong to the support region of the marker?

    T lives on N_0^s, R and omega_R on all of Z^s, and omega_T on the shifted
    region needing n_i >= 1 for every i in U.
    """
    if marker == MARKER_T:
        return all(n >= 0 for n in degree)
    if marker == MARKER_OMEGA_T:
        return all(n >= 1 for i, n in enumerate(degree, start=1) if i in u_set)
    if marker in (MARKER_R, MARKER_OMEGA_R):
        return True
    raise ValueError(f"unknown table marker {marker!r}")


def default_window(setup: MultiSectionSetup, marker: str) -> DegreeWindow:
    """Default box: [0, 8] per coordinate for T, [-4, 8] for R-like
    coordinates, [1, 8] on U-coordinates of omega_T."""
    s = setup.s
    if marker == MARKER_T:
        lo = [0] * s
        u_set = frozenset()
    elif marker == MARKER_OMEGA_T:
        u_set = compute_U(setup)
        lo = [1 if i in u_set else -4 for i in range(1, s + 1)]
    else:
        lo = [-4] * s
        u_set = frozenset()
    return DegreeWindow(u_set=u_set, lo=tuple(lo), hi=(8,) * s)


@dataclass(frozen=True)
class HilbertTable:
    """Section dimensions over a degree box, sorted by degree."""

    marker: str
    arity: int
    entries: tuple[tuple[tuple[int, ...], int], ...]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.entries)

    def to_csv(self) -> str:
        header = ",".join(f"n_{i}" for i in range(1, self.arity + 1)) + ",dim"
        lines = [header]
        for degree, value in self.entries:
            lines.append(",".join(str(n) for n in degree) + f",{value}")
        return "\n".join(lines) + "\n"


def _graded_class(setup: MultiSectionSetup, marker: str, degree) -> tuple[int, ...]:
    r = setup.variety.class_rank
    total = [0] * r
    for n, d in zip(degree, setup.divisors):
        for k in range(r):
            total[k] += n * d[k]
    if marker in (MARKER_OMEGA_T, MARKER_OMEGA_R):
        for k in range(r):
            total[k] += setup.variety.canonical_class[k]
    return tuple(total)


def hilbert(setup: MultiSectionSetup, marker: str, window: DegreeWindow) -> HilbertTable:
    """Tabulate graded dimensions of T, R, omega_T or omega_R over the box."""
    if marker not in MARKERS:
        raise ValueError(f"unknown table marker {marker!r}")
    if window.arity != setup.s:
        raise ValueError(
            f"window arity {window.arity} does not match s = {setup.s}"
        )
    entries = []
    for degree in window.degrees():
        if not admissible(marker, window.u_set, degree):
            continue
        value = h0(setup.variety, _graded_class(setup, marker, degree))
        entries.append((degree, value))
    return HilbertTable(marker=marker, arity=setup.s, entries=tuple(entries))


@dataclass(frozen=True)
class ShiftVerdict:
    """Outcome of a graded free-shift verification scan."""

    passed: bool
    witness: tuple[int, ...] | None
    cells: int


def verify_free_shift(
    setup: MultiSectionSetup, report: CanonicalReport, window: DegreeWindow
) -> ShiftVerdict:
    """Check dim omega_n == dim ring_{n+v} over the box, zero-extended by the
    support regions of both sides; returns the first failing degree if any.

    This is a necessary (Hilbert-function level) condition for the graded
    isomorphism omega = ring(v), not a module isomorphism check.
    """
    if not report.free:
        raise ReportNotFree("free-shift verification needs report.free = True")
    if window.arity != setup.s:
        raise ValueError(
            f"window arity {window.arity} does not match s = {setup.s}"
        )
    shift = report.shift
    omega_marker = MARKER_OMEGA_T if report.ring == RING_T else MARKER_OMEGA_R
    ring_marker = MARKER_T if report.ring == RING_T else MARKER_R
    cells = 0
    for degree in window.degrees():
        cells += 1
        lhs = 0
        if admissible(omega_marker, window.u_set, degree):
            lhs = h0(setup.variety, _graded_class(setup, omega_marker, degree))
        shifted = tuple(n + v for n, v in zip(degree, shift))
        rhs = 0
        if admissible(ring_marker, window.u_set, shifted):
            rhs = h0(setup.variety, _graded_class(setup, ring_marker, shifted))
        if lhs != rhs:
            return ShiftVerdict(passed=False, witness=degree, cells=cells)
    return ShiftVerdict(passed=True, witness=None, cells=cells)


def bruteforce_product_dim(m: int, n: int, p: int, q: int) -> int:
    """Monomial count of bidegree (p, q) in m+1 plus n+1 variables, by
    explicit stars-and-bars enumeration."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if p < 0 or q < 0:
        raise ValueError("bidegree must be non-negative")
    if comb(p + m, m) * comb(q + n, n) > _ENUMERATION_BOUND:
        raise ValueError("enumeration bound exceeded")
    count_x = sum(1 for _ in itertools.combinations(range(p + m), m))
    count_y = sum(1 for _ in itertools.combinations(range(q + n), n))
    return count_x * count_y


def bruteforce_vanishing_dim(degree: int, order: int) -> int:
    """Dimension of degree-`degree` ternary forms vanishing to order >=
    `order` at [1:1:1], from the full matrix of derivative conditions of all
    orders below `order`, reduced over the rationals.

    Kept independent of the geometry oracle on purpose: it enumerates every
    condition row and runs its own Gaussian elimination.
    """
    if degree < 0 or order < 0:
        raise ValueError("degree and order must be non-negative")
    monomials = [
        (i, j, degree - i - j)
        for i in range(degree + 1)
        for j in range(degree + 1 - i)
    ]
    conditions = [
        (a1, a2, a3)
        for a1 in range(order)
        for a2 in range(order - a1)
        for a3 in range(order - a1 - a2)
    ]
    if len(monomials) * len(conditions) > _ENUMERATION_BOUND:
        raise ValueError("enumeration bound exceeded")

    def falling(x, t):
        out = 1
        for step in range(t):
            out *= x - step
        return out

    rows = [
        [
            Fraction(falling(i, a1) * falling(j, a2) * falling(k, a3))
            for (i, j, k) in monomials
        ]
        for (a1, a2, a3) in conditions
    ]
    rank = 0
    ncols = len(monomials)
    for col in range(ncols):
        pivot_row = next(
            (i for i in range(rank, len(rows)) if rows[i][col]), None
        )
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col] / pivot
            if factor:
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return len(monomials) - rank
