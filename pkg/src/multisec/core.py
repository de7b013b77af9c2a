"""Main computations on a multi-section setup: hypothesis checks, the
distinguished index set U, class groups of the two section rings, canonical
module classes with graded shifts, and height classes of the coordinate
primes.

Ring "T" is the N_0^s-graded multi-section ring, ring "R" its Z^s-graded
companion.  All positivity questions are reduced to exact-rational linear
feasibility over the class lattice; strictness ("ample") is encoded as
slack >= 1, which is equivalent by homogeneity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cones import FeasibilityQuery, feasible
from .geometry import VarietyPresentation
from .lattice import (
    IntMatrix,
    extended_gcd,
    push_to_quotient,
    quotient,
    snf,
    solve_membership,
    QuotientPresentation,
)

RING_T = "T"
RING_R = "R"
RINGS = (RING_T, RING_R)

HEIGHT_ONE = "exactly-1"
HEIGHT_TWO_PLUS = "at-least-2"


class HypothesisFailed(RuntimeError):
    """The positivity hypothesis for the requested ring does not hold."""


@dataclass(frozen=True)
class MultiSectionSetup:
    """A variety together with the ordered divisor classes D_1, ..., D_s."""

    variety: VarietyPresentation
    divisors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        divisors = tuple(tuple(int(x) for x in d) for d in self.divisors)
        object.__setattr__(self, "divisors", divisors)
        if not divisors:
            raise ValueError("at least one divisor is required")
        for d in divisors:
            if len(d) != self.variety.class_rank:
                raise ValueError(
                    f"divisor {d} has length {len(d)}, expected "
                    f"{self.variety.class_rank}"
                )

    @property
    def s(self) -> int:
        return len(self.divisors)

    def divisor_sum(self, indices=None) -> tuple[int, ...]:
        r = self.variety.class_rank
        total = [0] * r
        for i, d in enumerate(self.divisors, start=1):
            if indices is None or i in indices:
                for k in range(r):
                    total[k] += d[k]
        return tuple(total)


@dataclass(frozen=True)
class GradedModuleClass:
    """Class of the reflexive module attached to a divisor class, as an
    element of the chosen ring's class group."""

    ring: str
    class_vector: tuple[int, ...]
    quotient_coords: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.quotient_coords)


@dataclass(frozen=True)
class CanonicalReport:
    """Class and freeness data of the graded canonical module."""

    ring: str
    omega_class: tuple[int, ...]
    free: bool
    shift: tuple[int, ...] | None
    shift_solution_lattice: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HeightReport:
    """Height class of the coordinate prime Q_j for each index j."""

    heights: tuple[str, ...]

    def for_index(self, j: int) -> str:
        return self.heights[j - 1]


def _require_ring(ring: str):
    if ring not in RINGS:
        raise ValueError(f"unknown ring marker {ring!r}")


def _ample_query(setup: MultiSectionSetup, positive: bool) -> FeasibilityQuery:
    """Feasibility of lambda with sum(lambda_i D_i) strictly ample;
    `positive` additionally demands lambda_i >= 1."""
    s = setup.s
    ineqs = []
    if positive:
        for i in range(s):
            row = [0] * s
            row[i] = 1
            ineqs.append((tuple(row), 1))
    for facet in setup.variety.amp_cone.facets():
        row = tuple(sum(f * dk for f, dk in zip(facet, d)) for d in setup.divisors)
        ineqs.append((row, 1))
    return FeasibilityQuery(s, (), tuple(ineqs))


@lru_cache(maxsize=None)
def check_hypothesis_T(setup: MultiSectionSetup) -> bool:
    """Some positive integer combination of the divisors is ample."""
    return feasible(_ample_query(setup, positive=True)) is not None


@lru_cache(maxsize=None)
def check_hypothesis_R(setup: MultiSectionSetup) -> bool:
    """Some integer combination of the divisors is ample."""
    return feasible(_ample_query(setup, positive=False)) is not None


def check_hypothesis(setup: MultiSectionSetup, ring: str) -> bool:
    _require_ring(ring)
    return check_hypothesis_T(setup) if ring == RING_T else check_hypothesis_R(setup)


def _require_hypothesis(setup: MultiSectionSetup, ring: str):
    if not check_hypothesis(setup, ring):
        raise HypothesisFailed(
            f"no integer combination of the divisors is ample for ring {ring}"
            if ring == RING_R
            else "no positive integer combination of the divisors is ample"
        )


def _reaches_ample_plus_effective(setup: MultiSectionSetup, skip: int) -> bool:
    """Can a non-negative combination of the divisors other than D_skip be
    written as (strictly ample) + (effective)?"""
    r = setup.variety.class_rank
    others = [d for i, d in enumerate(setup.divisors, start=1) if i != skip]
    m = len(others)
    nvars = m + 2 * r  # lambda block, ample part, effective part
    eqs = []
    for k in range(r):
        row = [0] * nvars
        for i, d in enumerate(others):
            row[i] = d[k]
        row[m + k] = -1
        row[m + r + k] = -1
        eqs.append((tuple(row), 0))
    ineqs = []
    for i in range(m):
        row = [0] * nvars
        row[i] = 1
        ineqs.append((tuple(row), 0))
    for facet in setup.variety.amp_cone.facets():
        row = [0] * nvars
        for k in range(r):
            row[m + k] = facet[k]
        ineqs.append((tuple(row), 1))
    for facet in setup.variety.eff_cone.facets():
        row = [0] * nvars
        for k in range(r):
            row[m + r + k] = facet[k]
        ineqs.append((tuple(row), 0))
    return feasible(FeasibilityQuery(nvars, tuple(eqs), tuple(ineqs))) is not None


@lru_cache(maxsize=None)
def compute_U(setup: MultiSectionSetup) -> frozenset[int]:
    """Indices j whose removal keeps the section ring of full size.

    j belongs to U exactly when the remaining divisors admit a non-negative
    combination equal to an ample class plus an effective class; for s = 1
    the empty combination never reaches the ample interior, so U is empty.
    """
    if not check_hypothesis_T(setup):
        raise HypothesisFailed(
            "no positive integer combination of the divisors is ample"
        )
    return frozenset(
        j for j in range(1, setup.s + 1) if _reaches_ample_plus_effective(setup, j)
    )


def _quotiented_columns(setup: MultiSectionSetup, ring: str) -> list[int]:
    """1-based divisor indices generating the quotiented sublattice."""
    if ring == RING_R:
        return list(range(1, setup.s + 1))
    u = compute_U(setup)
    return [j for j in range(1, setup.s + 1) if j not in u]


@lru_cache(maxsize=None)
def class_group(setup: MultiSectionSetup, ring: str) -> QuotientPresentation:
    """Class group of the chosen section ring as a quotient of Cl(X)."""
    _require_ring(ring)
    _require_hypothesis(setup, ring)
    cols = [setup.divisors[j - 1] for j in _quotiented_columns(setup, ring)]
    lattice = IntMatrix.from_columns(cols, rows=setup.variety.class_rank)
    return quotient(lattice)


def push_class(setup: MultiSectionSetup, ring: str, divisor_class) -> GradedModuleClass:
    """Image of a divisor class in the chosen ring's class group."""
    coords = tuple(int(x) for x in divisor_class)
    presentation = class_group(setup, ring)
    return GradedModuleClass(
        ring=ring,
        class_vector=coords,
        quotient_coords=push_to_quotient(coords, presentation),
    )


def _kernel_basis(columns: list[tuple[int, ...]], rows: int) -> list[tuple[int, ...]]:
    """Basis of the integer kernel of the map c -> sum(c_j * columns[j])."""
    matrix = IntMatrix.from_columns(columns, rows=rows)
    dec = snf(matrix)
    basis = []
    for i in range(matrix.cols):
        if i >= len(dec.diag) or dec.diag[i] == 0:
            vec = dec.right.column(i)
            lead = next((x for x in vec if x), 0)
            basis.append(tuple(-x for x in vec) if lead < 0 else vec)
    return basis


def _lex_abs_min(particular: list[int], basis: list[list[int]]) -> tuple[int, ...]:
    """Canonical representative of an affine lattice: minimize the tuple
    (|v_1|, v_1, |v_2|, v_2, ...) lexicographically."""
    v = list(particular)
    work = [list(b) for b in basis]
    for pos in range(len(v)):
        carrier = None
        for b in work:
            if b[pos] == 0:
                continue
            if carrier is None:
                carrier = b
                continue
            g, x, y = extended_gcd(carrier[pos], b[pos])
            ca, cb = carrier[pos] // g, b[pos] // g
            merged = [x * p + y * q for p, q in zip(carrier, b)]
            cleared = [-cb * p + ca * q for p, q in zip(carrier, b)]
            carrier[:] = merged
            b[:] = cleared
        if carrier is None:
            continue
        if carrier[pos] < 0:
            carrier[:] = [-x for x in carrier]
        g = carrier[pos]
        residue = v[pos] % g
        best = min(residue, residue - g, key=lambda x: (abs(x), x))
        steps = (v[pos] - best) // g
        if steps:
            v = [a - steps * b for a, b in zip(v, carrier)]
        work = [b for b in work if b is not carrier]
    return tuple(v)


def _solve_shift(
    setup: MultiSectionSetup, ring: str, u: frozenset[int]
) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]] | None:
    """Graded shift v with omega isomorphic to ring(v), plus a basis of the
    homogeneous solution lattice.

    Ring R solves sum(v_i D_i) = K_X outright.  Ring T pins v_i = -1 on U and
    solves sum over the complement of v_j D_j = K_X + sum over U of D_i.
    """
    r = setup.variety.class_rank
    k_x = setup.variety.canonical_class
    if ring == RING_R:
        free_idx = list(range(1, setup.s + 1))
        target = k_x
    else:
        free_idx = [j for j in range(1, setup.s + 1) if j not in u]
        shift_by_u = setup.divisor_sum(u)
        target = tuple(k + d for k, d in zip(k_x, shift_by_u))
    columns = [setup.divisors[j - 1] for j in free_idx]
    witness = solve_membership(target, IntMatrix.from_columns(columns, rows=r))
    if witness is None:
        return None
    particular = [-1] * setup.s
    for value, j in zip(witness, free_idx):
        particular[j - 1] = value
    embedded = []
    for vec in _kernel_basis(columns, r):
        full = [0] * setup.s
        for value, j in zip(vec, free_idx):
            full[j - 1] = value
        embedded.append(full)
    shift = _lex_abs_min(particular, embedded)
    return shift, tuple(sorted(tuple(b) for b in embedded))


def canonical_report(setup: MultiSectionSetup, ring: str) -> CanonicalReport:
    """Class of the graded canonical module, its freeness, and when free the
    graded shift making omega a shifted copy of the ring."""
    _require_ring(ring)
    _require_hypothesis(setup, ring)
    k_x = setup.variety.canonical_class
    if ring == RING_T:
        u = compute_U(setup)
        omega_vector = tuple(k + d for k, d in zip(k_x, setup.divisor_sum()))
    else:
        u = frozenset()
        omega_vector = k_x
    image = push_class(setup, ring, omega_vector)
    free = image.is_zero
    shift = None
    lattice_basis: tuple[tuple[int, ...], ...] = ()
    if free:
        solved = _solve_shift(setup, ring, u)
        assert solved is not None, "free canonical module must admit a shift"
        shift, lattice_basis = solved
    return CanonicalReport(
        ring=ring,
        omega_class=image.quotient_coords,
        free=free,
        shift=shift,
        shift_solution_lattice=lattice_basis,
    )


def height_report(setup: MultiSectionSetup) -> HeightReport:
    """Q_j has height exactly 1 for j in U and at least 2 otherwise."""
    u = compute_U(setup)
    return HeightReport(
        heights=tuple(
            HEIGHT_ONE if j in u else HEIGHT_TWO_PLUS for j in range(1, setup.s + 1)
        )
    )
