"""Exact rational polyhedral cones in Q^r and the Fourier-Motzkin feasibility
core behind the positivity tests.

Cones are stored by generating rays and carry a lazily computed facet
description; everything is kept in exact integer/rational arithmetic since a
single wrong sign flips a membership verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .lattice import rank

GE = ">="
EQ = "=="

# constraint: (kind, coeffs, rhs) meaning coeffs . x  kind  rhs,
# coefficients and rhs normalized to coprime integers
Constraint = tuple[str, tuple[int, ...], int]


class ConeNotFullDimensional(ValueError):
    """Interior queries need a full-dimensional cone."""


def _primitive(vector) -> tuple[int, ...]:
    """Scale a rational vector to a coprime integer vector, preserving sign."""
    fracs = [Fraction(x) for x in vector]
    mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * mult) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _normalize_constraint(kind: str, coeffs, rhs) -> Constraint:
    fracs = [Fraction(x) for x in coeffs] + [Fraction(rhs)]
    mult = lcm(*(f.denominator for f in fracs))
    ints = [int(f * mult) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    if kind == EQ:
        lead = next((x for x in ints if x), 0)
        if lead < 0:
            ints = [-x for x in ints]
    return kind, tuple(ints[:-1]), ints[-1]


def _is_ground(con: Constraint) -> bool:
    return not any(con[1])


def _ground_holds(con: Constraint) -> bool:
    kind, _, rhs = con
    return rhs == 0 if kind == EQ else rhs <= 0


def _sift(constraints) -> tuple[list[Constraint], bool]:
    """Split off variable-free constraints; False when one of them fails."""
    live: dict[tuple[str, tuple[int, ...]], int] = {}
    consistent = True
    for con in constraints:
        if _is_ground(con):
            consistent = consistent and _ground_holds(con)
            continue
        kind, coeffs, rhs = con
        key = (kind, coeffs)
        if key in live:
            old = live[key]
            if kind == GE:
                live[key] = max(old, rhs)
            elif old != rhs:
                consistent = False
        else:
            live[key] = rhs
    return [(k, c, r) for (k, c), r in live.items()], consistent


def _eliminate(constraints: list[Constraint], idx: int) -> list[Constraint]:
    """One Fourier-Motzkin step removing variable `idx`.

    An equality with a nonzero coefficient on the variable is used as a
    substitution pivot when available; otherwise positive and negative
    inequality rows are combined pairwise.
    """
    pivot = next(
        (con for con in constraints if con[0] == EQ and con[1][idx]), None
    )
    out: list[Constraint] = []
    if pivot is not None:
        _, pc, pr = pivot
        a = pc[idx]
        for con in constraints:
            if con is pivot:
                continue
            kind, cc, cr = con
            b = cc[idx]
            if not b:
                out.append(con)
                continue
            coeffs = [Fraction(x) - Fraction(b, a) * y for x, y in zip(cc, pc)]
            rhs = Fraction(cr) - Fraction(b, a) * pr
            out.append(_normalize_constraint(kind, coeffs, rhs))
        return out
    pos, neg = [], []
    for con in constraints:
        coef = con[1][idx]
        if coef > 0:
            pos.append(con)
        elif coef < 0:
            neg.append(con)
        else:
            out.append(con)
    for _, pc, pr in pos:
        a = pc[idx]
        for _, nc, nr in neg:
            b = nc[idx]
            coeffs = [-b * x + a * y for x, y in zip(pc, nc)]
            rhs = -b * pr + a * nr
            out.append(_normalize_constraint(GE, coeffs, rhs))
    return out


@dataclass(frozen=True)
class FeasibilityQuery:
    """Exact-rational linear feasibility problem: coeffs . x >= rhs rows plus
    equality rows, all coefficients Fraction-valued."""

    num_vars: int
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    def __post_init__(self):
        eqs = tuple(
            (tuple(Fraction(x) for x in coeffs), Fraction(rhs))
            for coeffs, rhs in self.equalities
        )
        ineqs = tuple(
            (tuple(Fraction(x) for x in coeffs), Fraction(rhs))
            for coeffs, rhs in self.inequalities
        )
        for coeffs, _ in eqs + ineqs:
            if len(coeffs) != self.num_vars:
                raise ValueError(
                    f"constraint of arity {len(coeffs)} in a "
                    f"{self.num_vars}-variable query"
                )
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "inequalities", ineqs)

    def holds(self, point) -> bool:
        """Exact check of a candidate point against every constraint."""
        point = [Fraction(x) for x in point]
        if len(point) != self.num_vars:
            return False
        for coeffs, rhs in self.equalities:
            if sum(c * x for c, x in zip(coeffs, point)) != rhs:
                return False
        for coeffs, rhs in self.inequalities:
            if sum(c * x for c, x in zip(coeffs, point)) < rhs:
                return False
        return True


def feasible(query: FeasibilityQuery) -> tuple[Fraction, ...] | None:
    """A rational witness satisfying the query, or None when infeasible.

    Variables are eliminated back to front; the snapshots taken along the way
    drive the back-substitution that produces the witness.
    """
    system = [
        _normalize_constraint(EQ, coeffs, rhs) for coeffs, rhs in query.equalities
    ] + [
        _normalize_constraint(GE, coeffs, rhs) for coeffs, rhs in query.inequalities
    ]
    system, ok = _sift(system)
    if not ok:
        return None
    snapshots = []
    for idx in range(query.num_vars - 1, -1, -1):
        snapshots.append(system)
        system, ok = _sift(_eliminate(system, idx))
        if not ok:
            return None

    values: list[Fraction] = []
    for idx in range(query.num_vars):
        level = snapshots[query.num_vars - 1 - idx]
        pinned = None
        low = high = None
        for kind, coeffs, rhs in level:
            a = coeffs[idx]
            if not a:
                continue
            bound = Fraction(
                rhs - sum(c * v for c, v in zip(coeffs[:idx], values)), a
            )
            if kind == EQ:
                pinned = bound
            elif a > 0:
                low = bound if low is None else max(low, bound)
            else:
                high = bound if high is None else min(high, bound)
        if pinned is not None:
            values.append(pinned)
        elif low is not None:
            values.append(low)
        elif high is not None:
            values.append(high)
        else:
            values.append(Fraction(0))
    witness = tuple(values)
    assert query.holds(witness)
    return witness


class Cone:
    """Rational polyhedral cone spanned by finitely many rays.

    Generators are normalized to primitive integer vectors on construction;
    the facet description is computed on first use and cached.  Instances are
    immutable and safe to share.
    """

    def __init__(self, generators=(), ambient_dim: int | None = None):
        gens = []
        for g in generators:
            vec = _primitive(g)
            if ambient_dim is None:
                ambient_dim = len(vec)
            elif len(vec) != ambient_dim:
                raise ValueError("generators of mixed dimension")
            if any(vec) and vec not in gens:
                gens.append(vec)
        if ambient_dim is None:
            raise ValueError("ambient dimension required for an empty cone")
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        self._dim = ambient_dim
        self._generators = tuple(gens)
        self._facets: tuple[tuple[int, ...], ...] | None = None

    @property
    def ambient_dim(self) -> int:
        return self._dim

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        return self._generators

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self._dim == other._dim
            and sorted(self._generators) == sorted(other._generators)
        )

    def __hash__(self):
        return hash((self._dim, tuple(sorted(self._generators))))

    def __repr__(self):
        return f"Cone(dim={self._dim}, generators={list(self._generators)})"

    def facets(self) -> tuple[tuple[int, ...], ...]:
        """Primitive facet normals, sorted lexicographically.

        The cone is exactly {v : F . v >= 0 for every facet normal F}; a
        lower-dimensional cone is cut out by +/- pairs of normals.
        """
        if self._facets is None:
            self._facets = self._compute_facets()
        return self._facets

    def _compute_facets(self) -> tuple[tuple[int, ...], ...]:
        m = len(self._generators)
        r = self._dim
        nvars = m + r
        system: list[Constraint] = []
        for k in range(r):
            coeffs = [g[k] for g in self._generators] + [
                -1 if i == k else 0 for i in range(r)
            ]
            system.append(_normalize_constraint(EQ, coeffs, 0))
        for i in range(m):
            coeffs = [0] * nvars
            coeffs[i] = 1
            system.append((GE, tuple(coeffs), 0))
        system, _ = _sift(system)
        for idx in range(m - 1, -1, -1):
            system, _ = _sift(_eliminate(system, idx))

        equalities: set[tuple[int, ...]] = set()
        candidates: set[tuple[int, ...]] = set()
        for kind, coeffs, _ in system:
            normal = _primitive(coeffs[m:])
            if not any(normal):
                continue
            if kind == EQ:
                equalities.add(normal)
            else:
                candidates.add(normal)

        # slack pattern of each candidate against the generators; a candidate
        # annihilating every generator is implied by the equality pairs
        slacks = {
            f: tuple(sum(a * b for a, b in zip(f, g)) for g in self._generators)
            for f in candidates
        }
        strict = [f for f in candidates if any(slacks[f])]
        zero_sets = {
            f: frozenset(i for i, s in enumerate(slacks[f]) if s == 0) for f in strict
        }
        kept = []
        for f in strict:
            redundant = False
            for g in strict:
                if g is f or g == f:
                    continue
                if zero_sets[g] > zero_sets[f] or (
                    zero_sets[g] == zero_sets[f] and g < f
                ):
                    redundant = True
                    break
            if not redundant:
                kept.append(f)
        normals = set(kept)
        for e in equalities:
            normals.add(e)
            normals.add(tuple(-x for x in e))
        return tuple(sorted(normals))

    def contains(self, vector) -> bool:
        """Membership, decided by the signs of all facet slacks."""
        vector = tuple(Fraction(x) for x in vector)
        if len(vector) != self._dim:
            raise ValueError(
                f"vector of length {len(vector)} in a {self._dim}-dimensional cone"
            )
        return all(
            sum(a * b for a, b in zip(f, vector)) >= 0 for f in self.facets()
        )

    def is_full_dimensional(self) -> bool:
        facets = set(self.facets())
        return not any(tuple(-x for x in f) in facets for f in facets)

    def contains_interior(self, vector) -> bool:
        """Strict membership: every facet slack positive.

        Only meaningful for full-dimensional cones, where the topological
        interior is cut out by strict facet inequalities.
        """
        vector = tuple(Fraction(x) for x in vector)
        if len(vector) != self._dim:
            raise ValueError(
                f"vector of length {len(vector)} in a {self._dim}-dimensional cone"
            )
        if not self.is_full_dimensional():
            raise ConeNotFullDimensional(
                "interior test on a cone whose facet description contains an "
                "equality pair"
            )
        return all(
            sum(a * b for a, b in zip(f, vector)) > 0 for f in self.facets()
        )

    def is_pointed(self) -> bool:
        """True when the cone contains no line, i.e. the facet normals span Q^r."""
        return rank(self.facets()) == self._dim
