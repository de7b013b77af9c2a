"""Input data model for a variety: class lattice, canonical class, effective
and ample cones, plus section-dimension oracles for the builtin examples.

The class group is modeled as a free lattice Z^r; "ample" means the strict
interior of the nef cone stored in `amp_cone`.  Section dimensions h^0 are
supplied by small exact oracles (binomial counts for projective spaces and
their products, a derivative-rank computation for the blown-up plane).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, perm

from .cones import Cone
from .lattice import rank

ORACLE_PROJECTIVE = "projective"
ORACLE_PRODUCT = "product"
ORACLE_BLOWUP_P2_POINT = "blowup_p2_point"

_ORACLE_ARITY = {
    ORACLE_PROJECTIVE: 1,
    ORACLE_PRODUCT: 2,
    ORACLE_BLOWUP_P2_POINT: 0,
}


class NoOracle(RuntimeError):
    """The variety carries no section-dimension oracle."""


@dataclass(frozen=True)
class SectionOracle:
    """Tag selecting one of the builtin h^0 evaluators."""

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in _ORACLE_ARITY:
            raise ValueError(f"unknown oracle kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if len(self.params) != _ORACLE_ARITY[self.kind]:
            raise ValueError(
                f"oracle {self.kind!r} takes {_ORACLE_ARITY[self.kind]} "
                f"parameter(s), got {len(self.params)}"
            )
        if any(p < 1 for p in self.params):
            raise ValueError("oracle parameters must be positive")


@dataclass(frozen=True)
class VarietyPresentation:
    """A normal projective variety as seen by the lattice computations."""

    name: str
    dim_x: int
    class_rank: int
    canonical_class: tuple[int, ...]
    eff_cone: Cone
    amp_cone: Cone
    oracle: SectionOracle | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "canonical_class", tuple(int(x) for x in self.canonical_class)
        )
        if self.dim_x < 1:
            raise ValueError("dim_x must be positive")
        if self.class_rank < 1:
            raise ValueError("class_rank must be positive")
        if len(self.canonical_class) != self.class_rank:
            raise ValueError(
                f"canonical class has length {len(self.canonical_class)}, "
                f"expected {self.class_rank}"
            )
        for label, cone in (("eff_cone", self.eff_cone), ("amp_cone", self.amp_cone)):
            if cone.ambient_dim != self.class_rank:
                raise ValueError(f"{label} lives in dimension {cone.ambient_dim}, "
                                 f"expected {self.class_rank}")
            if not cone.is_full_dimensional():
                raise ValueError(f"{label} is not full-dimensional")
            if not cone.is_pointed():
                raise ValueError(f"{label} is not pointed")
        for g in self.amp_cone.generators:
            if not self.eff_cone.contains(g):
                raise ValueError(
                    f"amp_cone generator {g} lies outside eff_cone"
                )


def build_projective(n: int) -> VarietyPresentation:
    """P^n with the hyperplane class as lattice basis."""
    if n < 1:
        raise ValueError("n must be positive")
    ray = Cone([(1,)])
    return VarietyPresentation(
        name=f"P^{n}",
        dim_x=n,
        class_rank=1,
        canonical_class=(-n - 1,),
        eff_cone=ray,
        amp_cone=ray,
        oracle=SectionOracle(ORACLE_PROJECTIVE, (n,)),
    )


def build_product(m: int, n: int) -> VarietyPresentation:
    """P^m x P^n with the two hyperplane pullbacks (A_1, A_2) as basis."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    orthant = Cone([(1, 0), (0, 1)])
    return VarietyPresentation(
        name=f"P^{m} x P^{n}",
        dim_x=m + n,
        class_rank=2,
        canonical_class=(-m - 1, -n - 1),
        eff_cone=orthant,
        amp_cone=orthant,
        oracle=SectionOracle(ORACLE_PRODUCT, (m, n)),
    )


def build_blowup_p2_point() -> VarietyPresentation:
    """The plane blown up at one point, basis (E, A).

    E is the exceptional curve and A the pullback of a line; the effective
    cone is spanned by E and A - E, the nef cone by A and A - E.
    """
    return VarietyPresentation(
        name="Bl_pt P^2",
        dim_x=2,
        class_rank=2,
        canonical_class=(1, -3),
        eff_cone=Cone([(1, 0), (-1, 1)]),
        amp_cone=Cone([(0, 1), (-1, 1)]),
        oracle=SectionOracle(ORACLE_BLOWUP_P2_POINT),
    )


def h0(variety: VarietyPresentation, divisor_class) -> int:
    """dim H^0 of the line bundle attached to a divisor class."""
    if variety.oracle is None:
        raise NoOracle(f"variety {variety.name!r} has no section oracle")
    coords = tuple(int(x) for x in divisor_class)
    if len(coords) != variety.class_rank:
        raise ValueError(
            f"divisor class of length {len(coords)}, expected {variety.class_rank}"
        )
    return _h0(variety.oracle, coords)


@lru_cache(maxsize=None)
def _h0(oracle: SectionOracle, coords: tuple[int, ...]) -> int:
    if oracle.kind == ORACLE_PROJECTIVE:
        (n,) = oracle.params
        (d,) = coords
        return comb(d + n, n) if d >= 0 else 0
    if oracle.kind == ORACLE_PRODUCT:
        m, n = oracle.params
        p, q = coords
        if p < 0 or q < 0:
            return 0
        return comb(p + m, m) * comb(q + n, n)
    # blow-up of the plane at one point: a class e*E + a*A has sections the
    # degree-a forms vanishing to order >= -e at the center; a positive E
    # part is absorbed by the canonical section of O(E) and imposes nothing
    e, a = coords
    if a < 0:
        return 0
    return vanishing_dim(a, max(0, -e))


def vanishing_dim(degree: int, order: int) -> int:
    """Dimension of degree-`degree` ternary forms vanishing to order >= `order`
    at the point [1:1:1], by exact rank of a derivative-evaluation matrix.

    Only the derivatives of top relevant order are evaluated: over Q the
    Euler relation recovers all lower-order conditions whenever
    degree >= order, and the remaining cases are resolved directly.
    """
    if degree < 0:
        return 0
    if order <= 0:
        return comb(degree + 2, 2)
    if degree < order:
        return 0
    monomials = [
        (i, j, degree - i - j)
        for i in range(degree + 1)
        for j in range(degree + 1 - i)
    ]
    rows = []
    for a1 in range(order):
        for a2 in range(order - a1):
            a3 = order - 1 - a1 - a2
            rows.append(
                [perm(i, a1) * perm(j, a2) * perm(k, a3) for i, j, k in monomials]
            )
    return comb(degree + 2, 2) - rank(rows)
