"""JSON analysis cards: schema validation, conversion to varieties and
setups, and the builtin example cards.

Cards carry only integers.  Floats are rejected outright (including ones
with zero fractional part) so that no inexact number can leak into the
lattice computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cones import Cone
from .core import MultiSectionSetup
from .geometry import (
    ORACLE_BLOWUP_P2_POINT,
    ORACLE_PRODUCT,
    ORACLE_PROJECTIVE,
    SectionOracle,
    VarietyPresentation,
)

CARD_FIELDS = (
    "name",
    "dim",
    "class_rank",
    "canonical_class",
    "eff_generators",
    "amp_generators",
    "oracle",
    "divisors",
)

_ORACLE_PARAM_FIELDS = {
    ORACLE_PROJECTIVE: ("n",),
    ORACLE_PRODUCT: ("m", "n"),
    ORACLE_BLOWUP_P2_POINT: (),
}


class CardValidationError(ValueError):
    """A card failed schema validation; the message names the field."""


@dataclass(frozen=True)
class AnalysisCard:
    """Validated input card describing a variety and its divisor list."""

    name: str
    dim: int
    class_rank: int
    canonical_class: tuple[int, ...]
    eff_generators: tuple[tuple[int, ...], ...]
    amp_generators: tuple[tuple[int, ...], ...]
    oracle: SectionOracle | None
    divisors: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        oracle = None
        if self.oracle is not None:
            oracle = {"kind": self.oracle.kind}
            for field, value in zip(
                _ORACLE_PARAM_FIELDS[self.oracle.kind], self.oracle.params
            ):
                oracle[field] = value
        return {
            "name": self.name,
            "dim": self.dim,
            "class_rank": self.class_rank,
            "canonical_class": list(self.canonical_class),
            "eff_generators": [list(g) for g in self.eff_generators],
            "amp_generators": [list(g) for g in self.amp_generators],
            "oracle": oracle,
            "divisors": [list(d) for d in self.divisors],
        }


def _expect_int(value, path: str) -> int:
    if type(value) is not int:
        raise CardValidationError(f"{path}: expected an integer, got {value!r}")
    return value


def _expect_vector(value, length: int, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise CardValidationError(f"{path}: expected a list of integers")
    if len(value) != length:
        raise CardValidationError(
            f"{path}: expected length {length}, got {len(value)}"
        )
    return tuple(_expect_int(x, f"{path}[{i}]") for i, x in enumerate(value))


def _expect_vector_list(value, length: int, path: str, allow_empty=False):
    if not isinstance(value, list):
        raise CardValidationError(f"{path}: expected a list of integer vectors")
    if not value and not allow_empty:
        raise CardValidationError(f"{path}: must not be empty")
    return tuple(
        _expect_vector(item, length, f"{path}[{i}]") for i, item in enumerate(value)
    )


def _parse_oracle(value) -> SectionOracle | None:
    if value is None:
        return None
    if not isinstance(value, dict):
        raise CardValidationError("oracle: expected an object or null")
    kind = value.get("kind")
    if kind not in _ORACLE_PARAM_FIELDS:
        raise CardValidationError(f"oracle.kind: unknown oracle {kind!r}")
    expected = set(_ORACLE_PARAM_FIELDS[kind]) | {"kind"}
    extra = set(value) - expected
    if extra:
        raise CardValidationError(f"oracle: unknown field(s) {sorted(extra)}")
    params = []
    for field in _ORACLE_PARAM_FIELDS[kind]:
        if field not in value:
            raise CardValidationError(f"oracle.{field}: missing")
        p = _expect_int(value[field], f"oracle.{field}")
        if p < 1:
            raise CardValidationError(f"oracle.{field}: must be positive")
        params.append(p)
    return SectionOracle(kind, tuple(params))


def card_from_dict(data) -> AnalysisCard:
    """Validate a parsed JSON object into an AnalysisCard."""
    if not isinstance(data, dict):
        raise CardValidationError("card: expected a JSON object")
    unknown = set(data) - set(CARD_FIELDS)
    if unknown:
        raise CardValidationError(f"card: unknown field(s) {sorted(unknown)}")
    missing = [f for f in CARD_FIELDS if f != "oracle" and f not in data]
    if missing:
        raise CardValidationError(f"card: missing field(s) {missing}")
    name = data["name"]
    if not isinstance(name, str) or not name:
        raise CardValidationError("name: expected a non-empty string")
    dim = _expect_int(data["dim"], "dim")
    if dim < 1:
        raise CardValidationError("dim: the variety dimension must be positive")
    class_rank = _expect_int(data["class_rank"], "class_rank")
    if class_rank < 1:
        raise CardValidationError("class_rank: must be positive")
    canonical = _expect_vector(data["canonical_class"], class_rank, "canonical_class")
    eff = _expect_vector_list(data["eff_generators"], class_rank, "eff_generators")
    amp = _expect_vector_list(data["amp_generators"], class_rank, "amp_generators")
    divisors = _expect_vector_list(data["divisors"], class_rank, "divisors")
    oracle = _parse_oracle(data.get("oracle"))
    return AnalysisCard(
        name=name,
        dim=dim,
        class_rank=class_rank,
        canonical_class=canonical,
        eff_generators=eff,
        amp_generators=amp,
        oracle=oracle,
        divisors=divisors,
    )


def _reject_float(literal: str):
    raise CardValidationError(
        f"card: non-integer number {literal!r} (floats are not accepted)"
    )


def card_from_json(text: str) -> AnalysisCard:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise CardValidationError(f"card: invalid JSON ({exc})") from exc
    return card_from_dict(data)


def load_card(path) -> AnalysisCard:
    with open(path, "r", encoding="utf-8") as handle:
        return card_from_json(handle.read())


def card_to_setup(card: AnalysisCard) -> MultiSectionSetup:
    """Build the variety presentation and setup, re-raising any geometric
    validation failure as a card error."""
    try:
        variety = VarietyPresentation(
            name=card.name,
            dim_x=card.dim,
            class_rank=card.class_rank,
            canonical_class=card.canonical_class,
            eff_cone=Cone(card.eff_generators, ambient_dim=card.class_rank),
            amp_cone=Cone(card.amp_generators, ambient_dim=card.class_rank),
            oracle=card.oracle,
        )
        return MultiSectionSetup(variety=variety, divisors=card.divisors)
    except ValueError as exc:
        raise CardValidationError(str(exc)) from exc


def _builtin_cards() -> dict[str, AnalysisCard]:
    product = AnalysisCard(
        name="product-p1xp2",
        dim=3,
        class_rank=2,
        canonical_class=(-2, -3),
        eff_generators=((1, 0), (0, 1)),
        amp_generators=((1, 0), (0, 1)),
        oracle=SectionOracle(ORACLE_PRODUCT, (1, 2)),
        divisors=((1, 1), (1, 2)),
    )
    blowup = AnalysisCard(
        name="blowup-p2-point",
        dim=2,
        class_rank=2,
        canonical_class=(1, -3),
        eff_generators=((1, 0), (-1, 1)),
        amp_generators=((0, 1), (-1, 1)),
        oracle=SectionOracle(ORACLE_BLOWUP_P2_POINT),
        divisors=((-1, 0), (0, 1)),
    )
    veronese = AnalysisCard(
        name="veronese-p3-d2",
        dim=3,
        class_rank=1,
        canonical_class=(-4,),
        eff_generators=((1,),),
        amp_generators=((1,),),
        oracle=SectionOracle(ORACLE_PROJECTIVE, (3,)),
        divisors=((2,),),
    )
    return {card.name: card for card in (product, blowup, veronese)}


BUILTIN_CARDS = _builtin_cards()


def is_builtin(card: AnalysisCard) -> bool:
    """Builtin provenance is decided by content equality with a shipped card."""
    known = BUILTIN_CARDS.get(card.name)
    return known is not None and known == card


def dump_builtin_cards(directory) -> list[str]:
    """Write every builtin card to <directory>/<name>.json; returns paths."""
    import os

    os.makedirs(directory, exist_ok=True)
    written = []
    for name in sorted(BUILTIN_CARDS):
        path = os.path.join(directory, f"{name}.json")
        payload = json.dumps(BUILTIN_CARDS[name].to_json_dict(), indent=2, sort_keys=True)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(payload + "\n")
        written.append(path)
    return written
