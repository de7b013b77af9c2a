"""Card schema validation, builtin cards, and JSON round trips."""

import json

import pytest

from multisec.cards import (
    BUILTIN_CARDS,
    AnalysisCard,
    CardValidationError,
    card_from_dict,
    card_from_json,
    card_to_setup,
    dump_builtin_cards,
    is_builtin,
    load_card,
)


def blowup_dict():
    return BUILTIN_CARDS["blowup-p2-point"].to_json_dict()


class TestValidation:
    def test_builtin_cards_validate(self):
        for name, card in BUILTIN_CARDS.items():
            parsed = card_from_dict(card.to_json_dict())
            assert parsed == card
            setup = card_to_setup(parsed)
            assert setup.variety.name == name

    def test_missing_field(self):
        data = blowup_dict()
        del data["divisors"]
        with pytest.raises(CardValidationError, match="divisors"):
            card_from_dict(data)

    def test_unknown_field(self):
        data = blowup_dict()
        data["extra"] = 1
        with pytest.raises(CardValidationError, match="extra"):
            card_from_dict(data)

    def test_float_rejected_even_when_integral(self):
        text = json.dumps(blowup_dict()).replace('"dim": 2', '"dim": 2.0')
        with pytest.raises(CardValidationError, match="2.0"):
            card_from_json(text)

    def test_fractional_float_rejected(self):
        data = blowup_dict()
        data["divisors"][0][0] = 1.5
        with pytest.raises(CardValidationError):
            card_from_json(json.dumps(data))

    def test_bool_is_not_an_integer(self):
        data = blowup_dict()
        data["dim"] = True
        with pytest.raises(CardValidationError, match="dim"):
            card_from_dict(data)

    def test_zero_dimension_rejected(self):
        data = blowup_dict()
        data["dim"] = 0
        with pytest.raises(CardValidationError, match="dim"):
            card_from_dict(data)

    def test_vector_length_mismatch(self):
        data = blowup_dict()
        data["canonical_class"] = [1]
        with pytest.raises(CardValidationError, match="canonical_class"):
            card_from_dict(data)

    def test_divisor_length_mismatch(self):
        data = blowup_dict()
        data["divisors"] = [[1, 0, 0]]
        with pytest.raises(CardValidationError, match="divisors"):
            card_from_dict(data)

    def test_empty_divisors_rejected(self):
        data = blowup_dict()
        data["divisors"] = []
        with pytest.raises(CardValidationError, match="divisors"):
            card_from_dict(data)

    def test_unknown_oracle(self):
        data = blowup_dict()
        data["oracle"] = {"kind": "sphere"}
        with pytest.raises(CardValidationError, match="oracle"):
            card_from_dict(data)

    def test_oracle_extra_params(self):
        data = blowup_dict()
        data["oracle"] = {"kind": "blowup_p2_point", "n": 3}
        with pytest.raises(CardValidationError, match="oracle"):
            card_from_dict(data)

    def test_missing_oracle_is_fine(self):
        data = blowup_dict()
        data["oracle"] = None
        card = card_from_dict(data)
        assert card.oracle is None
        assert card_to_setup(card).variety.oracle is None

    def test_ample_outside_effective_rejected(self):
        data = blowup_dict()
        data["amp_generators"] = [[0, 1], [1, -1]]
        card = card_from_dict(data)
        with pytest.raises(CardValidationError):
            card_to_setup(card)

    def test_non_pointed_cone_rejected(self):
        data = blowup_dict()
        data["eff_generators"] = [[1, 0], [-1, 0], [0, 1], [0, -1]]
        card = card_from_dict(data)
        with pytest.raises(CardValidationError):
            card_to_setup(card)

    def test_invalid_json(self):
        with pytest.raises(CardValidationError, match="invalid JSON"):
            card_from_json("{not json")

    def test_non_object_card(self):
        with pytest.raises(CardValidationError):
            card_from_json("[1, 2, 3]")


class TestBuiltins:
    def test_expected_names(self):
        assert set(BUILTIN_CARDS) == {
            "product-p1xp2",
            "blowup-p2-point",
            "veronese-p3-d2",
        }

    def test_builtin_detection(self):
        card = BUILTIN_CARDS["blowup-p2-point"]
        assert is_builtin(card)
        renamed = AnalysisCard(
            name="my-blowup",
            dim=card.dim,
            class_rank=card.class_rank,
            canonical_class=card.canonical_class,
            eff_generators=card.eff_generators,
            amp_generators=card.amp_generators,
            oracle=card.oracle,
            divisors=card.divisors,
        )
        assert not is_builtin(renamed)

    def test_dump_round_trip(self, tmp_path):
        paths = dump_builtin_cards(tmp_path)
        assert len(paths) == len(BUILTIN_CARDS)
        for path in paths:
            card = load_card(path)
            assert is_builtin(card)

    def test_json_dict_round_trip(self):
        for card in BUILTIN_CARDS.values():
            assert card_from_dict(card.to_json_dict()) == card
