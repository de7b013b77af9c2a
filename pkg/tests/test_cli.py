"""End-to-end CLI behavior: exit codes, determinism, and output formats."""

import json

import pytest

from multisec.cards import BUILTIN_CARDS, dump_builtin_cards
from multisec.cli import main


@pytest.fixture(scope="module")
def card_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("cards")
    dump_builtin_cards(directory)
    return directory


def write_card(tmp_path, data, name="card.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestAnalyze:
    def test_blowup_text(self, card_dir, capsys):
        code = main(["analyze", str(card_dir / "blowup-p2-point.json")])
        out = capsys.readouterr().out
        assert code == 0
        assert "U: {1}" in out
        assert "Cl(T): Z" in out
        assert "Cl(R): 0" in out
        assert "shift: [-1, -3]" in out
        assert "Q_1: exactly-1" in out
        assert "Q_2: at-least-2" in out

    def test_product_report(self, card_dir, capsys):
        code = main(["analyze", str(card_dir / "product-p1xp2.json")])
        out = capsys.readouterr().out
        assert code == 0
        assert "U: {1, 2}" in out
        assert "Cl(T): Z^2" in out
        assert "free" in out

    def test_json_round_trip_idempotent(self, card_dir, capsys):
        code = main(["analyze", str(card_dir / "blowup-p2-point.json"), "--json"])
        out = capsys.readouterr().out
        assert code == 0
        parsed = json.loads(out)
        assert json.dumps(parsed, indent=2, sort_keys=True) + "\n" == out
        assert parsed["U"] == [1]
        assert parsed["canonical_T"]["shift"] == [-1, -3]
        assert parsed["noetherian_assumed"] is False
        assert all(entry["passed"] for entry in parsed["hilbert_verification"])

    def test_deterministic_output(self, card_dir, capsys):
        main(["analyze", str(card_dir / "blowup-p2-point.json"), "--json"])
        first = capsys.readouterr().out
        main(["analyze", str(card_dir / "blowup-p2-point.json"), "--json"])
        second = capsys.readouterr().out
        assert first == second

    def test_user_card_flags_noetherian_assumption(self, card_dir, tmp_path, capsys):
        data = BUILTIN_CARDS["blowup-p2-point"].to_json_dict()
        data["name"] = "my-card"
        path = write_card(tmp_path, data)
        code = main(["analyze", path, "--json"])
        out = capsys.readouterr().out
        assert code == 0
        assert json.loads(out)["noetherian_assumed"] is True

    def test_validation_error_exit_2(self, tmp_path, capsys):
        data = BUILTIN_CARDS["blowup-p2-point"].to_json_dict()
        data["dim"] = 0
        path = write_card(tmp_path, data)
        code = main(["analyze", path])
        captured = capsys.readouterr()
        assert code == 2
        assert "dim" in captured.err

    def test_missing_file_exit_2(self, capsys):
        assert main(["analyze", "/nonexistent/card.json"]) == 2

    def test_hypothesis_failure_exit_3(self, tmp_path, capsys):
        data = BUILTIN_CARDS["blowup-p2-point"].to_json_dict()
        data["name"] = "exceptional-only"
        data["divisors"] = [[1, 0]]
        path = write_card(tmp_path, data)
        code = main(["analyze", path])
        out = capsys.readouterr().out
        assert code == 3
        assert "hypothesis T (some positive combination ample): false" in out


class TestHilbert:
    def test_blowup_csv(self, card_dir, capsys):
        code = main(
            [
                "hilbert",
                str(card_dir / "blowup-p2-point.json"),
                "--ring",
                "T",
                "--box",
                "0:2",
            ]
        )
        out = capsys.readouterr().out
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n_1,n_2,dim"
        assert len(lines) == 10
        assert "1,1,2" in lines

    def test_per_coordinate_box(self, card_dir, capsys):
        code = main(
            [
                "hilbert",
                str(card_dir / "blowup-p2-point.json"),
                "--ring",
                "omegaT",
                "--box",
                "1:2,-1:1",
            ]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("n_1,n_2,dim\n")
        degrees = [line.split(",") for line in out.splitlines()[1:]]
        assert all(int(row[0]) >= 1 for row in degrees)

    def test_empty_box_header_only(self, card_dir, capsys):
        code = main(
            [
                "hilbert",
                str(card_dir / "blowup-p2-point.json"),
                "--ring",
                "T",
                "--box",
                "1:0",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out == "n_1,n_2,dim\n"

    def test_no_oracle_exit_4(self, tmp_path, capsys):
        data = BUILTIN_CARDS["blowup-p2-point"].to_json_dict()
        data["name"] = "no-oracle"
        data["oracle"] = None
        path = write_card(tmp_path, data)
        code = main(["hilbert", path, "--ring", "T", "--box", "0:1"])
        assert code == 4

    def test_malformed_box_exit_2(self, card_dir, capsys):
        code = main(
            [
                "hilbert",
                str(card_dir / "blowup-p2-point.json"),
                "--ring",
                "T",
                "--box",
                "0-2",
            ]
        )
        assert code == 2


class TestVerify:
    def test_veronese_suite(self, capsys):
        code = main(["verify", "veronese"])
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out
        assert "FAIL" not in out

    def test_blowup_suite(self, capsys):
        code = main(["verify", "blowup"])
        out = capsys.readouterr().out
        assert code == 0
        assert "shift (-1, -3)" in out

    def test_unknown_name_rejected(self):
        with pytest.raises(SystemExit):
            main(["verify", "mystery"])


class TestCardsDump:
    def test_dump_writes_all(self, tmp_path, capsys):
        code = main(["cards", "dump", str(tmp_path / "out")])
        out = capsys.readouterr().out
        assert code == 0
        assert len(out.splitlines()) == len(BUILTIN_CARDS)
        for name in BUILTIN_CARDS:
            assert (tmp_path / "out" / f"{name}.json").exists()
