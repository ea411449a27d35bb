"""Command line interface: parsing, dispatch, formats, errors, round-trips."""

import json
import subprocess

import pytest

from rackhom.cli import RackDescription, main

TWO_ONE = {"kind": "permutation", "cycles": [[0, 1], [2]]}
FIB = {"kind": "permutation", "cycles": [[0]], "free_orbits": 1}
DIHEDRAL_3 = {"kind": "table", "table": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]}
DIHEDRAL_4 = {
    "kind": "table",
    "table": [[0, 3, 2, 1], [2, 1, 0, 3], [0, 3, 2, 1], [2, 1, 0, 3]],
}
SWAP_TABLE = {"kind": "table", "table": [[1, 0], [1, 0]]}


@pytest.fixture
def rack_file(tmp_path):
    def write(document, name="rack.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)

    return write


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "validate", "--input", "/nonexistent.json")
        assert code == 2
        assert err.startswith("ParseError:")

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run_cli(capsys, "validate", "--input", str(path))
        assert code == 2
        assert err.startswith("ParseError:")

    @pytest.mark.parametrize(
        "document",
        [
            {"kind": "mystery"},
            {"kind": "table"},
            {"kind": "table", "table": [[0]], "cycles": [[0]]},
            {"kind": "table", "table": []},
            {"kind": "table", "table": [[0, "x"]]},
            {"kind": "permutation"},
            {"kind": "permutation", "cycles": [[0, 2]]},
            {"kind": "permutation", "cycles": [[0], [0]]},
            {"kind": "permutation", "cycles": [[]]},
            {"kind": "permutation", "cycles": [], "free_orbits": 0},
            {"kind": "permutation", "cycles": [[0]], "free_orbits": -1},
            [],
        ],
    )
    def test_schema_violations(self, capsys, rack_file, document):
        code, _, err = run_cli(capsys, "validate", "--input", rack_file(document))
        assert code == 2
        assert err.startswith("ParseError:")

    def test_flag_validation(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        for flags in (["--max-degree", "-1"], ["--terms", "0"], ["--basis-cap", "0"]):
            code, _, err = run_cli(capsys, "betti", "--input", path, *flags)
            assert code == 2
            assert err.startswith("ParseError:")

    def test_description_free_orbits_default(self):
        description = RackDescription.from_document(TWO_ONE)
        assert description.free_orbits == 0
        assert description.canonical()["free_orbits"] == 0


class TestErrorMapping:
    def test_rack_axiom_failure(self, capsys, rack_file):
        path = rack_file({"kind": "table", "table": [[0, 1], [1, 0]]})
        code, _, err = run_cli(capsys, "validate", "--input", path)
        assert code == 2
        assert err.startswith("ValidationError:")

    def test_brute_force_on_free_orbits(self, capsys, rack_file):
        path = rack_file(FIB)
        for command in ("homology", "cycles", "verify"):
            code, _, err = run_cli(capsys, command, "--input", path)
            assert code == 2
            assert err.startswith("InfiniteOrbits:")

    def test_closed_form_on_non_permutation_table(self, capsys, rack_file):
        path = rack_file(DIHEDRAL_3)
        for command in ("betti", "e2", "verify", "cycles"):
            code, _, err = run_cli(capsys, command, "--input", path)
            assert code == 2
            assert err.startswith("ValidationError:")

    def test_degree_cap(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, _, err = run_cli(
            capsys, "homology", "--input", path, "--max-degree", "4", "--basis-cap", "10"
        )
        assert code == 2
        assert err.startswith("DegreeTooLarge:")


class TestValidateCommand:
    def test_permutation_input(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(capsys, "validate", "--input", path, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "ok"
        assert doc["summary"]["size"] == 3
        assert doc["summary"]["orbits"] == [[0, 1], [2]]
        assert doc["summary"]["r"] == 2

    def test_table_input(self, capsys, rack_file):
        path = rack_file(DIHEDRAL_3)
        code, out, _ = run_cli(capsys, "validate", "--input", path)
        assert code == 0
        assert "is_permutation: False" in out

    def test_permutation_table_input(self, capsys, rack_file):
        path = rack_file(SWAP_TABLE)
        code, out, _ = run_cli(capsys, "validate", "--input", path, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["summary"]["is_permutation"] is True
        assert doc["summary"]["orbits"] == [[0, 1]]

    def test_csv_format(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(capsys, "validate", "--input", path, "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "field,value"


class TestVerifyCommand:
    def test_two_one_all_sources_agree(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(
            capsys, "verify", "--input", path, "--max-degree", "3", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "ok"
        ranks = [row["free_rank"] for row in doc["results"]]
        assert ranks == [1, 2, 4, 8]
        for row in doc["results"]:
            assert (
                row["free_rank"]
                == row["closed_form"]
                == row["e2_total"]
                == row["bn_size"]
                == row["certificate_rank"]
            )
            assert row["torsion"] == []
            assert row["independent"] is True

    def test_golden_csv(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(
            capsys, "verify", "--input", path, "--max-degree", "2", "--format", "csv"
        )
        assert code == 0
        assert out == (
            "degree,free_rank,torsion,closed_form_rank,e2_total,bn_size\n"
            "0,1,,1,1,1\n"
            "1,2,,2,2,2\n"
            "2,4,,4,4,4\n"
        )

    def test_table_kind_permutation_rack(self, capsys, rack_file):
        path = rack_file(SWAP_TABLE)
        code, out, _ = run_cli(
            capsys, "verify", "--input", path, "--max-degree", "2", "--format", "json"
        )
        assert code == 0
        assert [r["free_rank"] for r in json.loads(out)["results"]] == [1, 1, 1]


class TestHomologyCommand:
    def test_torsion_in_csv(self, capsys, rack_file):
        path = rack_file(DIHEDRAL_4)
        code, out, _ = run_cli(
            capsys, "homology", "--input", path, "--max-degree", "2", "--format", "csv"
        )
        assert code == 0
        assert out == (
            "degree,free_rank,torsion,closed_form_rank,e2_total,bn_size\n"
            "0,1,,,,\n"
            "1,2,,,,\n"
            "2,4,2;2,,,\n"
        )

    def test_json_rows(self, capsys, rack_file):
        path = rack_file(DIHEDRAL_3)
        code, out, _ = run_cli(
            capsys, "homology", "--input", path, "--max-degree", "3", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert [row["free_rank"] for row in doc["results"]] == [1, 1, 1, 1]
        assert doc["results"][3]["torsion"] == [3]
        assert doc["results"][0]["closed_form"] is None


class TestBettiCommand:
    def test_accepts_free_orbits(self, capsys, rack_file):
        path = rack_file(FIB)
        code, out, _ = run_cli(
            capsys, "betti", "--input", path, "--terms", "6",
            "--max-degree", "5", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["poincare_series"] == [1, 2, 3, 5, 8, 13]
        assert [row["closed_form"] for row in doc["results"]] == [1, 2, 3, 5, 8, 13]

    def test_table_output_contains_series(self, capsys, rack_file):
        path = rack_file(FIB)
        code, out, _ = run_cli(capsys, "betti", "--input", path, "--terms", "5")
        assert code == 0
        assert "poincare_series: 1, 2, 3, 5, 8" in out


class TestE2Command:
    def test_page_and_totals(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(
            capsys, "e2", "--input", path, "--max-degree", "3", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert [row["e2_total"] for row in doc["results"]] == [1, 2, 4, 8]
        page = {(cell["p"], cell["q"]): cell["rank"] for cell in doc["e2_page"]}
        assert page[(0, 0)] == 1
        assert page[(0, 1)] == 2
        assert page[(1, 1)] == 2
        assert all(rank == 0 for (p, q), rank in page.items() if p > q)

    def test_accepts_free_orbits(self, capsys, rack_file):
        path = rack_file(FIB)
        code, out, _ = run_cli(
            capsys, "e2", "--input", path, "--max-degree", "4", "--format", "json"
        )
        assert code == 0
        assert [row["e2_total"] for row in json.loads(out)["results"]] == [1, 2, 3, 5, 8]


class TestCyclesCommand:
    def test_recipes_and_certificate(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(
            capsys, "cycles", "--input", path, "--max-degree", "2", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        rows = doc["results"]
        assert [row["bn_size"] for row in rows] == [1, 2, 4]
        assert all(row["independent"] for row in rows)
        assert rows[1]["recipes"] == ["(0)", "(2)"]
        assert rows[2]["recipes"] == ["(2-0)·(0)", "(2-0)·(2)", "avg(0)", "avg(2)"]

    def test_table_format_lists_recipes(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(capsys, "cycles", "--input", path, "--max-degree", "1")
        assert code == 0
        assert "B_1: (0), (2)" in out


class TestRoundTripAndDeterminism:
    def test_json_round_trip(self, capsys, rack_file, tmp_path):
        path = rack_file(TWO_ONE)
        code, out, _ = run_cli(
            capsys, "verify", "--input", path, "--max-degree", "2", "--format", "json"
        )
        assert code == 0
        first = json.loads(out)
        echo = tmp_path / "echo.json"
        echo.write_text(json.dumps(first["rack"]))
        code, out, _ = run_cli(
            capsys, "verify", "--input", str(echo), "--max-degree", "2", "--format", "json"
        )
        assert code == 0
        second = json.loads(out)
        assert second["results"] == first["results"]
        assert second["status"] == first["status"]
        assert second["rack"] == first["rack"]

    def test_byte_identical_reruns(self, capsys, rack_file):
        path = rack_file(TWO_ONE)
        outputs = set()
        for _ in range(2):
            _, out, _ = run_cli(
                capsys, "verify", "--input", path, "--max-degree", "3",
                "--format", "csv",
            )
            outputs.add(out)
        assert len(outputs) == 1


def test_console_script_is_installed(rack_file):
    result = subprocess.run(
        ["rackhom", "verify", "--input", rack_file(TWO_ONE), "--max-degree", "1"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "status: ok" in result.stdout
