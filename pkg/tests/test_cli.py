"""Command-line interface, run in process through main(argv)."""

import json
import pathlib

import pytest

import milnorcalc.cli as cli
from milnorcalc.charclasses import CheckResult, build_report
from milnorcalc.chow import ChowClass
from milnorcalc.cli import main
from milnorcalc.corpus import load_corpus_scene

SCENES = pathlib.Path(__file__).resolve().parent.parent / "scenes"
NODAL = str(SCENES / "nodal-cubic.json")
CUSPIDAL = str(SCENES / "cuspidal-cubic.json")
CONIC = str(SCENES / "smooth-conic.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def assert_canonical(text):
    # canonical JSON re-serializes byte for byte
    body = text.rstrip("\n")
    assert json.dumps(json.loads(body), sort_keys=True, indent=2) == body
    return json.loads(body)


class TestReport:
    def test_text_output(self, capsys):
        code, out, err = run(capsys, "report", NODAL)
        assert code == 0 and err == ""
        lines = out.splitlines()
        assert lines[0] == "scene: nodal-cubic"
        assert lines[1] == "ambient: P^2"
        assert lines[2] == "degrees: (3)"
        assert "total milnor number: 1 (chart z)" in lines
        assert "mu: node -> -1" in lines
        assert "fulton_johnson: 3H" in lines
        assert "milnor_class: -H^2" in lines
        assert "csm: 3H + H^2" in lines
        assert "euler: 1" in lines
        assert "  node: -H^2" in lines
        assert all(": FAIL" not in line for line in lines)
        assert any(line.startswith("  verdier_m1: pass") for line in lines)

    def test_json_output_is_canonical(self, capsys):
        code, out, err = run(capsys, "--json", "report", NODAL)
        assert code == 0
        payload = assert_canonical(out)
        assert payload["name"] == "nodal-cubic"
        assert payload["ambient"] == [2]
        assert payload["degrees"] == [[3]]
        assert payload["total_milnor"] == 1
        assert payload["chart"] == "z"
        assert payload["milnor_class"] == {"2": -1}
        assert payload["csm"] == {"1": 3, "2": 1}
        assert payload["euler"] == 1
        assert payload["mu"] == {"node": -1}
        assert payload["localization"] == [{"class": {"2": -1}, "stratum": "node"}]
        assert payload["checks"]["verdier_m1"] == {"pass": True}

    def test_m_flag_changes_check_names(self, capsys):
        code, out, _ = run(capsys, "--json", "report", NODAL, "--m", "3")
        payload = assert_canonical(out)
        assert "verdier_m3" in payload["checks"]
        assert "verdier_m1" not in payload["checks"]

    def test_quiet_suppresses_output(self, capsys):
        code, out, err = run(capsys, "--quiet", "report", NODAL)
        assert code == 0 and out == "" and err == ""

    def test_missing_file(self, capsys):
        code, out, err = run(capsys, "report", str(SCENES / "absent.json"))
        assert code == 2
        assert err.startswith("error: cannot read")

    def test_invalid_scene(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"ambient": [2]}', encoding="utf-8")
        code, _, err = run(capsys, "report", str(path))
        assert code == 2
        assert "missing field: degrees" in err


class TestCheck:
    def test_all_checks_pass(self, capsys):
        code, out, err = run(capsys, "check", NODAL)
        assert code == 0
        assert out.splitlines() == [
            "verdier_m1: pass",
            "defect_codim1: pass",
            "pushdown_m1: pass",
            "lci_m1: pass",
        ]

    def test_selected_checks(self, capsys):
        code, out, _ = run(capsys, "check", NODAL, "--checks", "verdier,lci", "--m", "2")
        assert code == 0
        assert out.splitlines() == ["verdier_m2: pass", "lci_m2: pass"]

    def test_aliases(self, capsys):
        code, out, _ = run(capsys, "check", NODAL, "--checks", "verdier_smooth,defect_codim1")
        assert code == 0
        assert out.splitlines() == ["verdier_m1: pass", "defect_codim1: pass"]

    def test_json_payload(self, capsys):
        code, out, _ = run(capsys, "--json", "check", NODAL, "--checks", "pushdown")
        payload = assert_canonical(out)
        assert payload == {"pushdown_m1": {"pass": True}}

    def test_unknown_check(self, capsys):
        code, _, err = run(capsys, "check", NODAL, "--checks", "frobnicate")
        assert code == 2
        assert "unknown check 'frobnicate'" in err

    def test_every_shipped_scene_passes(self, capsys):
        for path in sorted(SCENES.glob("*.json")):
            code, _, err = run(capsys, "--quiet", "check", str(path))
            assert code == 0, f"{path.name}: {err}"

    def test_failed_check_exits_one(self, monkeypatch, capsys):
        # The identity checks hold for arbitrary scene data, so a
        # doctored report stands in for an arithmetic regression.
        scene, mu = load_corpus_scene("nodal-cubic")
        report = build_report(scene, mu)
        report.checks["verdier_m1"] = CheckResult(
            name="verdier_m1",
            passed=False,
            residual=ChowClass.point(report.scene.ambient),
        )
        monkeypatch.setattr(cli, "build_report", lambda *a, **k: report)
        code, out, _ = run(capsys, "check", NODAL)
        assert code == 1
        assert "verdier_m1: FAIL  residual: H^2" in out

    def test_failed_check_json(self, monkeypatch, capsys):
        scene, mu = load_corpus_scene("nodal-cubic")
        report = build_report(scene, mu)
        report.checks["lci_m1"] = CheckResult(
            name="lci_m1",
            passed=False,
            residual=ChowClass.point(report.scene.ambient),
        )
        monkeypatch.setattr(cli, "build_report", lambda *a, **k: report)
        code, out, _ = run(capsys, "--json", "check", NODAL, "--checks", "lci")
        assert code == 1
        payload = assert_canonical(out)
        assert payload["lci_m1"]["pass"] is False
        assert payload["lci_m1"]["residual"] == {"2": 1}


class TestMilnor:
    def test_plain_total(self, capsys):
        code, out, _ = run(capsys, "milnor", "--poly", "y^2*z - x^3", "--vars", "x,y,z", "--chart", "z")
        assert code == 0
        assert out == "2\n"

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "--json", "milnor", "--poly", "y^2*z - x^3 - x^2*z",
            "--vars", "x,y,z", "--chart", "z",
        )
        payload = assert_canonical(out)
        assert payload == {"chart": "z", "off_curve_dim": 1, "total_milnor": 1}

    def test_smooth_gives_zero(self, capsys):
        code, out, _ = run(capsys, "milnor", "--poly", "x^2 + y^2 + z^2", "--vars", "x,y,z", "--chart", "z")
        assert code == 0 and out == "0\n"

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "milnor", "--poly", "x^2 +", "--vars", "x,y,z", "--chart", "z")
        assert code == 2
        assert err.startswith("error:")

    def test_unknown_chart(self, capsys):
        code, _, err = run(capsys, "milnor", "--poly", "x^2 + y^2 + z^2", "--vars", "x,y,z", "--chart", "t")
        assert code == 2

    def test_inhomogeneous(self, capsys):
        code, _, err = run(capsys, "milnor", "--poly", "x^2 + y", "--vars", "x,y,z", "--chart", "z")
        assert code == 2
        assert "homogeneous" in err

    def test_non_isolated_is_a_math_error(self, capsys):
        code, _, err = run(capsys, "milnor", "--poly", "x^2*y", "--vars", "x,y,z", "--chart", "z")
        assert code == 3
        assert "non-isolated singularities" in err

    def test_singular_outside_chart(self, capsys):
        code, _, err = run(capsys, "milnor", "--poly", "y^2*z - x^3", "--vars", "x,y,z", "--chart", "y")
        assert code == 3
        assert "outside the chart" in err

    def test_empty_vars(self, capsys):
        code, _, err = run(capsys, "milnor", "--poly", "x^2", "--vars", " , ", "--chart", "x")
        assert code == 2


class TestTable:
    def test_text_grid(self, capsys):
        code, out, _ = run(capsys, "table")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "chi of a smooth degree-d hypersurface in P^n"
        assert lines[1].split() == ["n\\d", "1", "2", "3", "4"]
        rows = {line.split()[0]: line.split()[1:] for line in lines[2:]}
        assert rows["2"] == ["2", "2", "0", "-4"]
        assert rows["3"] == ["3", "4", "9", "24"]
        assert rows["4"] == ["4", "4", "-6", "-56"]

    def test_json_values(self, capsys):
        code, out, _ = run(capsys, "--json", "table", "--nmax", "3", "--dmax", "5")
        payload = assert_canonical(out)
        assert payload["nmax"] == 3 and payload["dmax"] == 5
        assert payload["chi"]["1,4"] == 4
        assert payload["chi"]["2,3"] == 0
        assert payload["chi"]["3,5"] == 55
        assert len(payload["chi"]) == 15

    def test_line_row_counts_points(self, capsys):
        # chi of d points in P^1 is d
        code, out, _ = run(capsys, "--json", "table", "--nmax", "1", "--dmax", "6")
        payload = assert_canonical(out)
        assert [payload["chi"][f"1,{d}"] for d in range(1, 7)] == [1, 2, 3, 4, 5, 6]

    def test_bad_bounds(self, capsys):
        code, _, err = run(capsys, "table", "--nmax", "0")
        assert code == 2
        assert "at least 1" in err


class TestParser:
    def test_unknown_command_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_subcommand_required(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
