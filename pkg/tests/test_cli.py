import json
import subprocess
import sys

import pytest

from cli_cases import CASES, DATA, case_id, check_case, invoke


@pytest.mark.parametrize("case", CASES, ids=case_id)
def test_golden_report(case):
    ok, message = check_case(case)
    assert ok, message


def test_reconstruct_report_fields():
    code, out = invoke("reconstruct", "b16.geo")
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == 1
    assert report["counts"]["directions"] == 16
    assert report["counts"]["reconstructed_size"] == 16
    assert report["verdicts"]["omp_valid"] is True


def test_reconstruct_from_diagram_checks_isomorphism():
    report = json.loads(invoke("reconstruct", "loop4.greechie")[1])
    assert report["verdicts"]["isomorphic_to_input"] is True
    assert report["verdicts"]["lattice"] is False


def test_lattice_failure_reports_witness():
    code, out = invoke("check-lattice", "loop4.greechie")
    assert code == 1 and len(json.loads(out)["witnesses"]["pair"]) == 2


def test_triangle_failure_reports_witness():
    code, out = invoke("validate-geometry", "loop3.geo")
    assert code == 1
    assert json.loads(out)["witnesses"]["triangle"] == ["p_a", "p_c", "p_e"]


def test_parse_error_exit_code_and_kind():
    code, out = invoke("validate-geometry", "bad_line.geo")
    assert code == 2 and json.loads(out)["error"]["kind"] == "ArityError"


def test_text_output():
    code, out = invoke("check-boolean", "two_block.geo", json_output=False)
    assert code == 1
    assert "verdict boolean: False" in out


def test_geometry_artifact_to_stdout():
    code, out = invoke("geometry", "b8.greechie", json_output=False)
    assert code == 0
    assert out == (DATA / "b8.geo").read_text()


def test_out_file(tmp_path):
    target = tmp_path / "b16.dot"
    code, _ = invoke("export-dot", "b16.geo", ["--out", str(target)])
    assert code == 0 and target.read_text().startswith("graph orthogeometry {")


def test_reconstruct_writes_loadable_oml(tmp_path):
    target = tmp_path / "r.json"
    invoke("reconstruct", "b8.geo", ["--out", str(target)])
    code, out = invoke("validate-oml", str(target))
    assert code == 0 and json.loads(out)["counts"]["elements"] == 8


def test_timing_is_opt_in():
    assert "timing" not in json.loads(invoke("directions", "b8.geo")[1])
    assert json.loads(invoke("directions", "b8.geo", ["--timing"])[1])["timing"] >= 0


def test_unknown_suffix_needs_format(tmp_path):
    odd = tmp_path / "b8.txt"
    odd.write_text((DATA / "b8.greechie").read_text())
    assert invoke("geometry", str(odd))[0] == 2
    assert invoke("geometry", str(odd), ["--format", "greechie"])[0] == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orthogeo.cli", "check-lattice", "--input", str(DATA / "loop4.greechie")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and "verdict lattice: False" in proc.stdout
