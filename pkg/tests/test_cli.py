"""CLI behaviour: commands, formats, exit codes."""

import json

import pytest
from click.testing import CliRunner

from xpf.cli import main

CODE1 = """\
# 7-qubit precision-8 code
N=8 n=7
XP_8(8|0000000|6554444)
XP_8(7|1111111|1241234)
XP_8(1|1110000|3134444)
"""

CODE2 = """\
N=8 n=7
XP_8(0|0000000|1322224)
XP_8(12|1111111|1234567)
"""


@pytest.fixture()
def runner(tmp_path):
    r = CliRunner()
    (tmp_path / "code1.xp").write_text(CODE1)
    (tmp_path / "code2.xp").write_text(CODE2)
    return r, tmp_path


def test_canon_text(runner):
    r, d = runner
    res = r.invoke(main, ["canon", str(d / "code1.xp")])
    assert res.exit_code == 0
    assert "XP_8(9|1110000|1240000)" in res.output
    assert "XP_8(0|0000000|0440000)" in res.output


def test_codewords_matches_published_strings(runner):
    r, d = runner
    res = r.invoke(main, ["codewords", str(d / "code1.xp")])
    assert res.exit_code == 0
    assert "|k_0> = |0000001> + w^6|0001110> + w^9|1110001> + w^15|1111110>" in res.output


def test_json_output_round_trips(runner):
    r, d = runner
    res = r.invoke(main, ["codewords", str(d / "code1.xp"), "--format", "json"])
    data = json.loads(res.output)
    assert data["E_m"] == ["0000001", "0000010", "0000100", "0000111"]


def test_logical_report(runner):
    r, d = runner
    res = r.invoke(main, ["logical", str(d / "code2.xp")])
    assert res.exit_code == 0
    assert "non-XP-regular" in res.output
    assert "XP_8(2|0011110|0012304)" in res.output


def test_measure_diag_pauli(runner):
    r, d = runner
    res = r.invoke(
        main, ["measure", "--diag-pauli", str(d / "code2.xp"), "XP_2(0|0000000|0111111)"]
    )
    assert res.exit_code == 0
    assert "Pr(+1) = 1/4" in res.output
    assert "Pr(-1) = 3/4" in res.output


def test_rm_and_check(runner, tmp_path):
    r, d = runner
    res = r.invoke(main, ["rm", "3"])
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "N=2 n=7"
    (tmp_path / "rm3.xp").write_text(res.output)
    res2 = r.invoke(main, ["check", str(tmp_path / "rm3.xp")])
    assert res2.exit_code == 0
    assert "FAIL" not in res2.output


def test_exit_code_empty_codespace(runner, tmp_path):
    r, _ = runner
    f = tmp_path / "empty.xp"
    f.write_text("N=8 n=2\nXP_8(1|00|00)\n")
    res = r.invoke(main, ["codewords", str(f)])
    assert res.exit_code == 2


def test_exit_code_parse_error(runner, tmp_path):
    r, _ = runner
    f = tmp_path / "bad.xp"
    f.write_text("N=8 n=2\nXP_8(1|00|0)\n")
    res = r.invoke(main, ["canon", str(f)])
    assert res.exit_code == 1
    assert "bad.xp:2" in res.output


def test_exit_code_size_limit(runner, monkeypatch):
    r, d = runner
    monkeypatch.setenv("XPF_MAX_QUBITS", "5")
    res = r.invoke(main, ["canon", str(d / "code1.xp")])
    assert res.exit_code == 3


def test_convert_round_trip(runner, tmp_path):
    r, _ = runner
    f = tmp_path / "wg.whg"
    f.write_text("r=4\nCP(1/2, 1100)\nCP(1/2, 0011)\nCP(1/4, 1001)\nCP(1/4, 0110)\n")
    res = r.invoke(main, ["convert", "--whg-to-xp", "--optimise", str(f)])
    assert res.exit_code == 0
    assert "XP_4(0|100010|320010)" in res.output


def test_action_command(runner):
    r, d = runner
    res = r.invoke(main, ["action", str(d / "code1.xp"), "XP_8(8|0000000|0000044)"])
    assert res.exit_code == 0
    assert "f: (0, 0, 8, 8)" in res.output
    assert "class: regular" in res.output


def test_measure_nonlogical_operator_usage_error(runner):
    r, d = runner
    res = r.invoke(main, ["action", str(d / "code1.xp"), "XP_8(1|1000000|0000000)"])
    assert res.exit_code == 1
