import io
import json
import re
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from tempered.cli import run

README = Path(__file__).resolve().parent.parent / "README.md"


def _examples():
    text = README.read_text(encoding="utf-8")
    cases = []
    for block in re.findall(r"```console\n(.*?)```", text, flags=re.S):
        cmd, out = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd:
                    cases.append((cmd, "\n".join(out) + "\n"))
                cmd, out = line[2:], []
            else:
                out.append(line)
        if cmd:
            cases.append((cmd, "\n".join(out) + "\n"))
    return cases


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


EXAMPLES = _examples()


def test_readme_has_examples():
    assert len(EXAMPLES) >= 10


@pytest.mark.parametrize("cmd,expected", EXAMPLES, ids=[c for c, _ in EXAMPLES])
def test_documented_example(cmd, expected):
    argv = shlex.split(cmd)
    assert argv[0] == "tempered"
    code, out, _ = _run(argv[1:])
    assert code == 0
    assert out == expected


def test_groups_lists_five_presets():
    code, out, _ = _run(["groups"])
    assert json.loads(out) == ["su2", "sl2r", "su11", "a1a1", "su21"]


def test_open_orbit_flag_spellings():
    assert _run(["open-orbits", "--group", "su21", "--flag", "1"])[1] == '{"count": 2}\n'


def test_orbit_report_json_lines_keys():
    code, out, _ = _run(["orbit-report", "--group", "su21"])
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 2 * 4 * 6
    keys = {"codim", "open", "measurable", "integrable", "partially_complex", "flag_type", "delta_x", "normalizer_roots"}
    assert all(keys <= set(r) for r in rows)


def test_exit_codes():
    assert _run(["groups", "--group", "nope"])[0] == 0
    code, _, err = _run(["cartans", "--group", "nope"])
    assert code == 2 and "unknown preset" in err
    assert _run(["frobnicate"])[0] == 2
    code, _, err = _run(["bbw", "--group", "su2", "--beta", "1/4"])
    assert code == 1 and "not a highest weight" in err
    code, _, err = _run(["character", "--group", "sl2r", "--cartan", "compact", "--nu", "0", "--at", "1"])
    assert code == 1
    code, _, err = _run(["open-orbits", "--group", "sl2r", "--cartan", "split"])
    assert code == 1 and "equal-rank" in err
    assert _run(["cartans", "--group", "sl2r", "--cartan", "nope", "--format", "text"])[0] == 0
    assert _run(["bbw", "--group", "sl2r", "--cartan", "nope", "--beta", "0"])[0] == 2


def test_group_spec_file(tmp_path):
    spec = tmp_path / "g.json"
    spec.write_text(json.dumps({"preset": "su21"}))
    assert _run(["open-orbits", "--group", str(spec)])[1] == '{"count": 3}\n'
    assert _run(["catalog", "--group", str(tmp_path / "missing.json")])[0] == 2


def test_check_subcommand_passes():
    code, out, _ = _run(["check", "--quadrature", "1024"])
    rows = json.loads(out)
    assert code == 0 and all(r["passed"] for r in rows)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tempered", "open-orbits", "--group", "sl2r"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == '{"count": 2}\n'
