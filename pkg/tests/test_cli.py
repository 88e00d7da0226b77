from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from affine_tl.cli import run


def call(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "argv,code,text",
    [
        (("fc-check", "--rank", "2", "1 2 1"), 0, "FC\n"),
        (("fc-check", "--rank", "3", "2 3 2"), 1, "not-FC (bond-3 braid)\n"),
        (("fc-check", "--rank", "2", "1 2 1 2"), 1, "not-FC (bond-4 braid)\n"),
        (("normalize", "--rank", "3", "3 1"), 0, "1 3\n"),
        (("normalize", "--rank", "5", "s3*s2*s1*s2*s5*s4*s6*s5"), 0, "3 5 2 4 6 1 5 2\n"),
        (("mul", "--rank", "2", "1 2 1 2"), 0, "2 * b[1 2]\n"),
        (("classify", "--rank", "2", "1 3 2"), 0, "type-II [1 3 2]\n"),
    ],
)
def test_commands(argv, code, text):
    assert call(*argv) == (code, text)


def test_mul_json():
    code, text = call("mul", "--rank", "2", "1 2", "2 1", "--format", "json")
    obj = json.loads(text)
    assert code == 0 and obj == {"rank": 2, "terms": [{"coeff": [0, 1], "word": [1, 2, 1]}]}


def test_theta_json_then_admissible_and_render(tmp_path):
    code, text = call("theta", "--rank", "2", "1 2 3 2 1", "--format", "json")
    assert code == 0
    path = tmp_path / "d.json"
    path.write_text(text)
    assert call("admissible", str(path))[0] == 0
    code, svg = call("render", str(path), "--format", "svg")
    assert code == 0 and "<svg" in svg
    code, back = call("render", str(path), "--format", "json")
    assert json.loads(back) == json.loads(text)


def test_admissible_rejects_bad_diagram(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rank": 2, "edges": [
        {"ends": ["t1", "b1"]}, {"ends": ["t2", "b2"]}, {"ends": ["t3", "b3"]}, {"ends": ["t4", "b4"]}],
        "loops": [[]]}))
    code, text = call("admissible", str(path))
    assert code == 1 and "C1" in text


def test_heap_ascii():
    code, text = call("heap", "--rank", "5", "3 2 1 2 5 4 6 5")
    assert code == 0 and len(text.splitlines()) == 5


def test_enumerate_count():
    code, text = call("enumerate", "--rank", "2", "-L", "2", "--count")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "e" and lines[-1] == "# 9 elements"


def test_verify_text():
    code, text = call("verify", "--rank", "2", "-L", "5")
    assert code == 0 and "round-trip: checked" in text and "failures" not in text


@pytest.mark.parametrize(
    "argv",
    [("fc-check", "--rank", "2", "1 4"), ("normalize", "--rank", "2", "1 2 1 2"), ("classify", "--rank", "2", "1 2 1 2")],
)
def test_domain_errors_exit_one(argv):
    code, text = call(*argv)
    assert code == 1


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        run(["fc-check", "--rank", "1", "1"], io.StringIO())
    assert exc.value.code == 2


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "affine_tl.cli", "mul", "--rank", "2", "1 2 1 2"], capture_output=True, text=True
    )
    assert res.returncode == 0 and res.stdout == "2 * b[1 2]\n"
