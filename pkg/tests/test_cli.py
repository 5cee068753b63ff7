import csv
import io
import json
import os

import numpy as np
import pytest

from kpdist import cli
from kpdist.fredholm import fredholm_det_airy


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_table_gue(capsys):
    code, out = run(["table", "--dist", "gue", "--grid", "-6:6:1"], capsys)
    assert code == 0
    tab = rows(out.out)
    assert tab[0] == ["s", "F", "quality"]
    assert len(tab) == 14
    assert abs(float(tab[-1][1]) - 1) <= 1e-7
    s_neg2 = next(r for r in tab[1:] if float(r[0]) == -2.0)
    assert abs(float(s_neg2[1]) - fredholm_det_airy(-2.0)) <= 1e-8
    assert "\r" not in out.out


def test_table_br_monotone(capsys):
    code, out = run(["table", "--dist", "br", "--tau", "0", "--grid", "-6:6:0.5"], capsys)
    assert code == 0
    tab = rows(out.out)
    assert tab[0] == ["tau", "r", "F_tau", "antideriv", "y", "quality"]
    f = np.array([float(r[2]) for r in tab[1:]])
    assert np.all(np.diff(f) >= 0)


def test_table_flags_out_of_domain(capsys):
    code, out = run(["table", "--dist", "goe", "--grid", "-12:-9:1"], capsys)
    assert code == 0
    quality = [r[2] for r in rows(out.out)[1:]]
    assert quality[:2] == ["extrapolated", "extrapolated"] and quality[-1] == "low-accuracy"


def test_table_json_and_negative_tau(capsys):
    code, out = run(["table", "--dist", "br", "--tau", "-0.5", "--grid", "0:1:0.5",
                     "--format", "json"], capsys)
    assert code == 0
    recs = json.loads(out.out)
    assert len(recs) == 3 and set(recs[0]) == {"tau", "r", "F_tau", "antideriv", "y", "quality"}


def test_table_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["table", "--dist", "br", "--tau", "0.5", "--grid", "-3:3:0.5",
                         "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_float_format_round_trips():
    for v in (0.1, 1 / 3, 2.0 ** -40, 0.9999999999999999):
        assert float(cli._fmt(v)) == v
        assert len(cli._fmt(v).replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17


def test_verify_symbolic(capsys):
    code, out = run(["verify", "symbolic"], capsys)
    rep = json.loads(out.out)
    assert code == 0 and rep["pass"] and rep["suite"] == "symbolic"
    names = {c["name"]: c for c in rep["checks"]}
    assert names["kp-cancellation:remaining-terms"]["value"] == 0
    assert set(rep["checks"][0]) == {"name", "value", "tolerance", "pass"}


def test_verify_goe(capsys):
    code, out = run(["verify", "kp-goe"], capsys)
    rep = json.loads(out.out)
    assert code == 0
    assert max(c["value"] for c in rep["checks"]) <= 1e-6


def test_verify_identities_and_mutation(capsys):
    assert run(["verify", "identities"], capsys)[0] == 0
    code, out = run(["verify", "identities", "--corrupt-b"], capsys)
    assert code == 1 and not json.loads(out.out)["pass"]


def test_crosscheck_default(capsys):
    code, out = run(["crosscheck"], capsys)
    rep = json.loads(out.out)
    assert code == 0
    dev_f, dev_y = (c["value"] for c in rep["checks"])
    assert dev_f <= 1e-8 and dev_y <= 1e-6


@pytest.mark.parametrize("argv", [
    ["table", "--grid", "1:0:1"],
    ["table", "--grid", "0:1:0"],
    ["table", "--grid", "0:1"],
    ["table", "--m", "2000"],
    ["table", "--tol-kp", "-1"],
    ["verify", "nonsense"],
    ["crosscheck", "--w", ""],
    ["crosscheck", "--w", "0.01"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert cli.main(["table", "--grid", "0:1:1", "--out", str(target)]) == 2
    assert "cannot write" in capsys.readouterr().err


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "kpdist", "table", "--grid", "0:1:1"],
                         capture_output=True, text=True, env={**os.environ})
    assert res.returncode == 0 and res.stdout.startswith("s,F,quality")
