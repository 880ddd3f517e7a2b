import csv
import io
import json
import subprocess
import sys

import pytest

from ffnr import cli, render
from ffnr.field import make_field

ELLIPSE = ["--p", "7", "--alpha", "6", "--matrix", "[[1,1],[0,0]]"]
EXCEPTIONAL = ["--p", "7", "--alpha", "6", "--matrix", '[[1,"4+5B"],[0,0]]']


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_range_json(capsys):
    code, out, _ = run(capsys, "range", *ELLIPSE, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["q"] == 7 and data["alpha"] == "6"
    assert len(data["density"]) == data["size"] == 25
    assert sorted({d["count"] for d in data["density"]}) == [8, 16]


def test_range_zero(capsys):
    _, out, _ = run(capsys, "range", "--p", "7", "--alpha", "6", "--matrix", "[[0,0],[0,0]]")
    assert json.loads(out)["density"] == [{"z": {"re": "0", "im": "0"}, "count": 336}]


def test_csv_matches_json(capsys):
    _, js, _ = run(capsys, "range", *ELLIPSE, "--format", "json")
    _, cs, _ = run(capsys, "range", *ELLIPSE, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert len(rows) == 49
    from_csv = {(r["re"], r["im"]): int(r["count"]) for r in rows if int(r["count"])}
    data = json.loads(js)
    from_json = {(d["z"]["re"], d["z"]["im"]): d["count"] for d in data["density"]}
    assert from_csv == from_json
    assert {(r["re"], r["im"]) for r in rows if r["curve"] == "1"} == {(c["re"], c["im"]) for c in data["curve"]}
    assert all(int(r["quotient"]) * 8 == int(r["count"]) for r in rows)


def test_ascii_ellipse_example(capsys):
    _, out, _ = run(capsys, "plot", *ELLIPSE)
    F = make_field(7, alpha=6)
    cells = render.parse_ascii(out, F)
    lines = out.splitlines()
    assert len(lines) == 7 and all(len(l) == 7 for l in lines)
    assert cells[F.embed(0)] == "E" and cells[F.embed(1)] == "E"
    assert sum(ch == "o" for ch in cells.values()) == 8
    # the m = 1 layer is the curve itself, drawn as rings
    assert {ch for ch in cells.values()} - {".", "o", "E"} == {"0", "2", "3"}
    data = render.plot_data(cli.Mat2.of(F, [[1, 1], [0, 0]]))
    assert sorted(set(data.scaling_index.values())) == [0, 1, 2, 3]
    marked = {z for z, ch in cells.items() if ch != "."}
    assert len(marked) == 25


def test_ascii_exceptional_example(capsys):
    _, out, _ = run(capsys, "plot", *EXCEPTIONAL)
    F = make_field(7, alpha=6)
    cells = render.parse_ascii(out, F)
    assert {z for z, ch in cells.items() if ch == "o"} == {F.elem(4, y) for y in range(7)}
    assert all(ch != "." for ch in cells.values())


def test_ascii_zero_matrix(capsys):
    _, out, _ = run(capsys, "plot", "--p", "7", "--alpha", "6", "--matrix", "[[0,0],[0,0]]")
    assert sum(ch != "." for ch in out if ch != "\n") == 1


def test_svg_layers_and_determinism(capsys, tmp_path):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        assert cli.main(["plot", *ELLIPSE, "--format", "svg", "--out", str(p)]) == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b
    text = a.decode()
    assert text.index('id="range"') < text.index('id="curve"') < text.index('id="eigenvalues"')
    rng = text[text.index('id="range"') : text.index('id="curve"')]
    curve = text[text.index('id="curve"') : text.index('id="eigenvalues"')]
    eig = text[text.index('id="eigenvalues"') : text.index('id="legend"')]
    assert rng.count("<rect") == 25 and curve.count("<circle") == 8 and eig.count("<polygon") == 2


def test_curve_command(capsys):
    _, out, _ = run(capsys, "curve", "--p", "7", "--alpha", "6", "--matrix", "[[0,1],[0,0]]")
    data = json.loads(out)
    assert data["count"] == 8 and data["conic"] == "ellipse"
    F = make_field(7, alpha=6)
    for pt in data["points"]:
        x, y = int(pt["re"]), int(pt["im"])
        assert (x * x - 6 * y * y) % 7 == F.inv(4)


def test_curve_with_zeta(capsys):
    _, out, _ = run(capsys, "curve", "--p", "7", "--alpha", "6", "--zeta", "1")
    data = json.loads(out)
    assert sorted(m["size"] for m in data["scaling_family"]) == [1, 8, 8, 8]


def test_canon_command(capsys):
    _, out, _ = run(capsys, "canon", "--p", "7", "--alpha", "6", "--matrix", "[[3,0],[0,3]]")
    data = json.loads(out)
    assert data["class"] == "Zero" and data["tau"] == {"re": "4", "im": "0"}


def test_field_info(capsys):
    _, out, _ = run(capsys, "field-info", "--p", "7")
    data = json.loads(out)
    assert data["alpha"] == "3" and data["q"] == 7
    assert data["squares"] == ["1", "2", "4"] and data["nonsquares"] == 3


def test_verify_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--fields", "4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--fields", "6"])
    assert exc.value.code == 2


def test_bad_inputs_exit_2(capsys):
    assert cli.main(["field-info", "--p", "7", "--alpha", "2"]) == 2
    assert cli.main(["range", "--p", "9"]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["range", "--p", "7", "--matrix", "[[1,2]]"])
    assert exc.value.code == 2
    assert cli.main(["range", "--p", "7", "--matrix", '[["1+X",0],[0,0]]']) == 2


def test_verify_reports_failure_exit_1(tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["verify", "--fields", "3", "--out", str(out)])
    report = json.loads(out.read_text())
    assert code == (0 if report["passed"] else 1)
    assert report["fields"] == [{"alpha": "2", "k": 1, "p": 3, "q": 3}]


def test_max_q_env(monkeypatch):
    monkeypatch.setenv("FFNR_MAX_Q", "5")
    assert cli.main(["field-info", "--p", "7"]) == 2


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "ffnr.cli", "field-info", "--p", "5"], capture_output=True, text=True, check=True
    )
    assert json.loads(res.stdout)["alpha"] == "2"
