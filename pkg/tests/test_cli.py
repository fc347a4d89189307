import json
from pathlib import Path

import pytest

from stab_a3.cli import InputError, main, parse_charge, parse_complex, parse_point

INPUTS = Path(__file__).resolve().parents[1] / "inputs"


@pytest.mark.parametrize("text,value", [
    ("1", 1), ("i", 1j), ("-i", -1j), ("2 + 3i", 2 + 3j), ("1e-3-2.5i", 0.001 - 2.5j), ("-4j", -4j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+2ii", "inf", "3i+1"])
def test_parse_complex_rejects(text):
    with pytest.raises(InputError):
        parse_complex(text)


def test_parse_charge_and_point():
    assert tuple(parse_charge("0,1,i")) == (0, 1, 1j)
    with pytest.raises(InputError):
        parse_charge("0,1")
    p = parse_point("A:1,2,1:0,-1,0.5")
    assert p.chart == "A" and p.m == (1.0, 2.0, 1.0)
    with pytest.raises(InputError):
        parse_point("Q:1,1,1:0,0,0")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_exc(capsys):
    code, out, _ = run(capsys, "tables", "exc")
    doc = json.loads(out)
    assert code == 0 and list(doc) == list("ABCDEFGHIJKL")


def test_tables_ineq_row_d(capsys):
    code, out, _ = run(capsys, "tables", "ineq")
    assert "S3<S123-1" in json.loads(out)["D"]


@pytest.mark.parametrize("which", ["exc", "alpha", "ineq"])
def test_tables_diff_agree(capsys, which):
    code, _, err = run(capsys, "tables", which, "--diff")
    assert code == 0 and "tables agree" in err


def test_tables_csv(capsys):
    code, out, _ = run(capsys, "tables", "alpha", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("X,E1,E2,E3,type") and len(lines) == 13


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "--format", "dot")
    assert code == 0
    assert 'A -> B [style=solid, label="R1"]' in out
    assert 'A -> L [style=dotted, label="R2"]' in out
    assert 'I -> I [style=dotted, label="R2 (self-equivalent)"]' in out
    code, out, _ = run(capsys, "graph")
    assert json.loads(out)["loops"] == {"R1": ["K", "L"], "R2": ["I", "J"]}
    assert run(capsys, "graph", "--diff")[0] == 0


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", "--charge", "0, 2+2i, -3+i")
    lifts = {(l["chart"], tuple(l["pvec"])) for l in json.loads(out)["lifts"]}
    assert code == 0 and ("B", (0, -2, -2)) in lifts
    code, out, _ = run(capsys, "lift", "--charge=-2-2i,2+2i,-3+i")
    lifts = {(l["chart"], tuple(l["pvec"])) for l in json.loads(out)["lifts"]}
    assert ("A", (-1, -2, -2)) in lifts and ("C", (0, 0, -2)) in lifts


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "lift", "--charge", "0,0,0")[0] == 2
    assert run(capsys, "lift", "--charge", "x,0,0")[0] == 2
    assert run(capsys, "path", "--file", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[1, 2]]}')
    assert run(capsys, "path", "--file", str(bad))[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "fiber", "--charge", "i,i,i")[0] == 2
    open_path = tmp_path / "open.json"
    open_path.write_text(json.dumps({"points": [[[1, 0], [0, 1], [0, 1]], [[1, 0], [1, 0], [0, 1]]]}))
    assert run(capsys, "monodromy", "--file", str(open_path))[0] == 2


def test_path_crossing_and_plot(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    code, _, _ = run(capsys, "path", "--file", str(INPUTS / "crossing.json"), "--out", str(out_file))
    doc = json.loads(out_file.read_text())
    assert code == 0 and doc["status"] == "Complete" and doc["crossings_verified"]
    assert sum(e["facet"] is not None for e in doc["events"]) == 1
    code, svg, _ = run(capsys, "plot", "--trace", str(out_file))
    assert code == 0 and svg.startswith("<svg") and "A&#8594;I" in svg


def test_path_csv(capsys):
    code, out, _ = run(capsys, "path", "--file", str(INPUTS / "crossing.json"), "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("t,chart")


def test_loop_l6_ends_in_start_fiber(capsys):
    code, out, _ = run(capsys, "path", "--file", str(INPUTS / "loop_L6.json"))
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "Complete" and doc["closed_lift"] is False
    code, out, _ = run(capsys, "monodromy", "--file", str(INPUTS / "loop_L6.json"))
    doc = json.loads(out)
    assert code == 0 and not doc["closed"] and doc["distance"] == pytest.approx(2.0)


def test_path_through_origin(capsys):
    code, out, _ = run(capsys, "path", "--file", str(INPUTS / "through_origin.json"))
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "HitHyperplane" and doc["hit"]["t"] == pytest.approx(0.5)


def test_fiber_command(capsys):
    code, out, _ = run(capsys, "fiber", "--charge", "0.3+0.7i,-0.9+0.2i,-0.4-0.6i", "--window", "0,3")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == len(doc["points"]) > 0


def test_plot_charge(capsys):
    code, out, _ = run(capsys, "plot", "--charge=-2-2i,2+2i,-3+i")
    assert code == 0
    assert ">S3=S123</text>" in out and "(S12=0)" in out
    code, out, _ = run(capsys, "plot", "--charge", "0.3+0.7i,-0.9+0.2i,-0.4-0.6i")
    assert out.count("marker-end") == 6


def test_check_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "exccol")
    assert code == 0 and "16 sequences / 12 classes" in out


def test_outputs_reproducible(capsys):
    a = run(capsys, "check", "--suite", "engine", "--samples", "5", "--seed", "3", "--format", "json")[1]
    b = run(capsys, "check", "--suite", "engine", "--samples", "5", "--seed", "3", "--format", "json")[1]
    assert a == b
    a = run(capsys, "fiber", "--charge", "0.3+0.7i,-0.9+0.2i,-0.4-0.6i")[1]
    b = run(capsys, "fiber", "--charge", "0.3+0.7i,-0.9+0.2i,-0.4-0.6i")[1]
    assert a == b
