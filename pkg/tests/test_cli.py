import io
import json
import shutil
from pathlib import Path

import pytest

from confspace import cli
from confspace.cli import main

GRAPHS = Path(__file__).resolve().parents[1] / "demos" / "graphs"


@pytest.fixture
def graphs(tmp_path):
    for p in GRAPHS.iterdir():
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_validate(capsys, graphs):
    code, out, _ = run(capsys, "graph", "validate", graphs / "y.graph")
    assert code == 0
    assert out.splitlines() == ["vertices 4", "edges 3", "essential c x y z", "branched c"]


def test_graph_subdivide(capsys, graphs):
    code, out, _ = run(capsys, "graph", "subdivide", "-m", "3", graphs / "lollipop.graph")
    assert code == 0
    assert out.count("\ne ") + out.startswith("e ") == 6


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("v a\ne s a nowhere\n")
    code, _, err = run(capsys, "graph", "validate", bad)
    assert code == 1 and "line 2" in err


def test_missing_file_exit(capsys, tmp_path):
    code, _, err = run(capsys, "graph", "validate", tmp_path / "none.graph")
    assert code == 1 and err.startswith("error:")


def test_check_fails_on_lollipop(capsys, graphs):
    code, out, _ = run(capsys, "check", "-n", "2", graphs / "lollipop.graph")
    assert code == 4
    assert "cycle length 1 < 3" in out


def test_check_auto_subdivide(capsys, graphs):
    code, out, _ = run(capsys, "check", "-n", "2", "--auto-subdivide", graphs / "lollipop.graph")
    assert code == 0 and "3 segments" in out


def test_build_requires_override(capsys, graphs):
    code, _, err = run(capsys, "build", "--model", "abrams", "-n", "2", graphs / "lollipop.graph")
    assert code == 2
    code, out, err = run(capsys, "build", "--model", "abrams", "-n", "2", "--override-check",
                         graphs / "lollipop.graph")
    assert code == 0 and "not be faithful" in err
    assert out.startswith("complex n=2 graph=lollipop")


def test_build_then_homology(capsys, graphs, tmp_path):
    out_file = tmp_path / "dx.cx"
    code, _, _ = run(capsys, "build", "--model", "abrams", "-n", "2", "-o", out_file, graphs / "x.graph")
    assert code == 0
    code, out, _ = run(capsys, "homology", out_file)
    assert out.splitlines() == ["H0 = Z^1", "H1 = Z^5"]
    code, out, _ = run(capsys, "homology", "--machine", out_file)
    assert out.splitlines() == ["0 1", "1 5"]
    code, out, _ = run(capsys, "euler", out_file)
    assert out.strip() == "-4"


def test_file_pipeline_matches_direct(capsys, graphs, tmp_path):
    for model in ("abrams", "abrams-u", "swiatkowski"):
        out_file = tmp_path / f"{model}.cx"
        run(capsys, "build", "--model", model, "-n", "2", "-o", out_file, graphs / "x.graph")
        _, via_file, _ = run(capsys, "homology", out_file)
        _, direct, _ = run(capsys, "homology", "--model", model, "-n", "2", graphs / "x.graph")
        assert via_file == direct


def test_stdin_pipeline(capsys, graphs, monkeypatch):
    _, cx, _ = run(capsys, "build", "--model", "abrams", "-n", "2", graphs / "y.graph")
    monkeypatch.setattr("sys.stdin", io.StringIO(cx))
    code, out, _ = run(capsys, "homology")
    assert code == 0 and out.splitlines() == ["H0 = Z^1", "H1 = Z^1"]


def test_homology_of_empty_complex_prints_nothing(capsys, graphs):
    code, out, _ = run(capsys, "homology", "--model", "abrams", "-n", "3", graphs / "interval.graph")
    assert code == 0 and out == ""


def test_graph_input_needs_model(capsys, graphs):
    code, _, err = run(capsys, "homology", graphs / "y.graph")
    assert code == 1 and "--model" in err


def test_nonk_auto_subdivide(capsys, graphs):
    code, out, _ = run(capsys, "homology", "--model", "nonk", "-n", "3", "-k", "3", "--auto-subdivide",
                       graphs / "y.graph")
    assert code == 0
    assert out.splitlines()[:3] == ["H0 = Z^1", "H1 = Z^0", "H2 = Z^5"]


def test_nonk_escalate(capsys, graphs):
    code, out, err = run(capsys, "homology", "--model", "nonk", "-n", "3", "-k", "3", "--escalate",
                         graphs / "interval.graph")
    assert code == 0
    assert out.splitlines()[:2] == ["H0 = Z^1", "H1 = Z^1"]
    assert "# escalation segments=3" in err and "segments=6" in err


def test_escalate_rejected_for_abrams(capsys, graphs):
    code, _, _ = run(capsys, "build", "--model", "abrams", "-n", "2", "--escalate", graphs / "y.graph")
    assert code == 2


def test_cell_limit(capsys, graphs, monkeypatch):
    monkeypatch.setattr(cli, "CELL_LIMIT", 10)
    code, _, err = run(capsys, "build", "--model", "abrams", "-n", "2", graphs / "y.graph")
    assert code == 2 and "--force" in err
    code, _, _ = run(capsys, "build", "--model", "abrams", "-n", "2", "--force", graphs / "y.graph")
    assert code == 0


def test_boundary_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.cx"
    bad.write_text("complex n=1 graph=g\ncell 0 a\ncell 1 e\ncell 2 f\nbnd 1 0 0 1\nbnd 2 0 0 1\n")
    code, _, err = run(capsys, "homology", bad)
    assert code == 3 and "internal error" in err


def test_collapse(capsys, graphs, tmp_path):
    out_file = tmp_path / "d.cx"
    run(capsys, "build", "--model", "abrams", "-n", "2", "--auto-subdivide", "-o", out_file, graphs / "y.graph")
    code, collapsed, err = run(capsys, "collapse", out_file)
    assert code == 0 and "# collapsed" in err
    small = tmp_path / "small.cx"
    small.write_text(collapsed)
    _, a, _ = run(capsys, "homology", out_file)
    _, b, _ = run(capsys, "homology", small)
    assert b.splitlines() == a.splitlines()[: len(b.splitlines())]


def test_induced(capsys, graphs):
    code, out, _ = run(capsys, "induced", "--embedding", graphs / "y_in_x.gm", "--model", "abrams", "-n", "2",
                       graphs / "y.graph", graphs / "x.graph")
    assert code == 0
    lines = out.splitlines()
    i = lines.index("H1: 5x1")
    assert any(int(v) for v in " ".join(lines[i + 1:i + 6]).split())


def test_induced_bad_embedding(capsys, graphs, tmp_path):
    gm = tmp_path / "bad.gm"
    gm.write_text("gm v c c\ngm v x n\ngm v y n\ngm v z s\ngm e cx cn\ngm e cy ce\ngm e cz cs\n")
    code, _, _ = run(capsys, "induced", "--embedding", gm, "--model", "abrams", "-n", "2",
                     graphs / "y.graph", graphs / "x.graph")
    assert code == 2


@pytest.mark.parametrize("argv, expected", [
    (["braid", "reduce", "s1", "s2", "S2", "s3"], "s1 s3"),
    (["braid", "perm", "s1", "s2", "S1", "S2"], "(1 3 2)"),
    (["braid", "pure", "s1", "s1", "--strands", "3"], "true"),
    (["braid", "sum", "s1", "s1"], "2"),
    (["braid", "move", "s1", "s2", "s1", "--position", "0", "--kind", "braid"], "s2 s1 s2"),
])
def test_braid(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_braid_errors(capsys):
    assert run(capsys, "braid", "move", "s1", "s2")[0] == 1
    assert run(capsys, "braid", "perm", "q1")[0] == 1


def test_plane(capsys):
    code, out, _ = run(capsys, "plane", "fwd", "3", "4", "0", "0")
    vals = [float(v) for v in out.split()]
    assert vals[:2] == [3.0, 4.0] and vals[3:] == pytest.approx([0.6, 0.8])
    code, out, _ = run(capsys, "plane", "inv", *out.split())
    assert [float(v) for v in out.split()] == pytest.approx([3.0, 4.0, 0.0, 0.0], abs=1e-12)
    assert run(capsys, "plane", "fwd", "1", "1", "1", "1")[0] == 1
    assert run(capsys, "plane", "fwd", "1", "2")[0] == 1


def test_determinism(capsys, graphs, tmp_path):
    outs = []
    for i in range(2):
        cx, mf = tmp_path / f"run{i}.cx", tmp_path / f"run{i}.json"
        argv = ["build", "--model", "swiatkowski", "-n", "2", "-o", cx, "--manifest", mf, graphs / "x.graph"]
        assert run(capsys, *argv)[0] == 0
        manifest = json.loads(mf.read_text())
        assert manifest.pop("wall_time") >= 0
        outs.append((cx.read_bytes(), manifest))
    assert outs[0][0] == outs[1][0]
    m0, m1 = outs[0][1], outs[1][1]
    m0["command"] = m1["command"] = None
    assert m0 == m1
    assert m0["cell_counts"] == [28, 32]
    assert m0["model"]["kind"] == "swiatkowski"


def test_homology_manifest(capsys, graphs, tmp_path):
    mf = tmp_path / "h.json"
    run(capsys, "homology", "--model", "abrams", "-n", "2", "--manifest", mf, graphs / "y.graph")
    m = json.loads(mf.read_text())
    assert m["homology"] == ["H0 = Z^1", "H1 = Z^1"]
    assert m["cell_counts"] == [12, 12]
    assert len(m["inputs"][str(graphs / "y.graph")]) == 64
