import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from eppa.cli import run

GOLDEN = Path(__file__).parent / "golden"

FILES = {
    "path.txt": "graph 3\n0 1\n1 2\n",
    "edge.txt": "graph 2\n0 1\n",
    "empty2.txt": "graph 2\n",
    "swap.txt": "map 2\n0 2\n2 0\n",
    "ident2.txt": "map 2\n0 0\n1 1\n",
    "pin.txt": "map 1\n0 0\nswitch 0\n",
    "quad.txt": "antipodal 4\n3 1 2\n2 1\n3\n",
    "quadmap.txt": "map 2\n0 1\n1 0\n",
    "odd.txt": "antipodal 3\n1 2\n3\n",
    "tg.txt": "twograph 4\n0 1 2\n0 1 3\n",
    "badtg.txt": "twograph 4\n0 1 2\n",
    "tgmap.txt": "map 2\n2 3\n3 2\n",
    "edges3.txt": "map 2\n0 1\n1 0\n",
}


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    for name, text in FILES.items():
        (tmp_path / name).write_text(text)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _golden(name, argv, capsys, code=0):
    assert run(["--json", *argv]) == code
    out = json.loads(capsys.readouterr().out)
    path = GOLDEN / f"{name}.json"
    if os.environ.get("EPPA_REGEN_GOLDEN"):
        path.write_text(json.dumps(out, sort_keys=True, indent=1) + "\n")
    assert out == json.loads(path.read_text())
    return out


def test_switch(workdir, capsys):
    assert run(["switch", "path.txt", "--set", "1"]) == 0
    assert capsys.readouterr().out == "graph 3\n"


def test_two_graph_of(workdir, capsys):
    _golden("two_graph_of", ["two-graph-of", "path.txt"], capsys)


def test_find_switch(workdir, capsys):
    out = _golden("find_switch", ["find-switch", "edge.txt", "empty2.txt", "ident2.txt"], capsys)
    assert out["switch_set"] == [1]


def test_double_cover_and_pode_graph(workdir, capsys):
    out = _golden("double_cover", ["double-cover", "edge.txt"], capsys)
    assert out["antipodal"] == FILES["quad.txt"]
    assert run(["pode-graph", "quad.txt"]) == 0
    assert capsys.readouterr().out.startswith("graph 2\n0 1\n")
    assert run(["pode-graph", "quad.txt", "--pode", "0", "0", "1", "1"]) == 2
    assert "share a pode" in capsys.readouterr().err


def test_two_graph_of_antipodal_and_back(workdir, capsys):
    assert run(["two-graph-of-antipodal", "quad.txt"]) == 0
    assert capsys.readouterr().out == "twograph 2\n"
    assert run(["graph-of-two-graph", "tg.txt", "--base", "0"]) == 0
    assert capsys.readouterr().out == "graph 4\n1 2\n1 3\n"
    assert run(["graph-of-two-graph", "tg.txt", "--base", "9"]) == 2


def test_lift(workdir, capsys):
    out = _golden("lift", ["lift", "quad.txt", "quad.txt", "edges3.txt"], capsys)
    assert sorted(x for x, _ in out["map"]) == [0, 1, 2, 3]


def test_lift_unliftable(workdir, capsys):
    Path("hexagon.txt").write_text("antipodal 6\n3 2 1 2 1\n1 2 1 2\n3 2 1\n1 2\n3\n")
    Path("triangles.txt").write_text("antipodal 6\n3 1 2 1 2\n2 1 2 1\n3 1 2\n2 1\n3\n")
    Path("id3.txt").write_text("map 3\n0 0\n1 1\n2 2\n")
    assert run(["--json", "lift", "hexagon.txt", "triangles.txt", "id3.txt"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["unliftable"] and out["cycle"]


def test_witness_commands(workdir, capsys):
    out = _golden("witness_build", ["witness", "build", "quad.txt"], capsys)
    assert out["size"] == 8 and out["provenance"]["command"] == "eppa --json witness build quad.txt"
    assert run(["witness", "distance", "quad.txt", "0", "00", "1", "00"]) == 0
    assert capsys.readouterr().out == "1\n"
    assert run(["witness", "distance", "quad.txt", "0", "01", "1", "00"]) == 0
    assert capsys.readouterr().out == "2\n"
    assert run(["witness", "distance", "quad.txt", "0", "0", "1", "00"]) == 2
    _golden("witness_extend", ["witness", "extend", "quad.txt", "quadmap.txt", "--materialize"], capsys)
    assert run(["witness", "verify", "quad.txt", "--exhaustive"]) == 0
    assert "0 failures" in capsys.readouterr().out
    assert run(["witness", "verify", "quad.txt", "--samples", "30"]) == 0


def test_witness_build_rejects_odd_point_file(workdir, capsys):
    assert run(["witness", "build", "odd.txt"]) == 2
    err = capsys.readouterr().err
    assert "matching" in err


def test_materialize_limit_flag(workdir, capsys):
    assert run(["witness", "extend", "quad.txt", "quadmap.txt", "--materialize", "--materialize-limit", "1"]) == 2
    assert "limit" in capsys.readouterr().err


def test_eppa_and_extend(workdir, capsys):
    out = _golden("eppa_graph", ["eppa", "graph", "path.txt"], capsys)
    assert out["h_order"] == 12
    assert run(["eppa", "graph", "path.txt", "-o", "cert.txt"]) == 0
    capsys.readouterr()
    assert Path("cert.txt").read_text().startswith("eppa-cert v1\n")
    _golden("extend_plain", ["extend", "--cert", "cert.txt", "--map", "swap.txt"], capsys)
    out = _golden("extend_switching", ["extend", "--cert", "cert.txt", "--map", "pin.txt"], capsys)
    assert out["source_switch_set"] == [0] and out["switch_set"]
    assert run(["extend", "--cert", "cert.txt", "--map", "ident2.txt", "--switch", "1"]) == 2


def test_eppa_two_graph(workdir, capsys):
    assert run(["eppa", "two-graph", "tg.txt", "-o", "tcert.txt"]) == 0
    capsys.readouterr()
    _golden("extend_two_graph", ["extend", "--cert", "tcert.txt", "--map", "tgmap.txt"], capsys)
    assert run(["eppa", "two-graph", "badtg.txt"]) == 2


def test_validate(workdir, capsys):
    assert run(["validate", "quad.txt"]) == 0
    assert run(["--json", "validate", "badtg.txt"]) == 1
    out = capsys.readouterr().out
    assert '"parity"' in out


def test_apa_demo_json(workdir, capsys):
    out = _golden("apa_demo", ["apa-demo"], capsys)
    assert out["amalgam_exists"] and not out["apa_extension_exists"]


def test_oracle_commands(workdir, capsys):
    out = _golden("enumerate_twograph_4", ["oracle", "enumerate", "twograph", "4"], capsys)
    assert out["count"] == 8
    assert run(["oracle", "verify-eppa", "antipodal", "4"]) == 0
    assert run(["oracle", "verify-eppa", "graph", "3"]) == 0
    assert run(["oracle", "verify-eppa", "twograph", "3"]) == 0
    assert run(["oracle", "verify-coherence", "4"]) == 0
    assert run(["oracle", "enumerate", "twograph", "9"]) == 2


def test_usage_errors(workdir, capsys):
    assert run([]) == 2
    assert run(["no-such-command"]) == 2
    assert run(["switch", "missing.txt"]) == 2
    Path("junk.txt").write_text("graph 3\n0 x\n")
    assert run(["switch", "junk.txt"]) == 2
    assert "line 2, column 3" in capsys.readouterr().err


def test_help_lists_every_command(capsys):
    assert run(["--help"]) == 0
    text = capsys.readouterr().out
    for cmd in ["switch", "two-graph-of", "find-switch", "double-cover", "pode-graph",
                "two-graph-of-antipodal", "graph-of-two-graph", "lift", "witness", "eppa",
                "extend", "apa-demo", "oracle"]:
        assert cmd in text


def test_module_entry_point(workdir):
    proc = subprocess.run([sys.executable, "-m", "eppa", "two-graph-of", "path.txt"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "twograph 3\n"
