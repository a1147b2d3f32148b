import io
import json

import pytest

from kgeodetic.cli import main
from kgeodetic.formats import LEFT_CAGE, emit_digraph, parse_digraph


def _stdin(monkeypatch, text):
    monkeypatch.setattr("sys.stdin", io.StringIO(text))


def test_cages_pipe_into_check(capsys, monkeypatch):
    assert main(["cages", "--emit", "left"]) == 0
    text = capsys.readouterr().out
    assert parse_digraph(text) == LEFT_CAGE
    _stdin(monkeypatch, text)
    assert main(["check", "-", "-d", "2", "-k", "2"]) == 0
    out = capsys.readouterr().out
    assert "excess=2\n" in out and "geodetic=true\n" in out


def test_check_json(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("n 3\n0: 1\n1: 2\n2: 0\n")
    assert main(["check", str(f), "-d", "1", "-k", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["moore"]["excess"] == 0 and doc["moore"]["geodetic"] is True


def test_search_two_cages(tmp_path, capsys):
    assert main(["search", "-d", "2", "-k", "2", "-e", "2", "--diregular", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "result_count=2\n" in out and "complete=true\n" in out
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["result_0000.txt", "result_0001.txt", "summary.json"]
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["result_count"] == 2 and summary["complete"] is True
    for name in files[:2]:
        assert parse_digraph((tmp_path / name).read_text()).n == 9


def test_search_budget_exit(tmp_path, capsys):
    assert main(["search", "-d", "2", "-k", "3", "-e", "0", "--max-nodes", "10", "--out", str(tmp_path)]) == 3
    assert "complete=false" in capsys.readouterr().out
    assert json.loads((tmp_path / "summary.json").read_text())["complete"] is False


def test_parse_error_exit(monkeypatch, capsys):
    _stdin(monkeypatch, "n 2\n0: 0 1\n1: 0\n")
    assert main(["check", "-", "-d", "1", "-k", "1"]) == 2
    assert "line 2: loop" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["check"],
        ["search", "-d", "2"],
        ["search", "-d", "0", "-k", "2", "-e", "0"],
        ["check", "/nonexistent/file", "-d", "2", "-k", "2"],
        ["check", "-", "-d", "0", "-k", "2"],
        ["export", "-", "--format", "svg"],
    ],
)
def test_usage_errors(argv, monkeypatch, capsys):
    _stdin(monkeypatch, emit_digraph(LEFT_CAGE))
    assert main(argv) == 1


def test_audit_exit_codes(tmp_path, capsys):
    f = tmp_path / "left.txt"
    f.write_text(emit_digraph(LEFT_CAGE))
    assert main(["audit", str(f), "-d", "2", "-k", "2"]) == 0
    assert "audits: holds=" in capsys.readouterr().out
    # pair (0, 1) has out-degree 2 while the minimum is 1
    f.write_text("n 6\n0: 2 3\n1: 2 3\n2: 4\n3: 5\n4: 0\n5: 1\n")
    assert main(["audit", str(f), "-d", "1", "-k", "2", "--json"]) == 4
    doc = json.loads(capsys.readouterr().out)
    assert doc["audit_summary"]["fails"] >= 1


def test_export_dot(tmp_path, monkeypatch, capsys):
    _stdin(monkeypatch, "n 3\n0: 1\n1: 2\n2: 0\n")
    assert main(["export", "-", "--format", "dot"]) == 0
    assert capsys.readouterr().out.count("->") == 3
    target = tmp_path / "left.dot"
    _stdin(monkeypatch, emit_digraph(LEFT_CAGE))
    assert main(["export", "-", "--format", "dot", "-o", str(target)]) == 0
    assert target.read_text().count("->") == 18


def test_corrupt_checkpoint_exit(tmp_path, capsys):
    ckpt = tmp_path / "c.json"
    ckpt.write_text("[]")
    assert main(["search", "-d", "2", "-k", "2", "-e", "2", "--checkpoint", str(ckpt)]) == 2
