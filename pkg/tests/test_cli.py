"""Command-line behaviour: parsing, golden outputs, stats, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from connenum.cli import GraphParseError, main, parse_graph_text
from helpers import GADGET_FILE

GADGET_LINES = {
    "1,2,3,4\t-",
    "1,2,3\t1",
    "1\t1,2,3",
    "1,3\t1,2",
    "1,2\t1,3",
    "4\t3",
}


@pytest.fixture
def gadget_file(tmp_path):
    path = tmp_path / "gadget.graph"
    path.write_text(GADGET_FILE)
    return str(path)


def test_parse_graph_text_roundtrip():
    parsed = parse_graph_text(GADGET_FILE)
    assert parsed.graph.n == 4 and parsed.graph.m == 4
    assert parsed.vertex_ids == [1, 2, 3, 4]
    assert parsed.items[0] == [1, 2, 3]
    assert parsed.q == 3


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("x 1", "unknown line tag"),
        ("v 1\nv 1", "declared twice"),
        ("v 1\ne 1 2", "before declaration"),
        ("v 1\ne 1 1", "self-loop"),
        ("v 1 0", "positive"),
        ("v 1 a,b", "bad item"),
        ("v one", "bad vertex id"),
        ("", "no vertices"),
        ("v 1\ne 1", "edge lines"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphParseError) as err:
        parse_graph_text(text)
    assert fragment in str(err.value)


def test_parse_error_reports_line_number():
    with pytest.raises(GraphParseError) as err:
        parse_graph_text("v 1 1\nv 2 1\ne 1 3\n")
    assert str(err.value).startswith("line 3:")


def test_connectors_gadget_golden(gadget_file, capsys):
    assert main(["connectors", "--mode", "connected", gadget_file]) == 0
    out = capsys.readouterr().out
    assert set(out.splitlines()) == GADGET_LINES
    assert len(out.splitlines()) == 6


def test_connectors_min_size(gadget_file, capsys):
    assert main(["connectors", "--mode", "connected", "--min-size", "3", gadget_file]) == 0
    out = capsys.readouterr().out.splitlines()
    assert set(out) == {"1,2,3,4\t-", "1,2,3\t1"}


def test_connectors_global_k_edge(gadget_file, capsys):
    assert main(["connectors", "--mode", "global-k-edge", "--k", "2", gadget_file]) == 0
    out = capsys.readouterr().out.splitlines()
    assert set(out) == {"1,2,3\t1", "1\t1,2,3", "1,3\t1,2", "1,2\t1,3", "4\t3"}


def test_components_path(tmp_path, capsys):
    path = tmp_path / "p3.graph"
    path.write_text("v 1\nv 2\nv 3\ne 1 2\ne 2 3\n")
    assert main(["components", "--mode", "connected", str(path)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert set(out) == {"1", "2", "3", "1,2", "2,3", "1,2,3"}


def test_components_spanning_cycle(tmp_path, capsys):
    path = tmp_path / "c4.graph"
    path.write_text("v 1\nv 2\nv 3\nv 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n")
    assert main(
        ["components", "--mode", "edge-induced-k-edge", "--k", "2", "--spanning", str(path)]
    ) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["1,2,3,4"]


def test_stats_block_is_json(gadget_file, capsys):
    assert main(["connectors", "--mode", "connected", "--stats", gadget_file]) == 0
    err = capsys.readouterr().err.strip()
    report = json.loads(err)
    assert report["solutions"] == 6
    assert report["max_descendants_gap"] <= 3
    assert {"l1_calls", "l2_calls", "descendants_calls", "oracle_gap_mean", "wall_time_s"} <= set(report)


def test_exit_codes(gadget_file, tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("v 1\ne 1 2\n")
    assert main(["connectors", "--mode", "connected", str(bad)]) == 2
    assert main(["connectors", "--mode", "connected", str(tmp_path / "missing")]) == 2
    # connectors need items somewhere
    plain = tmp_path / "plain.graph"
    plain.write_text("v 1\nv 2\ne 1 2\n")
    assert main(["connectors", "--mode", "connected", str(plain)]) == 2
    # connectors are defined on vertex-ground systems only
    assert main(["connectors", "--mode", "edge-induced-k-edge", "--k", "2", gadget_file]) == 2
    # spanning needs an edge-ground mode
    assert main(["components", "--mode", "connected", "--spanning", gadget_file]) == 2
    # guarded k for vertex modes, unless a budget is given explicitly
    assert main(["components", "--mode", "induced-k-vertex", "--k", "4", gadget_file]) == 2
    assert (
        main(
            [
                "components",
                "--mode",
                "induced-k-vertex",
                "--k",
                "4",
                "--max-core-budget",
                "100000",
                gadget_file,
            ]
        )
        == 0
    )
    capsys.readouterr()


def test_components_k4_matches_brute(tmp_path, capsys):
    path = tmp_path / "k4.graph"
    path.write_text(
        "v 1\nv 2\nv 3\nv 4\n"
        + "".join(f"e {i} {j}\n" for i in range(1, 5) for j in range(i + 1, 5))
    )
    assert main(["components", "--mode", "induced-k-edge", "--k", "2", str(path)]) == 0
    out = set(capsys.readouterr().out.splitlines())

    from connenum import MixedGraph, SystemMode
    from connenum.brute import brute_components, brute_mode_membership

    k4 = MixedGraph.build(4, undirected=[(i, j) for i in range(4) for j in range(i + 1, 4)])
    comps = brute_components(brute_mode_membership(k4, SystemMode("induced-k-edge", 2)), 4)
    want = {",".join(str(v + 1) for v in c) for c in comps}
    assert out == want


def test_core_budget_exhaustion_is_internal_failure(tmp_path, capsys):
    path = tmp_path / "k6.graph"
    path.write_text(
        "".join(f"v {i}\n" for i in range(1, 7))
        + "".join(f"e {i} {j}\n" for i in range(1, 7) for j in range(i + 1, 7))
    )
    code = main(
        [
            "components",
            "--mode",
            "induced-k-vertex",
            "--k",
            "3",
            "--max-core-budget",
            "2",
            str(path),
        ]
    )
    assert code == 1
    assert "budget" in capsys.readouterr().err


def test_selftest_passes(capsys):
    assert main(["selftest", "--seed", "1", "--trials", "8"]) == 0
    out = capsys.readouterr().out
    assert "0 failures" in out


def test_selftest_rejects_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("v 1\nz 9\n")
    assert main(["selftest", str(bad)]) == 2
    capsys.readouterr()


def test_selftest_flow_mode(capsys):
    assert main(["selftest", "--seed", "3", "--trials", "4", "--mode", "induced-k-edge", "--k", "2"]) == 0
    capsys.readouterr()


def _write_copies(path, copies: int) -> None:
    lines = []
    for c in range(copies):
        base = 4 * c
        for i, items in enumerate(["1,2,3", "1,3", "1,2", "3"]):
            lines.append(f"v {base + i + 1} {items}")
        for u, v in [(1, 2), (1, 3), (2, 3), (3, 4)]:
            lines.append(f"e {base + u} {base + v}")
    path.write_text("\n".join(lines))


def test_output_is_deterministic(tmp_path):
    path = tmp_path / "multi.graph"
    _write_copies(path, 30)
    runs = [
        subprocess.run(
            [sys.executable, "-m", "connenum.cli", "connectors", "--mode", "connected", str(path)],
            capture_output=True,
            check=True,
        ).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert runs[0].count(b"\n") == 180


def test_first_line_streams_before_completion(tmp_path):
    path = tmp_path / "huge.graph"
    _write_copies(path, 12000)
    proc = subprocess.Popen(
        [sys.executable, "-m", "connenum.cli", "connectors", "--mode", "connected", str(path)],
        stdout=subprocess.PIPE,
    )
    try:
        first = proc.stdout.readline()
        assert first.endswith(b"\n") and b"\t" in first
        assert proc.poll() is None, "enumeration had already finished"
    finally:
        proc.kill()
        proc.wait()
