import csv

import pytest

from ctvd import cli
from ctvd.io import load_instance, parse_trace, serialize_instance
from ctvd.kernelizer import KernelEngine
from support import cycle_graph, paw_graph
from ctvd.graph import Instance


def write_instance(path, instance):
    path.write_text(serialize_instance(instance))


def test_kernelize_command_writes_kernel_and_trace(tmp_path):
    src = tmp_path / "in.ctvd"
    out = tmp_path / "out.ctvd"
    trace = tmp_path / "run.trace"
    write_instance(src, Instance(cycle_graph(4), 0))
    assert cli.main(["kernelize", str(src), str(out), str(trace)]) == 0
    kernel = load_instance(out)
    assert kernel.graph.vertex_count == 4 and kernel.k == 0  # canonical reject
    doc = parse_trace(trace.read_text())
    assert doc.status == "no-instance"


def test_kernelize_command_parse_error(tmp_path, capsys):
    src = tmp_path / "in.ctvd"
    src.write_text("not a document\n")
    out = tmp_path / "out.ctvd"
    trace = tmp_path / "run.trace"
    assert cli.main(["kernelize", str(src), str(out), str(trace)]) == 2
    assert "error:" in capsys.readouterr().err


def test_kernelize_missing_file_is_io_error(tmp_path):
    assert (
        cli.main(
            [
                "kernelize",
                str(tmp_path / "absent.ctvd"),
                str(tmp_path / "out.ctvd"),
                str(tmp_path / "run.trace"),
            ]
        )
        == 2
    )


def test_solve_exact_yes_and_no(tmp_path, capsys):
    src = tmp_path / "paw.ctvd"
    write_instance(src, Instance(paw_graph(), 1))
    assert cli.main(["solve", str(src), "--exact"]) == 0
    out = capsys.readouterr().out
    assert "YES" in out and "witness:" in out

    two = cycle_graph(4)
    more = two.add_vertices(4)
    for i in range(4):
        two.add_edge(more[i], more[(i + 1) % 4])
    src2 = tmp_path / "two.ctvd"
    write_instance(src2, Instance(two, 1))
    assert cli.main(["solve", str(src2), "--exact"]) == 1
    assert "NO" in capsys.readouterr().out


def test_solve_empty_graph(tmp_path, capsys):
    src = tmp_path / "empty.ctvd"
    src.write_text("ctvd 0 0 0\n")
    assert cli.main(["solve", str(src), "--exact"]) == 0
    assert "YES" in capsys.readouterr().out


def test_solve_approx_modes(tmp_path, capsys):
    src = tmp_path / "c4.ctvd"
    write_instance(src, Instance(cycle_graph(4), 4))
    assert cli.main(["solve", str(src), "--approx"]) == 0
    out = capsys.readouterr().out
    assert "modulator" in out and "YES" in out
    write_instance(src, Instance(cycle_graph(4), 0))
    assert cli.main(["solve", str(src), "--approx"]) == 1


def test_verify_campaign_passes(capsys):
    assert cli.main(["verify", "--count", "40", "--max-n", "10", "--max-k", "3"]) == 0
    assert "40/40 passed" in capsys.readouterr().out


def test_verify_zero_count_vacuous(capsys):
    assert cli.main(["verify", "--count", "0"]) == 0
    assert "0/0 passed" in capsys.readouterr().out


def test_verify_detects_corrupted_rule(monkeypatch, capsys):
    # sabotage the isolated-component rule so it charges the budget for a
    # deletion that should be free
    def corrupted(self):
        for comp in self._rest_components():
            touches = any(
                self.graph.multiplicity(u, z) >= 1 for u in comp for z in self.s
            )
            if not touches:
                k_before = self.k
                self.graph.delete_vertices(comp)
                self.k -= 1
                return self._record(
                    "isolated-component",
                    k_before,
                    [("vertices", ",".join(str(v) for v in sorted(comp)))],
                )
        return None

    monkeypatch.setattr(KernelEngine, "apply_isolated_component", corrupted)
    code = cli.main(
        ["verify", "--count", "60", "--max-n", "12", "--max-k", "3", "--seed", "2"]
    )
    captured = capsys.readouterr()
    assert code == 1
    assert "mismatch" in captured.err
    # the failing instance is serialized for triage
    assert "ctvd " in captured.err


def test_gen_deterministic_and_empty(tmp_path):
    out1 = tmp_path / "a.ctvd"
    out2 = tmp_path / "b.ctvd"
    args = ["gen", "--cliques", "3", "--trees", "3", "--noise-vertices", "2", "--k", "2", "--seed", "9"]
    assert cli.main(args + [str(out1)]) == 0
    assert cli.main(args + [str(out2)]) == 0
    assert out1.read_text() == out2.read_text()

    empty = tmp_path / "empty.ctvd"
    assert cli.main(["gen", str(empty)]) == 0
    assert empty.read_text() == "ctvd 0 0 0\n"


def test_gen_planted_within_budget(tmp_path):
    from ctvd.solvers import brute_force

    out = tmp_path / "p.ctvd"
    assert (
        cli.main(
            [
                "gen",
                "--cliques",
                "3",
                "--trees",
                "3",
                "--noise-vertices",
                "2",
                "--k",
                "2",
                "--seed",
                "4",
                str(out),
            ]
        )
        == 0
    )
    inst = load_instance(out)
    res = brute_force(inst.graph, inst.k)
    assert res.feasible and res.optimum <= 2


def test_stats_writes_rows_and_figure(tmp_path):
    target = tmp_path / "table.csv"
    assert (
        cli.main(
            ["stats", "--k-range", "1..2", "--reps", "3", "--seed", "5", str(target)]
        )
        == 0
    )
    with open(target, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6
    assert list(rows[0]) == ["k", "input_n", "kernel_n", "bound", "rules_fired"]
    for row in rows:
        assert int(row["kernel_n"]) <= int(row["bound"])
    assert (tmp_path / "table.png").exists()


def test_stats_single_row(tmp_path):
    target = tmp_path / "one.csv"
    assert (
        cli.main(["stats", "--k-range", "1..1", "--reps", "1", str(target)]) == 0
    )
    with open(target, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1


def test_stats_empty_range_header_only(tmp_path):
    target = tmp_path / "empty.csv"
    assert (
        cli.main(["stats", "--k-range", "3..2", "--reps", "5", str(target)]) == 0
    )
    assert target.read_text().strip() == "k,input_n,kernel_n,bound,rules_fired"
    assert not (tmp_path / "empty.png").exists()


def test_stats_bad_range(tmp_path, capsys):
    assert cli.main(["stats", "--k-range", "x", str(tmp_path / "t.csv")]) == 2
    assert "k-range" in capsys.readouterr().err


def test_same_seed_same_verify_output(capsys):
    assert cli.main(["verify", "--count", "15", "--seed", "8"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["verify", "--count", "15", "--seed", "8"]) == 0
    assert capsys.readouterr().out == first
