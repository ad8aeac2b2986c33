import random
import subprocess
import sys

import pytest

from dynst.errors import ConfigError, EngineError, ParamError, ParseError, SequenceError
from dynst.graph import dump_graph, load_graph
from dynst.harness.cli import main
from dynst.harness.generate import generate_instance, random_trace
from dynst.harness.report import VERSION, parse_csv, to_csv
from dynst.harness.runner import RunConfig, bounds, run_scenario
from dynst.harness.trace import Op, parse_trace, serialize_trace


# -- traces --------------------------------------------------------------


def test_parse_one_op():
    assert parse_trace('{"op":"add","v":3}') == [Op("add", 3)]


@pytest.mark.parametrize("text", [
    "not json",
    '{"op":"add"}',
    '{"op":"flip","v":1}',
    '{"op":"add","v":-1}',
    '{"op":"add","v":true}',
    '{"op":"add","v":1,"x":2}',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_trace(text)


def test_vertex_range_checked():
    with pytest.raises(ParseError):
        parse_trace('{"op":"add","v":5}', n=5)


def test_sequence_errors():
    with pytest.raises(SequenceError):
        parse_trace('{"op":"remove","v":1}')
    with pytest.raises(SequenceError):
        parse_trace('{"op":"add","v":1}\n{"op":"add","v":1}')


def test_thousand_line_roundtrip():
    trace = random_trace(50, 1000, 0.55, random.Random(0))
    assert len(trace) == 1000
    text = serialize_trace(trace)
    assert serialize_trace(parse_trace(text)) == text


# -- generators ----------------------------------------------------------


@pytest.mark.parametrize("kind", ["gnm", "grid", "geometric"])
def test_generated_graphs_are_connected_and_valid(kind):
    g, trace = generate_instance(kind, 25, seed=3, ops=40)
    assert g.is_connected()
    assert load_graph(dump_graph(g)) == g
    parse_trace(serialize_trace(trace), g.n)


def test_gnm_deterministic_per_seed():
    a = generate_instance("gnm", 10, 9, seed=1, ops=20)
    b = generate_instance("gnm", 10, 9, seed=1, ops=20)
    assert a[0] == b[0] and a[1] == b[1]
    assert a[0].m == 9


def test_adds_only_mix():
    _, trace = generate_instance("gnm", 20, seed=2, ops=50, mix=1.0)
    assert all(o.op == "add" for o in trace) and len(trace) == 20


def test_param_errors():
    with pytest.raises(ParamError):
        generate_instance("torus", 10)
    with pytest.raises(ParamError):
        generate_instance("gnm", 0)
    with pytest.raises(ParamError):
        generate_instance("gnm", 10, ops=5, mix=1.5)
    with pytest.raises(ParamError):
        generate_instance("gnm", 10, m=3)


# -- runner --------------------------------------------------------------


def instance(n=30, ops=100, seed=0, mix=0.6):
    return generate_instance("gnm", n, 3 * n, seed=seed, ops=ops, mix=mix)


def test_config_errors():
    g, trace = instance(10, 10)
    for cfg in [RunConfig(engine="x"), RunConfig(baseline="y"), RunConfig(backend="bunch:0"),
                RunConfig(eps=0.0), RunConfig(engine="iw", differential=True), RunConfig(l=0)]:
        with pytest.raises(ConfigError):
            run_scenario(g, trace, cfg)


def test_fd_mst2_ratios_within_bound():
    g, trace = instance()
    report = run_scenario(g, trace, RunConfig(engine="fd", baseline="mst2"))
    assert report.ok and len(report.rows) == len(trace)
    limit = bounds(RunConfig(engine="fd"), 1.0)["mst2"]
    assert limit == pytest.approx(1.25 * 1.25)
    assert all(r["ratio"] <= limit * (1 + 1e-9) for r in report.rows if r["ratio"] is not None)


def test_emulator_exact_baseline():
    g, trace = instance(30, 60, seed=1, mix=0.7)
    # keep at most six terminals
    live, cut = set(), []
    for o in trace:
        if (o.op == "add" and len(live) == 6) or (o.op == "remove" and o.v not in live):
            continue
        (live.add if o.op == "add" else live.discard)(o.v)
        cut.append(o)
    report = run_scenario(g, cut, RunConfig(engine="emu", baseline="exact", l=2))
    assert report.ok
    assert all(r["ratio"] <= 12 for r in report.rows if r["ratio"] is not None)


def test_differential_costs_identical():
    g, trace = instance(30, 80, seed=2)
    report = run_scenario(g, trace, RunConfig(engine="fd", differential=True))
    assert report.ok
    assert all(r["ref_cost"] == r["cost"] for r in report.rows)


def test_ref_engine_runs_alone():
    g, trace = instance(20, 40, seed=3)
    a = run_scenario(g, trace, RunConfig(engine="ref", scheme="fd"))
    b = run_scenario(g, trace, RunConfig(engine="fd"))
    assert [r["cost"] for r in a.rows] == [r["cost"] for r in b.rows]


def test_dec_uses_leading_adds():
    g, _ = instance(20, 0)
    trace = [Op("add", v) for v in range(6)] + [Op("remove", v) for v in (0, 3, 5)]
    report = run_scenario(g, trace, RunConfig(engine="dec", differential=True))
    assert report.ok
    assert report.rows[-1]["terminals"] == 3
    with pytest.raises(EngineError):
        run_scenario(g, trace + [Op("add", 0)], RunConfig(engine="dec"))


def test_inc_rejects_remove():
    g, _ = instance(20, 0)
    with pytest.raises(EngineError, match="op 1"):
        run_scenario(g, [Op("add", 1), Op("remove", 1)], RunConfig(engine="inc"))


def test_exact_baseline_disables_above_twelve():
    g, _ = instance(30, 0)
    trace = [Op("add", v) for v in range(14)]
    report = run_scenario(g, trace, RunConfig(engine="iw", baseline="exact"))
    assert report.warnings and report.warnings[0][0] == 12
    assert report.rows[-1]["baseline"] is None
    assert report.rows[11]["status"] == "pass"


def test_failure_row_names_index_and_costs():
    g, trace = instance(30, 20, seed=4, mix=1.0)
    report = run_scenario(g, trace, RunConfig(engine="iw", baseline="mst2"))
    assert report.ok
    report.failures.append("op 3: cost 5.0 exceeds 1.0 x baseline 2.0")
    assert "failure,op 3: cost 5.0 exceeds" in to_csv(report)


def test_summary_fields():
    g, trace = instance(25, 50, seed=5)
    report = run_scenario(g, trace, RunConfig(engine="fd", backend="tz3", baseline="mst2"))
    s = report.summary
    assert s["ops"] == 50 and s["failures"] == 0
    assert s["max_ratio"] >= s["median_ratio"] >= 1.0 - 1e-9
    assert s["h_edges"] >= 0


# -- report --------------------------------------------------------------


def test_csv_is_deterministic_and_parses():
    g, trace = instance(25, 60, seed=6)
    cfg = RunConfig(engine="fd", backend="tz3", baseline="mst2", seed=3)
    a = to_csv(run_scenario(g, trace, cfg))
    b = to_csv(run_scenario(g, trace, RunConfig(engine="fd", backend="tz3", baseline="mst2", seed=3)))
    assert a == b
    assert a.startswith(VERSION + ",index,op,v,terminals,cost")
    rows, summary = parse_csv(a)
    assert len(rows) == 60 and summary["failures"] == "0"
    with pytest.raises(ValueError):
        parse_csv("x,y\n")


def test_timing_column_only_on_request():
    g, trace = instance(15, 10, seed=7)
    assert "wall_ms" not in to_csv(run_scenario(g, trace, RunConfig()))
    assert "wall_ms" in to_csv(run_scenario(g, trace, RunConfig(timing=True)))


# -- cli -----------------------------------------------------------------


def test_cli_gen_run_verify(tmp_path, capsys):
    gp, tp, out = tmp_path / "g.txt", tmp_path / "t.jsonl", tmp_path / "r.csv"
    assert main(["gen", "--kind", "gnm", "--n", "20", "--m", "50", "--ops", "40",
                 "--seed", "1", "--out-graph", str(gp), "--out-trace", str(tp)]) == 0
    assert main(["run", "--graph", str(gp), "--trace", str(tp), "--engine", "fd",
                 "--backend", "tz3", "--baseline", "mst2", "--out", str(out)]) == 0
    rows, summary = parse_csv(out.read_text())
    assert len(rows) == 40 and summary["failures"] == "0"
    assert main(["verify-oracle", "--graph", str(gp), "--backend", "tz3", "--seeds", "2"]) == 0
    assert "pass: 0 violations over 2 seeds" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path):
    gp, tp = tmp_path / "g.txt", tmp_path / "t.jsonl"
    main(["gen", "--n", "10", "--ops", "10", "--out-graph", str(gp), "--out-trace", str(tp)])
    assert main(["run", "--graph", str(gp), "--trace", str(tp), "--backend", "nope"]) == 2
    assert main(["run", "--graph", str(tmp_path / "missing"), "--trace", str(tp)]) == 2
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"op":"remove","v":1}\n')
    assert main(["run", "--graph", str(gp), "--trace", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["run"])
    assert exc.value.code == 2
    inc = tmp_path / "inc.jsonl"
    inc.write_text('{"op":"add","v":1}\n{"op":"remove","v":1}\n')
    assert main(["run", "--graph", str(gp), "--trace", str(inc), "--engine", "inc"]) == 1


def test_module_entry_point(tmp_path):
    gp, tp = tmp_path / "g.txt", tmp_path / "t.jsonl"
    main(["gen", "--n", "12", "--ops", "8", "--mix", "1.0", "--out-graph", str(gp), "--out-trace", str(tp)])
    res = subprocess.run([sys.executable, "-m", "dynst.harness.cli", "run", "--graph", str(gp),
                          "--trace", str(tp), "--engine", "iw"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith(VERSION)
