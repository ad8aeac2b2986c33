"""Drive an engine over a trace and compare its trees against baselines."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from dynst.emulator import EmulatorSteiner, build_emulator
from dynst.errors import ConfigError, DynstError, EngineError
from dynst.graph import MAX_EXACT_TERMINALS, WeightedGraph, exact_steiner_cost, mst
from dynst.harness.trace import Op
from dynst.oracle.general import build_bunch_oracle, build_tz3
from dynst.oracle.generic import GenericOracle, NearMetricView, exact_oracle
from dynst.schemes import ReferenceDecremental, ReferenceFullyDynamic, ReferenceIncremental, eta_for
from dynst.steiner.decremental import DecrementalEngine
from dynst.steiner.fully import FullyDynamicEngine
from dynst.steiner.incremental import IncrementalEngine
from dynst.steiner.levels import LevelIndex
from dynst.steiner.query import OnlineGreedyEngine, query_steiner

ENGINES = ("dec", "inc", "fd", "emu", "iw", "ref")
SCHEMES = ("dec", "inc", "fd")
BASELINES = ("none", "mst2", "exact")
REL_TOL = 1e-9


@dataclass
class RunConfig:
    engine: str = "fd"
    backend: str = "exact"
    eps: float = 0.25
    tau: float = 0.25
    l: int = 2
    seed: int = 0
    baseline: str = "none"
    scheme: str = "fd"
    msf: str = "dynamic"
    differential: bool = False
    timing: bool = False

    def validate(self) -> None:
        if self.engine not in ENGINES:
            raise ConfigError(f"unknown engine {self.engine!r}")
        if self.baseline not in BASELINES:
            raise ConfigError(f"unknown baseline {self.baseline!r}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        if not (self.eps > 0 and self.tau > 0):
            raise ConfigError("eps and tau must be positive")
        if self.l < 1:
            raise ConfigError("l must be at least 1")
        if self.msf not in ("dynamic", "kruskal"):
            raise ConfigError(f"unknown msf engine {self.msf!r}")
        if self.differential and self.engine not in SCHEMES:
            raise ConfigError("differential runs need engine dec, inc or fd")
        parse_backend(self.backend)


@dataclass
class RunReport:
    config: RunConfig
    rows: list[dict] = field(default_factory=list)
    warnings: list[tuple[int, str]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def parse_backend(spec: str) -> tuple[str, int]:
    if spec in ("exact", "tz3"):
        return spec, 0
    if spec.startswith("bunch:"):
        try:
            l = int(spec.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad backend {spec!r}") from None
        if l >= 1:
            return "bunch", l
    raise ConfigError(f"unknown backend {spec!r}")


def build_oracle(g: WeightedGraph, spec: str, seed: int) -> GenericOracle:
    kind, l = parse_backend(spec)
    if kind == "exact":
        return exact_oracle(g)
    if kind == "tz3":
        return build_tz3(g, seed)
    return build_bunch_oracle(g, l, seed)


def _scheme_of(cfg: RunConfig) -> str:
    return cfg.scheme if cfg.engine == "ref" else cfg.engine


def bounds(cfg: RunConfig, alpha: float) -> dict[str, float | None]:
    """Declared ratio bounds against the mst2 and exact baselines."""
    eta = eta_for(cfg.eps)
    slack = eta / (eta - 1.0)
    tau = cfg.tau
    kind = _scheme_of(cfg)
    if kind == "dec":
        return {"mst2": slack, "exact": 2.0 * alpha * slack}
    if kind == "inc":
        mu = alpha * (1.0 + tau / 2.0)
        return {"mst2": 1.0 + tau, "exact": 2.0 * mu * (1.0 + tau)}
    if kind == "fd":
        return {"mst2": slack * (1.0 + tau), "exact": 2.0 * (1.0 + tau) * slack * alpha * (1.0 + tau)}
    if kind == "emu":
        return {"mst2": 2.0, "exact": 4.0 * (2 * cfg.l - 1)}
    return {"mst2": None, "exact": None}


def iw_bound(r: int, alpha: float) -> float:
    """Online greedy envelope: 2 ceil(log2 r) times OPT, stretched by alpha."""
    return 2.0 * max(1, math.ceil(math.log2(max(r, 2)))) * alpha


class _Driver:
    """Uniform add/remove/cost surface over every engine kind."""

    def __init__(self, g: WeightedGraph, trace: list[Op], cfg: RunConfig):
        self.cfg = cfg
        self.g = g
        kind = _scheme_of(cfg)
        self.kind = kind
        self.engine = None
        self.ref = None
        self.prefix: list[int] = []
        self.view = None
        if kind == "emu":
            self.oracle = None
            self.emulator = build_emulator(g, cfg.l, cfg.seed)
            self.alpha = self.emulator.alpha
            self.engine = EmulatorSteiner(self.emulator, msf=cfg.msf, seed=cfg.seed)
            return
        self.oracle = build_oracle(g, cfg.backend, cfg.seed)
        self.alpha = self.oracle.alpha
        if kind == "dec":
            self.view = NearMetricView(self.oracle)
            for op in trace:
                if op.op != "add":
                    break
                self.prefix.append(op.v)
        elif kind == "inc":
            self.view = NearMetricView(self.oracle, cfg.tau / 2.0)
        elif kind == "fd":
            self.view = NearMetricView(self.oracle, cfg.tau)
        else:
            self.view = NearMetricView(self.oracle)
        use_ref = cfg.engine == "ref" or cfg.differential
        use_engine = cfg.engine != "ref"
        if kind == "iw":
            self.engine = OnlineGreedyEngine(self.oracle)
        elif kind == "inc":
            if use_engine:
                self.engine = IncrementalEngine(g, self.oracle, cfg.tau)
            if use_ref:
                lv = LevelIndex.for_graph(g, 1.0 + cfg.tau / 2.0, self.oracle.alpha)
                self.ref = ReferenceIncremental(NearMetricView(self.oracle, cfg.tau / 2.0), cfg.tau, lv)
        elif kind == "fd":
            if use_engine:
                self.engine = FullyDynamicEngine(g, self.oracle, cfg.tau, cfg.eps, msf=cfg.msf, seed=cfg.seed)
            if use_ref:
                self.ref = ReferenceFullyDynamic(NearMetricView(self.oracle, cfg.tau), cfg.tau, cfg.eps)
        self._dec_started = False
        self._use_ref = use_ref
        self._use_engine = use_engine

    # dec engines start from the leading additions
    def _start_dec(self) -> None:
        cfg = self.cfg
        if self._use_engine:
            self.engine = DecrementalEngine(self.g, self.oracle, self.prefix, cfg.eps, msf=cfg.msf, seed=cfg.seed)
        if self._use_ref:
            self.ref = ReferenceDecremental(NearMetricView(self.oracle), self.prefix, cfg.eps)
        self._dec_started = True

    def apply(self, index: int, op: Op) -> None:
        kind = self.kind
        if kind == "dec":
            if op.op == "add":
                if self._dec_started:
                    raise EngineError(f"op {index}: the decremental engine cannot add {op.v}")
                if index == len(self.prefix) - 1:
                    self._start_dec()
                return
            if not self._dec_started:
                self._start_dec()
        if op.op == "remove" and kind in ("inc", "iw"):
            raise EngineError(f"op {index}: engine {kind} cannot remove {op.v}")
        for target in (self.engine, self.ref):
            if target is not None:
                getattr(target, op.op)(op.v)

    def _cost_of(self, target, terminals: set[int]) -> float:
        if self.kind == "dec" and not self._dec_started:
            return query_steiner(self.oracle, terminals, self.view).cost if terminals else 0.0
        return target.cost()

    def cost(self, terminals: set[int]) -> float:
        return self._cost_of(self.engine if self.engine is not None else self.ref, terminals)

    def ref_cost(self, terminals: set[int]) -> float | None:
        if not self.cfg.differential:
            return None
        return self._cost_of(self.ref, terminals)

    def counters(self) -> tuple[int, int]:
        e = self.engine if self.engine is not None else self.ref
        if e is None:
            return 0, 0
        if self.kind == "emu":
            return 0, e.edge_ops
        return e.replacements, getattr(e, "oracle_ops", 0)

    def mst2(self, terminals: set[int]) -> float:
        s = sorted(terminals)
        if len(s) < 2:
            return 0.0
        if self.kind == "emu":
            return mst(s, self.emulator.distance).cost
        return mst(s, self.view.d).cost


def run_scenario(g: WeightedGraph, trace: list[Op], cfg: RunConfig) -> RunReport:
    cfg.validate()
    report = RunReport(cfg)
    drv = _Driver(g, trace, cfg)
    limits = bounds(cfg, drv.alpha)
    terminals: set[int] = set()
    exact_on = cfg.baseline == "exact"
    prev_rep, prev_ops = 0, 0
    ratios = []
    for i, op in enumerate(trace):
        t0 = time.perf_counter()
        try:
            drv.apply(i, op)
        except EngineError:
            raise
        except DynstError as exc:
            raise EngineError(f"op {i} ({op.op} {op.v}): {exc}") from exc
        wall = time.perf_counter() - t0
        if op.op == "add":
            terminals.add(op.v)
        else:
            terminals.discard(op.v)
        cost = drv.cost(terminals)
        reps, ops = drv.counters()
        row = {
            "index": i, "op": op.op, "v": op.v, "terminals": len(terminals), "cost": cost,
            "replacements": reps - prev_rep, "oracle_ops": ops - prev_ops,
            "baseline": None, "ratio": None, "bound": None, "status": "",
        }
        prev_rep, prev_ops = reps, ops
        base = None
        bound = None
        if cfg.baseline == "mst2":
            base = drv.mst2(terminals)
            bound = limits["mst2"]
        elif exact_on:
            if len(terminals) > MAX_EXACT_TERMINALS:
                exact_on = False
                report.warnings.append((i, f"exact baseline disabled: {len(terminals)} terminals exceed {MAX_EXACT_TERMINALS}"))
            else:
                base = exact_steiner_cost(g, terminals) if len(terminals) > 1 else 0.0
                bound = iw_bound(len(terminals), drv.alpha) if drv.kind == "iw" else limits["exact"]
        if base is not None:
            row["baseline"] = base
            row["bound"] = bound
            ratio = cost / base if base > 0 else (1.0 if cost == 0 else math.inf)
            row["ratio"] = ratio
            ratios.append(ratio)
            if bound is not None:
                ok = cost <= bound * base * (1.0 + REL_TOL) + REL_TOL
                row["status"] = "pass" if ok else "FAIL"
                if not ok:
                    report.failures.append(f"op {i}: cost {cost!r} exceeds {bound!r} x baseline {base!r}")
        ref = drv.ref_cost(terminals)
        if ref is not None:
            row["ref_cost"] = ref
            if ref != cost:
                row["status"] = "FAIL"
                report.failures.append(f"op {i}: engine cost {cost!r} differs from reference cost {ref!r}")
        if cfg.timing:
            row["wall_ms"] = wall * 1000.0
        report.rows.append(row)
    reps, ops = drv.counters()
    report.summary = {
        "ops": len(trace),
        "final_cost": report.rows[-1]["cost"] if report.rows else 0.0,
        "max_ratio": max(ratios) if ratios else None,
        "median_ratio": sorted(ratios)[len(ratios) // 2] if ratios else None,
        "replacements": reps,
        "oracle_ops": ops,
        "failures": len(report.failures),
    }
    if drv.kind in ("dec", "fd") and drv.engine is not None and hasattr(drv.engine, "aux"):
        report.summary["h_edges"] = len(drv.engine.aux.kind)
    return report
