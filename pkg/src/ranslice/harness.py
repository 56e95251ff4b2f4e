"""Experiment sweeps, report emission and the statistics the trend checks use.

Every trial at a sweep point generates one instance from a child seed of
``(base seed, axis, point, trial)`` and runs all selected algorithms on it,
so algorithms are compared on identical instances. Each plan is validated
before it is aggregated.

With ``pair_points`` set, the point is left out of the seed, so trial ``t``
uses the same seed at every point. Combined with the generator's separate
substrate and slice streams, this makes comparisons across points paired
as well: a substrate-degree sweep sees the same slices at every degree.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .flat import EmbeddingState, FlatInstance, flatten
from .generator import GeneratorConfig, InfeasibleConfig, generate
from .group_heuristics import run_gba, run_gcba
from .heuristics import run_cba, run_rba
from .model import validate_plan
from .oracle import OracleBudget, run_exact

log = logging.getLogger(__name__)

HEURISTICS = ("rba", "cba", "gcba", "gba")
COLUMNS = ("axis", "point", "algorithm", "trials", "mean_embedded", "min_embedded",
           "max_embedded", "mean_remaining_resources", "mean_ms")


def _exact(flat: FlatInstance, backend=None) -> EmbeddingState:
    state, _, _ = run_exact(flat, OracleBudget(), backend)
    return state


ALGORITHMS: dict[str, Callable[..., EmbeddingState]] = {
    "rba": run_rba,
    "cba": run_cba,
    "gcba": run_gcba,
    "gba": run_gba,
    "exact": _exact,
}


class Axis(Enum):
    SUBSTRATE_NODES = "substrate_nodes"
    VNF_COUNT = "vnf_count"
    SUBSTRATE_DEGREE = "substrate_degree"
    VNF_DEGREE = "vnf_degree"


_AXIS_CODE = {a: i for i, a in enumerate(Axis)}


def apply_axis(base: GeneratorConfig, axis: Axis, point: int) -> GeneratorConfig:
    if axis is Axis.SUBSTRATE_NODES:
        return base.replace(n_substrate=(point, point))
    if axis is Axis.VNF_COUNT:
        return base.replace(total_vnfs=point)
    if axis is Axis.SUBSTRATE_DEGREE:
        return base.replace(substrate_degree=point)
    return base.replace(vnf_degree=point)


def child_seed(base_seed: int, axis: Axis, point: int, trial: int) -> int:
    words = np.random.SeedSequence([base_seed, _AXIS_CODE[axis], point, trial]).generate_state(2)
    return int(words[0]) | (int(words[1]) << 32)


@dataclass(frozen=True)
class SweepSpec:
    axis: Axis
    points: tuple[int, ...]
    trials_per_point: int = 30
    base: GeneratorConfig = field(default_factory=GeneratorConfig)
    algorithms: tuple[str, ...] = HEURISTICS
    timing_repeats: int = 5
    pair_points: bool = False

    def __post_init__(self):
        if not self.points or list(self.points) != sorted(set(self.points)):
            raise ValueError("points must be non-empty and strictly ascending")
        if self.trials_per_point < 1 or self.timing_repeats < 1:
            raise ValueError("trials_per_point and timing_repeats must be >= 1")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")
        if "exact" in self.algorithms:
            budget = OracleBudget()
            for p in self.points:
                cfg = apply_axis(self.base, self.axis, p)
                most = cfg.total_vnfs or cfg.n_slices[1] * cfg.vnfs_per_slice[1]
                if not budget.admits(most, cfg.n_substrate[1]):
                    raise ValueError(f"'exact' needs instances within {budget}; point {p} "
                                     f"allows {most} VNFs on {cfg.n_substrate[1]} nodes")

    def trial_seed(self, point: int, trial: int) -> int:
        return child_seed(self.base.seed, self.axis, 0 if self.pair_points else point, trial)

    def to_dict(self) -> dict:
        return {"axis": self.axis.value, "points": list(self.points),
                "trials_per_point": self.trials_per_point, "base": self.base.to_dict(),
                "algorithms": list(self.algorithms), "timing_repeats": self.timing_repeats,
                "pair_points": self.pair_points}

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        return cls(axis=Axis(d["axis"]), points=tuple(int(p) for p in d["points"]),
                   trials_per_point=int(d.get("trials_per_point", 30)),
                   base=GeneratorConfig.from_dict(d.get("base", {})),
                   algorithms=tuple(d.get("algorithms", HEURISTICS)),
                   timing_repeats=int(d.get("timing_repeats", 5)),
                   pair_points=bool(d.get("pair_points", False)))


@dataclass(frozen=True)
class TrialRecord:
    point: int
    trial: int
    seed: int
    algorithm: str
    embedded: int
    remaining: int
    ms: float


@dataclass(frozen=True)
class ReportRow:
    axis: str
    point: int
    algorithm: str
    trials: int
    mean_embedded: float
    min_embedded: int
    max_embedded: int
    mean_remaining_resources: float
    mean_ms: float


@dataclass
class SweepResult:
    axis: str
    rows: list[ReportRow] = field(default_factory=list)
    trials: list[TrialRecord] = field(default_factory=list)
    skipped: dict[int, str] = field(default_factory=dict)

    def counts(self, algorithm: str, point: int | None = None) -> list[int]:
        """Embedded counts ordered by (point, trial)."""
        return [r.embedded for r in self.trials
                if r.algorithm == algorithm and (point is None or r.point == point)]


def timed(fn: Callable[[], EmbeddingState], repeats: int) -> tuple[EmbeddingState, float]:
    """Run ``fn`` ``repeats`` times; return the first result and the median ms."""
    times, first = [], None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append((time.perf_counter() - t0) * 1e3)
        first = first or out
    return first, statistics.median(times)


def evaluate(inst, flat: FlatInstance, algorithm: str, repeats: int = 1):
    """Solve, validate and measure one algorithm on one instance.

    Returns ``(embedded, remaining_resources, ms)``.
    """
    state, ms = timed(lambda: ALGORITHMS[algorithm](flat), repeats)
    plan = state.plan()
    report = validate_plan(inst.substrate, inst.slices, plan)
    if not report.ok:
        raise RuntimeError(f"{algorithm} produced an infeasible plan:\n{report}")
    # recomputed from the instance, independently of the solver's residuals
    remaining = inst.substrate.total_capacity() - sum(inst.slices.demand(u) for u in plan.assignments)
    if remaining != int(state.node_res.sum()):
        raise RuntimeError(f"{algorithm}: residual bookkeeping disagrees with the plan")
    return len(plan), remaining, ms


def run_trial(spec: SweepSpec, point: int, trial: int) -> list[TrialRecord]:
    seed = spec.trial_seed(point, trial)
    inst = generate(apply_axis(spec.base, spec.axis, point).replace(seed=seed))
    flat = flatten(inst)
    out = []
    for alg in spec.algorithms:
        embedded, remaining, ms = evaluate(inst, flat, alg, spec.timing_repeats)
        out.append(TrialRecord(point, trial, seed, alg, embedded, remaining, ms))
    return out


def _run_point(args) -> tuple[int, list[TrialRecord] | str]:
    spec, point = args
    try:
        apply_axis(spec.base, spec.axis, point)
        records = []
        for trial in range(spec.trials_per_point):
            records.extend(run_trial(spec, point, trial))
        return point, records
    except InfeasibleConfig as exc:
        return point, str(exc)


def default_jobs() -> int:
    return max(1, int(os.environ.get("RANSLICE_JOBS", "1")))


def run_sweep(spec: SweepSpec, jobs: int | None = None) -> SweepResult:
    jobs = jobs or default_jobs()
    tasks = [(spec, p) for p in spec.points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_point, tasks))
    else:
        outcomes = [_run_point(t) for t in tasks]
    result = SweepResult(spec.axis.value)
    for point, outcome in sorted(outcomes, key=lambda o: o[0]):
        if isinstance(outcome, str):
            log.warning("skipping point %s: %s", point, outcome)
            result.skipped[point] = outcome
        else:
            result.trials.extend(outcome)
    result.trials.sort(key=lambda r: (r.point, r.trial, spec.algorithms.index(r.algorithm)))
    result.rows = aggregate(spec.axis.value, result.trials, spec.algorithms)
    return result


def aggregate(axis: str, trials: Sequence[TrialRecord],
              algorithms: Sequence[str]) -> list[ReportRow]:
    groups: dict[tuple[int, str], list[TrialRecord]] = {}
    for r in trials:
        groups.setdefault((r.point, r.algorithm), []).append(r)
    rows = []
    for (point, alg) in sorted(groups, key=lambda k: (k[0], list(algorithms).index(k[1]))):
        rs = groups[(point, alg)]
        counts = [r.embedded for r in rs]
        rows.append(ReportRow(
            axis=axis, point=point, algorithm=alg, trials=len(rs),
            mean_embedded=statistics.fmean(counts), min_embedded=min(counts),
            max_embedded=max(counts),
            mean_remaining_resources=statistics.fmean(r.remaining for r in rs),
            mean_ms=statistics.fmean(r.ms for r in rs)))
    return rows


def emit_report(result: SweepResult, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in result.rows:
            w.writerow([r.axis, r.point, r.algorithm, r.trials, f"{r.mean_embedded:.4f}",
                        r.min_embedded, r.max_embedded, f"{r.mean_remaining_resources:.4f}",
                        f"{r.mean_ms:.4f}"])
        return buf.getvalue()
    if fmt == "json":
        doc = {"axis": result.axis,
               "rows": [asdict(r) for r in result.rows],
               "trials": [asdict(t) for t in result.trials],
               "skipped": {str(k): v for k, v in sorted(result.skipped.items())}}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def load_report(text: str) -> SweepResult:
    doc = json.loads(text)
    return SweepResult(axis=doc["axis"],
                       rows=[ReportRow(**r) for r in doc["rows"]],
                       trials=[TrialRecord(**t) for t in doc.get("trials", [])],
                       skipped={int(k): v for k, v in doc.get("skipped", {}).items()})


def sign_test(a: Sequence[float], b: Sequence[float]) -> tuple[int, int, float]:
    """One-sided paired sign test of ``a > b``; ties are dropped.

    Returns ``(wins, losses, p_value)``.
    """
    from scipy.stats import binomtest

    wins = sum(x > y for x, y in zip(a, b, strict=True))
    losses = sum(x < y for x, y in zip(a, b))
    if wins + losses == 0:
        return 0, 0, 1.0
    return wins, losses, float(binomtest(wins, wins + losses, 0.5, alternative="greater").pvalue)


def scaling_ratios(points: Sequence[int] = (160, 200, 240), trials: int = 10,
                   numerator: str = "gba", denominator: str = "rba", repeats: int = 5,
                   base: GeneratorConfig | None = None, seed: int = 0) -> dict[int, float]:
    """Median over matched instances of time(numerator) / time(denominator).

    Trial ``t`` uses the same seed at every point, so only the VNF total
    changes between points; substrate and slice count stay fixed.
    """
    base = base or GeneratorConfig()
    out = {}
    for p in points:
        ratios = []
        for t in range(trials):
            inst = generate(base.replace(seed=child_seed(seed, Axis.VNF_COUNT, 0, t), total_vnfs=p))
            flat = flatten(inst)
            _, num = timed(lambda: ALGORITHMS[numerator](flat), repeats)
            _, den = timed(lambda: ALGORITHMS[denominator](flat), repeats)
            ratios.append(num / den)
        out[p] = statistics.median(ratios)
    return out
