"""Monte Carlo estimation of arrow probabilities and threshold sweeps.

A trial generates one model graph from a seed derived purely from
``(master_seed, n, trial_index)`` — independent of p, so trials at different
edge probabilities are coupled through the generator's nested-graph property
and the empirical arrow probability is monotone in p run by run.  Unknown
verdicts (budget exhausted) are tallied separately and never folded into
either side.

Results persist as CSV (one row per evaluated (n, p) point) plus a JSON
manifest carrying the full configuration and package version; identical
configuration and master seed reproduce identical bytes.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .arrowing import ARROWS, NOT_ARROWS, UNKNOWN, ArrowVerdict, Budget, arrows_edge, arrows_vertex
from .generators import Probability, derive_seed, gnp, parse_probability, perturbed
from .graphcore import ContractViolation

MODELS = ("perturbed-bipartite", "gnp")
MODES = ("edge-symmetric", "edge-asymmetric", "vertex")

#: Per-trial wall-clock defaults, keyed by clique size.
DEFAULT_BUDGET_MS = {3: 2_000.0, 4: 10_000.0}
FALLBACK_BUDGET_MS = 10_000.0

WORKERS_ENV = "PERTURBED_RAMSEY_WORKERS"

WILSON_Z = 1.959963984540054  # two-sided 95%


class DegenerateEstimate(RuntimeError):
    """Every trial came back unknown; no probability estimate exists."""


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    r: int
    n: int
    p: Probability
    trials: int
    master_seed: int
    mode: str = "edge-symmetric"
    s: Optional[int] = None
    t: Optional[int] = None
    budget_ms: Optional[float] = None
    budget_nodes: Optional[int] = None

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ContractViolation(f"unknown model {self.model!r}")
        if self.mode not in MODES:
            raise ContractViolation(f"unknown mode {self.mode!r}")
        if self.mode == "edge-asymmetric" and (self.s is None or self.t is None):
            raise ContractViolation("asymmetric mode needs explicit s and t")
        if self.trials < 1:
            raise ContractViolation("at least one trial required")
        if self.r < 2:
            raise ContractViolation("clique size must be at least 2")

    def budget(self) -> Budget:
        ms = self.budget_ms
        if ms is None:
            ms = DEFAULT_BUDGET_MS.get(self.r, FALLBACK_BUDGET_MS)
        return Budget(max_nodes=self.budget_nodes, max_ms=ms)

    def to_json(self) -> dict:
        p = parse_probability(self.p)
        return {
            "model": self.model,
            "r": self.r,
            "n": self.n,
            "p": str(p) if isinstance(p, Fraction) else p,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "mode": self.mode,
            "s": self.s,
            "t": self.t,
            "budget_ms": self.budget_ms,
            "budget_nodes": self.budget_nodes,
        }


@dataclass(frozen=True)
class TrialRecord:
    index: int
    verdict: str
    m_seed: int
    m_random: int
    elapsed_ms: float = field(compare=False)


@dataclass(frozen=True)
class EstimateResult:
    phat: float
    arrows: int
    not_arrows: int
    unknown: int
    ci_lo: float
    ci_hi: float
    records: tuple[TrialRecord, ...]

    @property
    def trials(self) -> int:
        return self.arrows + self.not_arrows + self.unknown


@dataclass(frozen=True)
class SweepPoint:
    p: float
    trials: int
    arrows: int
    not_arrows: int
    unknown: int
    phat: float
    ci_lo: float
    ci_hi: float
    valid: bool


@dataclass(frozen=True)
class SweepCurve:
    n: int
    points: tuple[SweepPoint, ...]
    p_half: Optional[float]
    crossed: bool
    bracket: Optional[tuple[float, float]]
    valid: bool
    monotone_warning: bool


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    residual: float


@dataclass(frozen=True)
class SweepResult:
    curves: tuple[SweepCurve, ...]
    fit: Optional[ExponentFit]


def wilson_interval(successes: int, n: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson score 95% interval; behaves sensibly at small counts."""
    if n == 0:
        return 0.0, 1.0
    phat = successes / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / n + z * z / (4 * n * n)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _trial(cfg: ExperimentConfig, index: int) -> TrialRecord:
    trial_seed = derive_seed(derive_seed(cfg.master_seed, cfg.n), index)
    if cfg.model == "perturbed-bipartite":
        pg = perturbed("complete-bipartite", cfg.n, cfg.p, trial_seed)
        g = pg.graph
        m_seed, m_random = len(pg.seed_edges), len(pg.random_edges)
    else:
        g = gnp(cfg.n, cfg.p, trial_seed)
        m_seed, m_random = 0, g.m
    budget = cfg.budget()
    if cfg.mode == "vertex":
        verdict: ArrowVerdict = arrows_vertex(g, cfg.r, budget)
    elif cfg.mode == "edge-asymmetric":
        verdict = arrows_edge(g, cfg.s, cfg.t, budget)
    else:
        verdict = arrows_edge(g, cfg.r, cfg.r, budget)
    return TrialRecord(index, verdict.kind, m_seed, m_random, verdict.elapsed_ms)


def _trial_star(args: tuple[ExperimentConfig, int]) -> TrialRecord:
    return _trial(*args)


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_trials(cfg: ExperimentConfig) -> tuple[TrialRecord, ...]:
    """All trial records for a config, merged in trial-index order."""
    workers = _worker_count()
    if workers == 1:
        return tuple(_trial(cfg, i) for i in range(cfg.trials))
    args = [(cfg, i) for i in range(cfg.trials)]
    chunk = max(1, cfg.trials // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(_trial_star, args, chunksize=chunk))
    records.sort(key=lambda rec: rec.index)
    return tuple(records)


def estimate_arrow_probability(cfg: ExperimentConfig) -> EstimateResult:
    """Seeded Monte Carlo estimate of the arrow probability at (n, p).

    ``phat`` conditions on decided trials; the unknown count is reported
    separately.  Raises :class:`DegenerateEstimate` if no trial decided.
    """
    records = run_trials(cfg)
    arrows = sum(1 for rec in records if rec.verdict == ARROWS)
    nots = sum(1 for rec in records if rec.verdict == NOT_ARROWS)
    unknown = sum(1 for rec in records if rec.verdict == UNKNOWN)
    decided = arrows + nots
    if decided == 0:
        raise DegenerateEstimate("every trial exhausted its budget")
    phat = arrows / decided
    lo, hi = wilson_interval(arrows, decided)
    return EstimateResult(phat, arrows, nots, unknown, lo, hi, records)


#: A sweep point is usable only if the undecided fraction stays below this.
MAX_UNKNOWN_FRACTION = 0.05

#: Width of the target band around 1/2 accepted for the crossing estimate.
CROSSING_BAND = (0.4, 0.6)


def _sweep_point(cfg: ExperimentConfig, p: float) -> SweepPoint:
    est = estimate_arrow_probability(replace(cfg, p=p))
    valid = est.unknown / cfg.trials < MAX_UNKNOWN_FRACTION
    return SweepPoint(
        p, cfg.trials, est.arrows, est.not_arrows, est.unknown,
        est.phat, est.ci_lo, est.ci_hi, valid,
    )


def _bisect_crossing(cfg: ExperimentConfig, lo: float, hi: float, max_iters: int):
    """Bisection for p with phat in the crossing band; relies on the coupled
    trials being monotone in p."""
    points = {}

    def eval_at(p: float) -> SweepPoint:
        if p not in points:
            points[p] = _sweep_point(cfg, p)
        return points[p]

    lo_pt, hi_pt = eval_at(lo), eval_at(hi)
    p_half, crossed = None, False
    if lo_pt.phat < 0.5 <= hi_pt.phat:
        crossed = True
        for _ in range(max_iters):
            mid = (lo + hi) / 2.0
            mid_pt = eval_at(mid)
            if CROSSING_BAND[0] <= mid_pt.phat <= CROSSING_BAND[1]:
                p_half = mid
                break
            if mid_pt.phat < 0.5:
                lo = mid
            else:
                hi = mid
        if p_half is None:
            p_half = (lo + hi) / 2.0
    ordered = tuple(points[p] for p in sorted(points))
    return ordered, p_half, crossed, (lo, hi)


def _grid_crossing(cfg: ExperimentConfig, grid: Sequence[float]):
    pts = [_sweep_point(cfg, p) for p in grid]
    p_half, crossed, bracket = None, False, None
    for a, b in zip(pts, pts[1:]):
        if a.phat < 0.5 <= b.phat:
            crossed = True
            bracket = (a.p, b.p)
            p_half = (a.p + b.p) / 2.0
            break
    return tuple(pts), p_half, crossed, bracket


def sweep_threshold(
    base_cfg: ExperimentConfig,
    n_list: Sequence[int],
    p_strategy: str = "bisection",
    p_bracket: tuple[float, float] = (0.0, 1.0),
    p_grid: Optional[Sequence[float]] = None,
    max_iters: int = 12,
    fit_when_possible: bool = True,
) -> SweepResult:
    """Locate the p where the arrow probability crosses 1/2, per n.

    ``bisection`` narrows ``p_bracket`` until the estimate lands in the
    crossing band; ``grid`` evaluates ``p_grid`` and reports the bracketing
    cell.  Curves whose estimates are too often unknown, and n values where
    the probability never crosses (for instance n below the Ramsey number,
    where even p = 1 cannot arrow), carry no crossing estimate.
    """
    if not n_list or list(n_list) != sorted(set(n_list)):
        raise ContractViolation("n values must be non-empty, ascending, distinct")
    if p_strategy not in ("bisection", "grid"):
        raise ContractViolation(f"unknown strategy {p_strategy!r}")
    if p_strategy == "grid":
        if p_grid is None or list(p_grid) != sorted(set(p_grid)):
            raise ContractViolation("grid strategy needs a strictly increasing p grid")
    curves = []
    for n in n_list:
        cfg = replace(base_cfg, n=n)
        if p_strategy == "bisection":
            pts, p_half, crossed, bracket = _bisect_crossing(
                cfg, p_bracket[0], p_bracket[1], max_iters
            )
        else:
            pts, p_half, crossed, bracket = _grid_crossing(cfg, p_grid)
        valid = all(pt.valid for pt in pts)
        monotone_warning = any(
            a.phat > b.phat + 1e-9 for a, b in zip(pts, pts[1:])
        )
        curves.append(
            SweepCurve(n, pts, p_half, crossed, bracket, valid, monotone_warning)
        )
    result = SweepResult(tuple(curves), None)
    if fit_when_possible:
        usable = [c for c in result.curves if c.p_half is not None and c.valid]
        if len(usable) >= 3:
            result = SweepResult(result.curves, fit_exponent(result))
    return result


def fit_exponent(sr: SweepResult) -> ExponentFit:
    """Least squares of log p_half against log n over valid crossed curves."""
    xs, ys = [], []
    for curve in sr.curves:
        if curve.p_half is not None and curve.valid and curve.p_half > 0:
            xs.append(math.log(curve.n))
            ys.append(math.log(curve.p_half))
    if len(xs) < 3:
        raise ContractViolation("exponent fit needs at least 3 crossing estimates")
    k = len(xs)
    mx = sum(xs) / k
    my = sum(ys) / k
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    residual = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    return ExponentFit(slope, intercept, residual)


CSV_HEADER = ["n", "p", "trials", "arrows", "notarrows", "unknown", "phat", "ci_lo", "ci_hi"]


def write_points_csv(rows: Sequence[tuple[int, SweepPoint]], path) -> None:
    """RFC-4180 CSV, LF line endings, one row per (n, p) point."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for n, pt in rows:
            writer.writerow(
                [
                    n,
                    repr(pt.p),
                    pt.trials,
                    pt.arrows,
                    pt.not_arrows,
                    pt.unknown,
                    repr(pt.phat),
                    repr(pt.ci_lo),
                    repr(pt.ci_hi),
                ]
            )


def sweep_rows(result: SweepResult) -> list[tuple[int, SweepPoint]]:
    return [(curve.n, pt) for curve in result.curves for pt in curve.points]


def estimate_rows(cfg: ExperimentConfig, est: EstimateResult) -> list[tuple[int, SweepPoint]]:
    point = SweepPoint(
        float(parse_probability(cfg.p)),
        cfg.trials,
        est.arrows,
        est.not_arrows,
        est.unknown,
        est.phat,
        est.ci_lo,
        est.ci_hi,
        est.unknown / cfg.trials < MAX_UNKNOWN_FRACTION,
    )
    return [(cfg.n, point)]


def write_manifest(path, cfg: ExperimentConfig, result: Optional[SweepResult] = None,
                   n_list: Optional[Sequence[int]] = None) -> None:
    """Deterministic JSON manifest: full config, code version, crossings."""
    payload: dict = {"config": cfg.to_json(), "version": __version__}
    if n_list is not None:
        payload["n_list"] = list(n_list)
    if result is not None:
        payload["curves"] = [
            {
                "n": c.n,
                "p_half": c.p_half,
                "crossed": c.crossed,
                "bracket": list(c.bracket) if c.bracket else None,
                "valid": c.valid,
                "monotone_warning": c.monotone_warning,
            }
            for c in result.curves
        ]
        payload["fit"] = (
            None
            if result.fit is None
            else {
                "slope": result.fit.slope,
                "intercept": result.fit.intercept,
                "residual": result.fit.residual,
            }
        )
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
