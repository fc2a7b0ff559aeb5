"""Numerical studies: relay-position sweeps, asymptotic scans and randomized checks."""
from __future__ import annotations

import enum
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .channel import (DomainError, Geometry, Regime, SnrTriple, classify_regime,
                      snr_from_geometry)
from .gaps import (GapReport, LowSnrLimit, assemble_report, g_ub, gap_report, h_of_s,
                   high_snr_limit_g_ub, low_snr_limit_gbar_ub)
from .rates import solve_pdf_many
from .rng import SplitMix64

#: Geometry of the relay-position study: source at the origin, destination at (0, 1).
SWEEP_GEOMETRY = Geometry(source=(0.0, 0.0), relay=(0.0, 0.5), destination=(0.0, 1.0),
                         p0=100.0, p1=100.0, n1=1.0, n2=1.0)

#: Base geometry of the asymptotic checks.  Powers are multiplied by the scan
#: parameter ``P`` in :func:`power_scan`; proximity scans move the relay along
#: the source-destination segment.
ASYMPTOTIC_GEOMETRY = Geometry(source=(0.0, 0.0), relay=(0.6, 0.6), destination=(0.0, 1.0),
                               p0=100.0, p1=0.1, n1=1.0, n2=1.0)

SKIP_RADIUS = 1e-9
THEOREM_SLACK = 1e-9
_POINTS_PER_TASK = 2048


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count: ``RELAYLAB_THREADS`` wins, then ``threads``, then all CPUs."""
    env = os.environ.get("RELAYLAB_THREADS")
    if env:
        threads = int(env)
    if not threads:
        threads = os.cpu_count() or 1
    return max(1, int(threads))


def pdf_rates(l01, l02, l12, threads: Optional[int] = None) -> np.ndarray:
    """:func:`~relaylab.rates.solve_pdf_many` rates, split over worker threads.

    Tasks cover fixed index ranges and are merged in order, so the output does
    not depend on the worker count.
    """
    l01, l02, l12 = (np.asarray(a, dtype=float) for a in (l01, l02, l12))
    n = l01.size
    bounds = [(i, min(i + _POINTS_PER_TASK, n)) for i in range(0, n, _POINTS_PER_TASK)]

    def task(b):
        return solve_pdf_many(l01[b[0]:b[1]], l02[b[0]:b[1]], l12[b[0]:b[1]])[0]

    workers = resolve_threads(threads)
    if workers == 1 or len(bounds) <= 1:
        parts = [task(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(task, bounds))
    return np.concatenate(parts) if parts else np.empty(0)


# ---------------------------------------------------------------------------
# relay-position sweep

@dataclass(frozen=True)
class SweepSpec:
    base: Geometry = SWEEP_GEOMETRY
    x_range: tuple[float, float] = (0.0, 1.0)
    y_range: tuple[float, float] = (-0.2, 1.2)
    step: float = 0.01
    region_filter: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise DomainError("step must be positive")
        for name in ("x_range", "y_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise DomainError(f"{name} must be nonempty")

    def axis(self, lo: float, hi: float) -> np.ndarray:
        n = int(math.floor((hi - lo) / self.step + 1e-9)) + 1
        return np.round(lo + self.step * np.arange(n), 12)

    def in_region(self, x: float, y: float) -> bool:
        """Relay positions closer to the source than the destination is.

        For the default base geometry this is the open unit disk
        ``sqrt(x**2 + y**2) < 1``.
        """
        sx, sy = self.base.source
        return math.hypot(x - sx, y - sy) < self.base.distances()[1]

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict(), "x_range": list(self.x_range),
                "y_range": list(self.y_range), "step": self.step,
                "region_filter": self.region_filter, "seed": self.seed}


class SweepRecord(NamedTuple):
    x: float
    y: float
    snr: SnrTriple
    report: GapReport


@dataclass
class SweepResult:
    records: list[SweepRecord]
    max_g_bar: float
    argmax: Optional[tuple[float, float]]
    metadata: dict = field(default_factory=dict)


def _grid_points(spec: SweepSpec) -> list[tuple[float, float]]:
    src, dst = spec.base.source, spec.base.destination
    points = []
    for x in spec.axis(*spec.x_range):
        for y in spec.axis(*spec.y_range):
            x, y = float(x), float(y)
            if spec.region_filter and not spec.in_region(x, y):
                continue
            if math.hypot(x - src[0], y - src[1]) < SKIP_RADIUS:
                continue
            if math.hypot(x - dst[0], y - dst[1]) < SKIP_RADIUS:
                continue
            points.append((x, y))
    return points


def evaluate_snrs(snrs: Sequence[SnrTriple], threads: Optional[int] = None) -> list[GapReport]:
    """Gap reports for many channels, with the expensive rate search batched."""
    if not snrs:
        return []
    rates = pdf_rates([s.lambda01 for s in snrs], [s.lambda02 for s in snrs],
                      [s.lambda12 for s in snrs], threads)
    return [assemble_report(s, float(r)) for s, r in zip(snrs, rates)]


def position_sweep(spec: SweepSpec = SweepSpec(), threads: Optional[int] = None) -> SweepResult:
    """Normalized gap for every relay position of the grid described by ``spec``."""
    t0 = time.perf_counter()
    points = _grid_points(spec)
    snrs = [snr_from_geometry(spec.base.with_relay(p)) for p in points]
    reports = evaluate_snrs(snrs, threads)
    records = [SweepRecord(x, y, s, r) for (x, y), s, r in zip(points, snrs, reports)]
    max_g_bar, argmax = 0.0, None
    if records:
        best = max(records, key=lambda rec: rec.report.g_bar)
        max_g_bar, argmax = best.report.g_bar, (best.x, best.y)
    meta = {"spec": spec.to_dict(), "grid_points": len(records),
            "runtime_s": time.perf_counter() - t0}
    return SweepResult(records, max_g_bar, argmax, meta)


# ---------------------------------------------------------------------------
# asymptotic scans

class PowerScanRow(NamedTuple):
    p: float
    report: GapReport
    g_ub: Optional[float]
    gbar_ub: Optional[float]


def power_scan(geom: Geometry, p_values: Sequence[float],
               threads: Optional[int] = None) -> list[PowerScanRow]:
    """Scale both transmit powers of ``geom`` by each ``P`` and report gaps and bounds."""
    scaled = [geom.scaled(p) for p in p_values]
    reports = evaluate_snrs([snr_from_geometry(g) for g in scaled], threads)
    return [PowerScanRow(float(p), r, r.g_ub, r.g_bar_ub) for p, r in zip(p_values, reports)]


class Proximity(str, enum.Enum):
    NEAR_SOURCE = "RelayNearSource"
    NEAR_DEST = "RelayNearDest"


def proximity_scan(kind: Proximity | str, d_values: Sequence[float],
                   base: Geometry = ASYMPTOTIC_GEOMETRY,
                   threads: Optional[int] = None) -> list[tuple[float, GapReport]]:
    """Place the relay on the source-destination segment at distance ``d`` from one end."""
    kind = Proximity(kind)
    (sx, sy), (dx, dy) = base.source, base.destination
    length = math.hypot(dx - sx, dy - sy)
    geoms = []
    for d in d_values:
        if not 0 < d < length:
            raise DomainError(f"distance {d!r} must lie in (0, {length})")
        frac = d / length if kind is Proximity.NEAR_SOURCE else 1.0 - d / length
        geoms.append(base.with_relay((sx + frac * (dx - sx), sy + frac * (dy - sy))))
    reports = evaluate_snrs([snr_from_geometry(g) for g in geoms], threads)
    return [(float(d), r) for d, r in zip(d_values, reports)]


# ---------------------------------------------------------------------------
# randomized verification of the 9/8 bound

@dataclass
class FuzzSummary:
    seed: int
    samples: int
    violations: int
    worst_g_bar: float
    worst_channel: Optional[dict]
    failures: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def draw_channels(seed: int, n_samples: int, low: float = 1e-2,
                  high: float = 1e6) -> list[SnrTriple]:
    """Log-uniform channels with ``lambda01 > lambda02``, drawn by rejection.

    Each candidate consumes three SplitMix64 outputs, in the order
    ``lambda01, lambda02, lambda12``.
    """
    rng = SplitMix64(seed)
    out: list[SnrTriple] = []
    while len(out) < n_samples:
        s = SnrTriple(rng.log_uniform(low, high), rng.log_uniform(low, high),
                      rng.log_uniform(low, high))
        if classify_regime(s) is Regime.RELAY_ADVANTAGED:
            out.append(s)
    return out


def check_theorem_chain(s: SnrTriple, r: GapReport, slack: float = THEOREM_SLACK) -> list[str]:
    """Names of the violated inequalities in the 9/8 bound chain (empty if none)."""
    failed = []
    if not r.r_cdf <= r.r_pdf + slack:
        failed.append("r_cdf <= r_pdf")
    if not r.r_pdf <= 9.0 / 8.0 * r.r_cdf + slack:
        failed.append("r_pdf <= 9/8 r_cdf")
    if not r.g_bar <= r.g_bar_ub + slack:
        failed.append("g_bar <= g_bar_ub")
    if not r.g_bar_ub <= r.lemma5_bound + slack:
        failed.append("g_bar_ub <= lemma5_bound")
    if not r.lemma5_bound <= 0.125 + slack:
        failed.append("lemma5_bound <= 1/8")
    return failed


def theorem_fuzz(seed: int, n_samples: int, threads: Optional[int] = None) -> FuzzSummary:
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1")
    snrs = draw_channels(seed, n_samples)
    reports = evaluate_snrs(snrs, threads)
    failures = []
    worst, worst_s = -math.inf, None
    for s, r in zip(snrs, reports):
        bad = check_theorem_chain(s, r)
        if bad:
            failures.append({"channel": s.to_dict(), "failed": bad})
        if r.g_bar > worst:
            worst, worst_s = r.g_bar, s
    return FuzzSummary(seed, n_samples, len(failures), worst,
                       worst_s.to_dict() if worst_s else None, failures)


# ---------------------------------------------------------------------------
# search for channels approaching the 1/8 bound

class BoundApproach(NamedTuple):
    lambda12: float
    lambda01: float
    lambda02: float
    g_bar: float


def _g_bar_of(l01: float, l02: float, l12: float) -> float:
    s = SnrTriple(l01, l02, l12)
    if classify_regime(s) is not Regime.RELAY_ADVANTAGED:
        return 0.0
    return gap_report(s).g_bar


def bound_approach_search(lambda12_values: Sequence[float], grid: int = 60,
                          rounds: int = 4, threads: Optional[int] = None) -> list[BoundApproach]:
    """Largest normalized gap over ``(lambda01, lambda02)`` for each ``lambda12``.

    A ``grid x grid`` log-grid with ``lambda02`` in [1, 1e4] and ``lambda01`` in
    ``(lambda02, 1e7]`` is scanned first, then ``log10(lambda01)`` and
    ``log10(lambda02)`` are refined alternately with bounded scalar
    minimization while keeping ``lambda01 > lambda02``.
    """
    out = []
    for l12 in lambda12_values:
        l12 = float(l12)
        l02_axis = np.logspace(0.0, 4.0, grid)
        rows = []
        for l02 in l02_axis:
            span = np.log10(1e7 / l02)
            rows.append(l02 * 10.0 ** (span * np.arange(1, grid + 1) / grid))
        l01_all = np.concatenate(rows)
        l02_all = np.repeat(l02_axis, grid)
        snrs = [SnrTriple(a, b, l12) for a, b in zip(l01_all, l02_all)]
        reports = evaluate_snrs(snrs, threads)
        k = int(np.argmax([r.g_bar for r in reports]))
        x01, x02 = math.log10(l01_all[k]), math.log10(l02_all[k])
        best = reports[k].g_bar
        for _ in range(rounds):
            res = minimize_scalar(lambda a: -_g_bar_of(10 ** a, 10 ** x02, l12),
                                  bounds=(x02 + 1e-9, 7.0), method="bounded",
                                  options={"xatol": 1e-8})
            if -res.fun > best:
                best, x01 = -res.fun, float(res.x)
            res = minimize_scalar(lambda b: -_g_bar_of(10 ** x01, 10 ** b, l12),
                                  bounds=(0.0, min(4.0, x01 - 1e-9)), method="bounded",
                                  options={"xatol": 1e-8})
            if -res.fun > best:
                best, x02 = -res.fun, float(res.x)
        out.append(BoundApproach(l12, 10 ** x01, 10 ** x02, best))
    return out


# ---------------------------------------------------------------------------
# verification suites shared by the command line and the test-suite

def h_minimum_check(n: int = 200_001, upper: float = 100.0) -> dict:
    """Evaluate ``h`` on a dense grid over (1, upper] and locate its minimum."""
    s = np.linspace(1.0, upper, n)[1:]
    r = s - 1.0
    h = s * (1.0 + 2.0 / np.sqrt(r) + 1.0 / r)
    k = int(np.argmax(-h))
    spacing = s[1] - s[0]
    h2 = h_of_s(2.0)
    ok = (abs(h2 - 8.0) <= 8 * np.finfo(float).eps * 4 and h[k] >= 8.0 - 1e-9
          and abs(s[k] - 2.0) <= spacing)
    return {"h_at_2": h2, "grid_min": float(h[k]), "argmin": float(s[k]),
            "spacing": float(spacing), "ok": bool(ok)}


def oracle_suite(seed: int, n_samples: int) -> dict:
    """Closed forms and the numerical solver against brute-force oracles."""
    from .oracles import cdf_rate_oracle, pdf_rate_oracle, pdf_ub_oracle
    from .rates import solve_cdf, solve_pdf, solve_pdf_ub

    failures = []
    worst = {"cdf": 0.0, "pdf": 0.0, "pdf_ub": 0.0, "g_ub": 0.0}
    for s in draw_channels(seed, n_samples):
        cdf, pdf, ub = solve_cdf(s).rate, solve_pdf(s).rate, solve_pdf_ub(s).rate
        errs = {
            "cdf": abs(cdf - cdf_rate_oracle(s)) / cdf,
            "pdf": abs(pdf - pdf_rate_oracle(s)) / pdf,
            "pdf_ub": abs(ub - pdf_ub_oracle(s)),
            "g_ub": abs(g_ub(s) - (ub - cdf)),
        }
        tol = {"cdf": 1e-9, "pdf": 1e-6, "pdf_ub": 1e-9, "g_ub": 1e-9}
        for key, e in errs.items():
            worst[key] = max(worst[key], e)
        bad = [k for k in errs if not errs[k] <= tol[k]]
        if bad:
            failures.append({"channel": s.to_dict(), "failed": bad})
    return {"seed": seed, "samples": n_samples, "violations": len(failures),
            "worst_error": worst, "failures": failures}


def asymptotic_suite(geom: Geometry = ASYMPTOTIC_GEOMETRY) -> dict:
    """The four vanishing-gap regimes, checked at finite parameters."""
    checks = {}
    (_, near_src), = proximity_scan(Proximity.NEAR_SOURCE, [1e-4], geom)
    checks["relay_near_source"] = {"g_bar_ub": near_src.g_bar_ub, "g_ub": near_src.g_ub,
                                   "ok": near_src.g_bar_ub < 1e-2 and near_src.g_ub < 1e-2}
    (_, near_dst), = proximity_scan(Proximity.NEAR_DEST, [1e-4], geom)
    checks["relay_near_destination"] = {"g_bar_ub": near_dst.g_bar_ub, "g_ub": near_dst.g_ub,
                                        "ok": near_dst.g_bar_ub < 1e-2 and near_dst.g_ub < 1e-2}
    high = power_scan(geom, [1e6])[0]
    limit = high_snr_limit_g_ub(geom)
    checks["high_snr"] = {"g_ub": high.g_ub, "limit": limit, "g_bar_ub": high.gbar_ub,
                          "ok": abs(high.g_ub - limit) <= 0.05 * limit and high.gbar_ub < 1e-2}
    low = power_scan(geom, [1e-6])[0]
    lim: LowSnrLimit = low_snr_limit_gbar_ub(geom)
    checks["low_snr"] = {"g_bar_ub": low.gbar_ub, "limit": lim.value, "c3": lim.c3,
                         "c4": lim.c4, "c5": lim.c5, "g_ub": low.g_ub,
                         "ok": abs(low.gbar_ub - lim.value) <= 0.05 * lim.value and low.g_ub < 1e-3}
    return {"geometry": geom.to_dict(), "checks": checks,
            "violations": sum(not c["ok"] for c in checks.values())}


__all__ = [
    "ASYMPTOTIC_GEOMETRY", "SWEEP_GEOMETRY", "BoundApproach", "FuzzSummary", "PowerScanRow",
    "Proximity", "SweepRecord", "SweepResult", "SweepSpec", "asymptotic_suite",
    "bound_approach_search", "check_theorem_chain", "draw_channels", "evaluate_snrs",
    "h_minimum_check", "oracle_suite", "pdf_rates", "position_sweep", "power_scan",
    "proximity_scan", "resolve_threads", "theorem_fuzz",
]
