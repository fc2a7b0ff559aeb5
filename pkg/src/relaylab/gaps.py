"""Gap between partial and complete decode-forward, its closed-form bounds and limits.

Notation follows the log-domain variables

* ``w = log(1 + lambda01)``, ``u = log(1 + lambda02)``
* ``v = w - 2u``, ``t = u (w - u) / w``
* ``q = log(1 + (sqrt(lambda02) + sqrt(lambda12))**2)``

Every closed form here assumes ``lambda01 > lambda02`` and raises
:class:`~relaylab.channel.DomainError` otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional

from .channel import (DomainError, Geometry, Regime, SnrTriple, classify_regime,
                      snr_from_geometry)
from .rates import coherent_snr, solve_cdf, solve_pdf, solve_pdf_ub

#: Smallest complete-decoding rate (bits) accepted as a normalizer.
MIN_CDF_RATE = 1e-15


@dataclass(frozen=True)
class LogVariables:
    w: float
    u: float
    v: float
    t: float
    q: float


def log_variables(s: SnrTriple, base: float = 2.0) -> LogVariables:
    scale = math.log(base)
    w = math.log1p(s.lambda01) / scale
    u = math.log1p(s.lambda02) / scale
    q = math.log1p(float(coherent_snr(s.lambda02, s.lambda12))) / scale
    return LogVariables(w=w, u=u, v=w - 2 * u, t=u * (w - u) / w, q=q)


def _require_relay_advantaged(s: SnrTriple) -> None:
    if classify_regime(s) is not Regime.RELAY_ADVANTAGED:
        raise DomainError("closed-form bound requires lambda01 > lambda02")


def gbar_ub(s: SnrTriple, base: float = 2.0) -> float:
    """Upper bound on the normalized gap, ``t (q - u) / (q (q + v))``."""
    _require_relay_advantaged(s)
    lv = log_variables(s, base)
    return lv.t * (lv.q - lv.u) / (lv.q * (lv.q + lv.v))


def lemma5_bound(s: SnrTriple, base: float = 2.0) -> float:
    """Bound on :func:`gbar_ub` after maximizing over the relay power.

    Depends only on ``w`` and ``u``; equals ``1 / h(w / u)``.
    """
    _require_relay_advantaged(s)
    lv = log_variables(s, base)
    w, u = lv.w, lv.u
    return u * (w - u) / (w * (w + 2 * math.sqrt(u * (w - u))))


def h_of_s(sv: float) -> float:
    """``h(s) = s (1 + 2 / sqrt(s - 1) + 1 / (s - 1))``; minimized at ``s = 2`` where it is 8."""
    if not sv > 1.0:
        raise DomainError(f"h(s) is defined for s > 1, got {sv!r}")
    r = sv - 1.0
    return sv * (1.0 + 2.0 / math.sqrt(r) + 1.0 / r)


def g_ub(s: SnrTriple) -> float:
    """Upper bound (bits/use) on the absolute gap ``R_PDF - R_CDF``."""
    _require_relay_advantaged(s)
    lv = log_variables(s)
    w, u, q = lv.w, lv.u, lv.q
    return (w - u) * (q - u) * u / (2 * (q + w - 2 * u) * (q + w - u))


def _power_invariant_ratios(geom: Geometry) -> tuple[float, float]:
    s = snr_from_geometry(geom)
    c1 = s.lambda01 / s.lambda02
    c2 = float(coherent_snr(s.lambda02, s.lambda12)) / s.lambda02
    return c1, c2


def high_snr_limit_g_ub(geom: Geometry) -> float:
    """Limit of :func:`g_ub` as both transmit powers grow at a fixed ratio.

    Returns ``0.5 / (1 / log2(C1) + 1 / log2(C2))`` with
    ``C1 = lambda01 / lambda02`` and ``C2 = (sqrt(lambda02) + sqrt(lambda12))**2 / lambda02``,
    neither of which depends on the power scale.  Convergence in the power
    scale is logarithmically slow.
    """
    c1, c2 = _power_invariant_ratios(geom)
    if not c1 > 1.0:
        raise DomainError(f"high-SNR limit requires lambda01 > lambda02 (C1 = {c1!r})")
    return 0.5 / (1.0 / math.log2(c1) + 1.0 / math.log2(c2))


@dataclass(frozen=True)
class LowSnrLimit:
    c3: float
    c4: float
    c5: float

    @property
    def value(self) -> float:
        return self.c3 * self.c4 * self.c5


def low_snr_limit_gbar_ub(geom: Geometry) -> LowSnrLimit:
    """Limit of :func:`gbar_ub` as both transmit powers shrink at a fixed ratio.

    The three factors are written with the SNRs of ``geom``; their ratios do
    not depend on the power scale.  With unit noise they reduce to
    ``C3 = (d01/d02)**2``,
    ``C4 = (d01**-2 - d02**-2) k0 / ((d01**-2 - d02**-2) k0 + 2 sqrt(k0 k1) / (d02 d12) + k1 / d12**2)``
    and ``C5 = 1 - d02**-2 k0 / (sqrt(k0) / d02 + sqrt(k1) / d12)**2``.
    """
    d01, d02, _ = geom.distances()
    if not d01 < d02:
        raise DomainError(f"low-SNR limit requires d01 < d02 (got {d01!r} >= {d02!r})")
    s = snr_from_geometry(geom)
    l01, l02, l12 = s.lambda01, s.lambda02, s.lambda12
    if not l01 > l02:
        raise DomainError("low-SNR limit requires lambda01 > lambda02")
    combined = float(coherent_snr(l02, l12))
    c3 = l02 / l01
    c4 = (l01 - l02) / (l01 - l02 + 2 * math.sqrt(l02 * l12) + l12)
    c5 = (combined - l02) / combined
    return LowSnrLimit(c3, c4, c5)


@dataclass(frozen=True)
class GapReport:
    """Rates, gaps and bounds for one channel.

    Bound fields are ``None`` unless the regime is relay-advantaged.
    """

    r_cdf: float
    r_pdf: float
    r_pdf_ub: Optional[float]
    g: float
    g_bar: float
    g_bar_ub: Optional[float]
    lemma5_bound: Optional[float]
    g_ub: Optional[float]
    regime: Regime

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["regime"] = self.regime.value
        return out


def assemble_report(s: SnrTriple, r_pdf: float) -> GapReport:
    """Build a :class:`GapReport` around an already computed partial-decoding rate."""
    regime = classify_regime(s)
    r_cdf = solve_cdf(s).rate
    if regime is Regime.DIRECT_ADVANTAGED:
        # direct transmission is optimal; no gap is defined here
        return GapReport(r_cdf, r_pdf, None, 0.0, 0.0, None, None, None, regime)
    if r_cdf < MIN_CDF_RATE:
        raise DomainError(f"complete-decoding rate {r_cdf!r} too small to normalize by")
    g = r_pdf - r_cdf
    if regime is Regime.EQUAL:
        return GapReport(r_cdf, r_pdf, None, g, g / r_cdf, None, None, None, regime)
    return GapReport(
        r_cdf=r_cdf,
        r_pdf=r_pdf,
        r_pdf_ub=solve_pdf_ub(s).rate,
        g=g,
        g_bar=g / r_cdf,
        g_bar_ub=gbar_ub(s),
        lemma5_bound=lemma5_bound(s),
        g_ub=g_ub(s),
        regime=regime,
    )


def gap_report(s: SnrTriple) -> GapReport:
    return assemble_report(s, solve_pdf(s).rate)
