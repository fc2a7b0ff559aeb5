"""Decode-forward rates for the half-duplex Gaussian relay channel.

The relay listens for a fraction ``alpha`` of each block and transmits for the
rest.  With partial decoding the source spends a fraction ``beta`` of its
power on the part of the message the relay forwards, coherently with the
relay.  For a fixed ``beta`` both constraints of the max-min problem are affine
in ``alpha``, so the inner maximization is solved exactly; the outer search
over ``beta`` is a dense grid followed by golden-section refinement.

All rates are in bits per channel use.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import DomainError, Regime, SnrTriple, classify_regime

#: Number of uniformly spaced beta values scanned before local refinement.
BETA_GRID_POINTS = 1001
#: Width of the final golden-section bracket in beta.
BETA_TOL = 1e-10
#: Relative tolerance used to call the two constraints equal at the optimum.
BINDING_TOL = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 512


class Binding(str, enum.Enum):
    RELAY = "RelayDecodeTerm"
    DESTINATION = "DestinationTerm"
    BOTH = "Both"


@dataclass(frozen=True)
class ObjectivePair:
    """The two arguments of the max-min rate expression at one ``(alpha, beta)``."""

    term_relay: float
    term_dest: float

    @property
    def rate(self) -> float:
        return min(self.term_relay, self.term_dest)


@dataclass(frozen=True)
class RateSolution:
    rate: float
    alpha: float
    beta: float
    binding: Binding

    def to_dict(self) -> dict:
        return {"rate": self.rate, "alpha": self.alpha, "beta": self.beta,
                "binding": self.binding.value}


_LN2 = math.log(2.0)


def log2_1p(x):
    """``log2(1 + x)``, accurate for small ``x``."""
    return np.log1p(x) / _LN2


def _half_log2_1p(x):
    return 0.5 * log2_1p(x)


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def coherent_snr(l02, l12):
    """SNR at the destination when source and relay send the same codeword."""
    return (np.sqrt(l02) + np.sqrt(l12)) ** 2


def direct_rate(s: SnrTriple) -> float:
    """Rate of direct transmission with the relay idle."""
    return 0.5 * math.log1p(s.lambda02) / _LN2


def solve_direct(s: SnrTriple) -> RateSolution:
    """Direct transmission as the ``alpha = beta = 0`` point of partial decoding."""
    terms = pdf_objective(s, 0.0, 0.0)
    return RateSolution(direct_rate(s), 0.0, 0.0, _binding(terms.term_relay, terms.term_dest))


def pdf_objective(s: SnrTriple, alpha: float, beta: float) -> ObjectivePair:
    alpha = _check_unit("alpha", alpha)
    beta = _check_unit("beta", beta)
    l01, l02, l12 = s.lambda01, s.lambda02, s.lambda12
    relay = alpha / 2 * float(log2_1p(l01)) + (1 - alpha) / 2 * float(log2_1p((1 - beta) * l02))
    dest = alpha / 2 * float(log2_1p(l02)) + (1 - alpha) / 2 * float(
        log2_1p(l02 + l12 + 2 * math.sqrt(beta * l02 * l12)))
    return ObjectivePair(relay, dest)


def cdf_objective(s: SnrTriple, alpha: float) -> ObjectivePair:
    alpha = _check_unit("alpha", alpha)
    relay = alpha / 2 * float(log2_1p(s.lambda01))
    dest = alpha / 2 * float(log2_1p(s.lambda02)) + (1 - alpha) / 2 * float(
        log2_1p(coherent_snr(s.lambda02, s.lambda12)))
    return ObjectivePair(relay, dest)


def affine_maxmin(start1, end1, start2, end2):
    """Maximize ``min(f1, f2)`` over ``alpha`` in [0, 1] for affine ``f1``, ``f2``.

    ``fk(alpha) = (1 - alpha) * startk + alpha * endk``.  Arguments broadcast.
    The minimum of two affine functions is concave, so the maximum sits at an
    endpoint or at the crossing.  Ties go to the smallest ``alpha``.

    Returns ``(value, alpha)`` arrays.
    """
    start1, end1, start2, end2 = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (start1, end1, start2, end2)))
    at0 = np.minimum(start1, start2)
    at1 = np.minimum(end1, end2)
    gap0 = start2 - start1
    denom = gap0 - (end2 - end1)
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = gap0 / denom
    inside = np.isfinite(cross) & (cross > 0.0) & (cross < 1.0)
    cross = np.where(inside, cross, 0.5)
    at_cross = np.where(inside, (1.0 - cross) * start1 + cross * end1, -np.inf)

    values = np.stack([at0, at_cross, at1])
    alphas = np.stack([np.zeros_like(cross), cross, np.ones_like(cross)])
    pick = np.argmax(values, axis=0)
    value = np.take_along_axis(values, pick[None], axis=0)[0]
    alpha = np.take_along_axis(alphas, pick[None], axis=0)[0]
    return value, alpha


def _pdf_terms(l01, l02, l12, beta):
    """Affine endpoints (alpha=0, alpha=1) of the two partial-decoding constraints."""
    end1 = _half_log2_1p(l01)
    start1 = _half_log2_1p((1.0 - beta) * l02)
    end2 = _half_log2_1p(l02)
    start2 = _half_log2_1p(l02 + l12 + 2.0 * np.sqrt(beta * l02 * l12))
    return start1, end1, start2, end2


def pdf_value_at_beta(l01, l02, l12, beta):
    """Best partial-decoding rate over ``alpha`` for given ``beta`` (broadcasting)."""
    return affine_maxmin(*_pdf_terms(l01, l02, l12, beta))[0]


def _track(best_b, best_v, x, f):
    better = f > best_v
    return np.where(better, x, best_b), np.where(better, f, best_v)


def _golden_refine(l01, l02, l12, lo, hi, best_b, best_v):
    """Vectorized golden-section ascent on ``[lo, hi]``; keeps the best point seen."""
    width = float(np.max(hi - lo))
    n_iter = max(1, math.ceil(math.log(width / BETA_TOL) / -math.log(_INV_PHI)))
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1 = pdf_value_at_beta(l01, l02, l12, x1)
    f2 = pdf_value_at_beta(l01, l02, l12, x2)
    best_b, best_v = _track(best_b, best_v, x1, f1)
    best_b, best_v = _track(best_b, best_v, x2, f2)
    for _ in range(n_iter):
        left = f1 > f2
        lo = np.where(left, lo, x1)
        hi = np.where(left, x2, hi)
        x_new = np.where(left, hi - _INV_PHI * (hi - lo), lo + _INV_PHI * (hi - lo))
        f_new = pdf_value_at_beta(l01, l02, l12, x_new)
        best_b, best_v = _track(best_b, best_v, x_new, f_new)
        x1, f1, x2, f2 = (
            np.where(left, x_new, x2), np.where(left, f_new, f2),
            np.where(left, x1, x_new), np.where(left, f1, f_new),
        )
    return best_b, best_v


def _solve_pdf_chunk(l01, l02, l12):
    grid = np.linspace(0.0, 1.0, BETA_GRID_POINTS)
    values = pdf_value_at_beta(l01[:, None], l02[:, None], l12[:, None], grid[None, :])
    k = np.argmax(values, axis=1)
    best_v = values[np.arange(len(k)), k]
    best_b = grid[k]
    lo = grid[np.maximum(k - 1, 0)]
    hi = grid[np.minimum(k + 1, BETA_GRID_POINTS - 1)]
    return _golden_refine(l01, l02, l12, lo, hi, best_b, best_v)


def solve_pdf_many(l01, l02, l12):
    """Partial-decode-forward rates for arrays of channels.

    Returns ``(rate, alpha, beta)`` arrays.  Channels are processed in fixed
    chunks, so each result is independent of how the input is batched by
    the caller.
    """
    l01, l02, l12 = (np.atleast_1d(np.asarray(a, dtype=float)) for a in np.broadcast_arrays(l01, l02, l12))
    n = l01.size
    beta = np.empty(n)
    rate = np.empty(n)
    for start in range(0, n, _CHUNK):
        sl = slice(start, start + _CHUNK)
        beta[sl], rate[sl] = _solve_pdf_chunk(l01[sl], l02[sl], l12[sl])
    value, alpha = affine_maxmin(*_pdf_terms(l01, l02, l12, beta))
    return value, alpha, beta


def _binding(term_relay: float, term_dest: float) -> Binding:
    if abs(term_relay - term_dest) <= BINDING_TOL * max(1.0, abs(term_relay), abs(term_dest)):
        return Binding.BOTH
    return Binding.RELAY if term_relay < term_dest else Binding.DESTINATION


def solve_pdf(s: SnrTriple, beta: float | None = None) -> RateSolution:
    """Maximize the partial-decode-forward rate over ``alpha`` and ``beta``.

    With ``beta`` given, only ``alpha`` is optimized (exactly).  Ties between
    optimal points are broken toward the smallest ``beta`` on the grid and the
    smallest ``alpha``; the rate, not the argmax, is the contract.
    """
    if beta is None:
        rate, alpha, b = (float(a[0]) for a in solve_pdf_many(s.lambda01, s.lambda02, s.lambda12))
    else:
        b = _check_unit("beta", beta)
        value, alpha = affine_maxmin(*_pdf_terms(s.lambda01, s.lambda02, s.lambda12, b))
        rate, alpha = float(value), float(alpha)
    terms = pdf_objective(s, alpha, b)
    return RateSolution(rate, alpha, b, _binding(terms.term_relay, terms.term_dest))


def _wuq(s: SnrTriple) -> tuple[float, float, float]:
    return (float(log2_1p(s.lambda01)), float(log2_1p(s.lambda02)),
            float(log2_1p(coherent_snr(s.lambda02, s.lambda12))))


def solve_cdf(s: SnrTriple) -> RateSolution:
    """Complete-decode-forward rate (the relay decodes the whole message).

    When the source-relay link is stronger than the direct link the two
    constraints cross inside (0, 1) and the rate has a closed form.
    Otherwise the affine max-min is solved at its endpoint.
    """
    if classify_regime(s) is Regime.RELAY_ADVANTAGED:
        w, u, q = _wuq(s)
        alpha = q / (q + w - u)
        rate = 0.5 * q * w / (q + w - u)
        return RateSolution(rate, alpha, 1.0, Binding.BOTH)
    value, alpha = affine_maxmin(0.0, _half_log2_1p(s.lambda01),
                                 _half_log2_1p(coherent_snr(s.lambda02, s.lambda12)),
                                 _half_log2_1p(s.lambda02))
    alpha = float(alpha)
    terms = cdf_objective(s, alpha)
    return RateSolution(float(value), alpha, 1.0, _binding(terms.term_relay, terms.term_dest))


def solve_pdf_ub(s: SnrTriple) -> RateSolution:
    """Upper bound on the partial-decoding rate obtained by maximizing each constraint over ``beta`` separately.

    The relay constraint is largest at ``beta = 0`` and the destination
    constraint at ``beta = 1``; the reported ``beta`` is 0 by convention since
    the bound is not attained by a single ``beta``.
    """
    if classify_regime(s) is not Regime.RELAY_ADVANTAGED:
        raise DomainError("the upper bound closed form requires lambda01 > lambda02")
    w, u, q = _wuq(s)
    denom = q + w - 2 * u
    alpha = (q - u) / denom
    rate = (0.5 * q * w - 0.5 * u * u) / denom
    return RateSolution(rate, alpha, 0.0, Binding.BOTH)
