"""Brute-force reference solvers used to cross-check the closed forms.

These deliberately share no code with :mod:`relaylab.rates`: each rate
expression is transcribed again and maximized by exhaustive grids, with local
bisection or zooming to sharpen the optimum.  They are slow and intended for
verification only.
"""
from __future__ import annotations

import numpy as np

from .channel import SnrTriple


def _crossing_refine(f1, f2, lo: float, hi: float, iters: int = 200) -> float:
    """Bisect ``f1 - f2`` on ``[lo, hi]`` and return ``min(f1, f2)`` at the root."""
    d_lo = f1(lo) - f2(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        d_mid = f1(mid) - f2(mid)
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    x = 0.5 * (lo + hi)
    return min(f1(x), f2(x))


def _affine_grid_maxmin(f1, f2, step: float) -> float:
    alpha = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    m = np.minimum(f1(alpha), f2(alpha))
    k = int(np.argmax(m))
    best = float(m[k])
    diff = f1(alpha) - f2(alpha)
    # sharpen at a sign change of the constraint difference next to the grid optimum
    for a, b in ((k - 1, k), (k, k + 1)):
        if 0 <= a and b < alpha.size and np.sign(diff[a]) != np.sign(diff[b]):
            best = max(best, _crossing_refine(f1, f2, float(alpha[a]), float(alpha[b])))
    return best


def cdf_rate_oracle(s: SnrTriple, step: float = 1e-6, log=np.log2) -> float:
    l01, l02, l12 = s.lambda01, s.lambda02, s.lambda12
    coh = l02 + l12 + 2.0 * np.sqrt(l02 * l12)

    def relay(a):
        return a / 2 * log(1 + l01)

    def dest(a):
        return a / 2 * log(1 + l02) + (1 - a) / 2 * log(1 + coh)

    return _affine_grid_maxmin(relay, dest, step)


def pdf_ub_oracle(s: SnrTriple, step: float = 1e-6, log=np.log2) -> float:
    l01, l02, l12 = s.lambda01, s.lambda02, s.lambda12
    coh = l02 + l12 + 2.0 * np.sqrt(l02 * l12)

    def relay(a):
        return a / 2 * log(1 + l01) + (1 - a) / 2 * log(1 + l02)

    def dest(a):
        return a / 2 * log(1 + l02) + (1 - a) / 2 * log(1 + coh)

    return _affine_grid_maxmin(relay, dest, step)


def _profile_over_beta(relay, dest, beta: np.ndarray, n_alpha: int) -> np.ndarray:
    """Best ``min(relay, dest)`` over ``alpha`` for each ``beta``: grid plus bisection."""
    alpha = np.linspace(0.0, 1.0, n_alpha)[None, :]
    b = beta[:, None]
    diff = relay(alpha, b) - dest(alpha, b)
    m = np.minimum(relay(alpha, b), dest(alpha, b))
    k = np.argmax(m, axis=1)
    rows = np.arange(beta.size)
    best = m[rows, k]
    for side in (-1, 1):
        j = np.clip(k + side, 0, n_alpha - 1)
        lo_idx, hi_idx = np.minimum(k, j), np.maximum(k, j)
        change = np.sign(diff[rows, lo_idx]) != np.sign(diff[rows, hi_idx])
        lo = alpha[0, lo_idx].copy()
        hi = alpha[0, hi_idx].copy()
        d_lo = diff[rows, lo_idx]
        bb = beta
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            d_mid = relay(mid, bb) - dest(mid, bb)
            same = np.sign(d_mid) == np.sign(d_lo)
            lo = np.where(same, mid, lo)
            d_lo = np.where(same, d_mid, d_lo)
            hi = np.where(same, hi, mid)
        x = 0.5 * (lo + hi)
        at_root = np.minimum(relay(x, bb), dest(x, bb))
        best = np.where(change, np.maximum(best, at_root), best)
    return best


def pdf_rate_oracle(s: SnrTriple, step: float = 1e-3, zooms: int = 16, log=np.log2) -> float:
    """Grid over ``(alpha, beta)`` with bisection on ``alpha`` and repeated zooming in ``beta``."""
    l01, l02, l12 = s.lambda01, s.lambda02, s.lambda12

    def relay(a, b):
        return a / 2 * log(1 + l01) + (1 - a) / 2 * log(1 + (1 - b) * l02)

    def dest(a, b):
        return a / 2 * log(1 + l02) + (1 - a) / 2 * log(1 + l02 + l12 + 2 * np.sqrt(b * l02 * l12))

    n = int(round(1.0 / step)) + 1
    lo, hi = 0.0, 1.0
    best = -np.inf
    for _ in range(zooms + 1):
        beta = np.linspace(lo, hi, n)
        prof = _profile_over_beta(relay, dest, beta, n)
        j = int(np.argmax(prof))
        best = max(best, float(prof[j]))
        width = (hi - lo) / (n - 1)
        lo, hi = max(0.0, beta[j] - 4 * width), min(1.0, beta[j] + 4 * width)
        n = 101
    return best
