"""Compiled inner loops. Semantics mirror :meth:`LearningMachine.update`."""
from __future__ import annotations

import math

import numba as nb
import numpy as np


@nb.njit(cache=True)
def update_inplace(x, v, alpha):
    """Apply the cheapest candidate to ``x``; return ``(j, s, cost)``.

    Scans ``(j, +1)`` before ``(j, -1)`` and keeps the first strict minimum,
    so ties resolve to the smallest ``j`` and then ``s = +1``.
    """
    n = x.shape[0]
    a2 = alpha * alpha
    common = 0.0
    for i in range(n):
        common += x[i] * v[i]
    common *= alpha
    best = np.inf
    bj = 0
    bs = 1
    bd = 0.0
    for j in range(n):
        d = math.sqrt((1.0 - a2) + a2 * x[j] * x[j])
        rest = alpha * x[j] * v[j] - common
        dv = d * v[j]
        c = rest - dv
        if c < best:
            best = c
            bj = j
            bs = 1
            bd = d
        c = rest + dv
        if c < best:
            best = c
            bj = j
            bs = -1
            bd = d
    for i in range(n):
        x[i] *= alpha
    x[bj] = bs * bd
    return bj, bs, best


@nb.njit(cache=True)
def stochastic_channel(x, r):
    n = x.shape[0] // 2
    cum = 0.0
    for k in range(n):
        cum += x[2 * k] * x[2 * k] + x[2 * k + 1] * x[2 * k + 1]
        if r < cum:
            return k
    return n - 1


@nb.njit(cache=True)
def gate_step(front_x, transform, back_x, alpha, kind, y0, y1, stochastic, r):
    """One event through front-end, transform and back-end.

    Returns ``(out_kind, m0, m1, degenerate)``.
    """
    v = front_x.copy()
    v[2 * kind] = y0
    v[2 * kind + 1] = y1
    update_inplace(front_x, v, alpha)
    t = transform @ front_x
    j, s, cost = update_inplace(back_x, t, alpha)
    if stochastic:
        out = stochastic_channel(back_x, r)
    else:
        out = j // 2
    m0 = back_x[2 * out]
    m1 = back_x[2 * out + 1]
    norm = math.sqrt(m0 * m0 + m1 * m1)
    if norm <= 1e-12:
        return out, 1.0, 0.0, True
    return out, m0 / norm, m1 / norm, False
