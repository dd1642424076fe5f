"""Deterministic and stochastic learning machines.

A machine keeps a unit internal vector ``x`` of even length. On every input it
considers ``2 * dim`` candidate replacements of ``x`` (one per component and
sign), keeps the one with the lowest cost ``-w.v`` and reports which it took.
The choice of candidate is what drives the output event.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from ._kernels import stochastic_channel, update_inplace
from .linalg import DEGENERATE_NORM, UNIT_TOL


class Mode(str, Enum):
    DETERMINISTIC = "deterministic"
    STOCHASTIC = "stochastic"


class Event(NamedTuple):
    """One particle: a basis-state index plus a 2-vector phase message."""

    kind: int
    message: tuple[float, float] = (1.0, 0.0)


class UpdateDecision(NamedTuple):
    j: int
    s: int
    cost: float


@dataclass(frozen=True)
class MachineConfig:
    alpha: float = 0.99
    dim: int = 4
    mode: Mode = Mode.DETERMINISTIC

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.dim < 4 or self.dim % 2:
            raise ValueError(f"dim must be even and >= 4, got {self.dim}")
        object.__setattr__(self, "mode", Mode(self.mode))


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.uniform(-1.0, 1.0, size=dim)
        n = np.linalg.norm(v)
        if n > DEGENERATE_NORM:
            return v / n


class LearningMachine:
    """Single learning machine. Not thread safe; one owner at a time."""

    def __init__(self, config: MachineConfig, x):
        x = np.array(x, dtype=float)
        if x.shape != (config.dim,):
            raise ValueError(f"internal vector must have length {config.dim}, got {x.shape}")
        if abs(float(x @ x) - 1.0) > UNIT_TOL:
            raise ValueError("internal vector must have unit norm")
        self.config = config
        self.x = x
        self.degenerate_messages = 0

    @classmethod
    def random(cls, config: MachineConfig, rng: np.random.Generator) -> "LearningMachine":
        return cls(config, random_unit_vector(config.dim, rng))

    @property
    def alpha(self) -> float:
        return self.config.alpha

    @property
    def dim(self) -> int:
        return self.config.dim

    @property
    def stochastic(self) -> bool:
        return self.config.mode is Mode.STOCHASTIC

    def fill_missing(self, event: Event) -> np.ndarray:
        k = event.kind
        if not 0 <= k or 2 * k + 1 >= self.dim:
            raise IndexError(f"event kind {k} out of range for dim {self.dim}")
        v = self.x.copy()
        v[2 * k] = event.message[0]
        v[2 * k + 1] = event.message[1]
        return v

    def candidates(self) -> np.ndarray:
        """All candidate vectors, row ``2*j + (s == -1)``; for testing and inspection."""
        a = self.alpha
        out = np.empty((2 * self.dim, self.dim))
        for j in range(self.dim):
            d = math.sqrt(1.0 + a * a * (self.x[j] ** 2 - 1.0))
            for r, s in ((2 * j, 1.0), (2 * j + 1, -1.0)):
                out[r] = a * self.x
                out[r, j] = s * d
        return out

    def update(self, v: np.ndarray) -> UpdateDecision:
        """Replace ``x`` by the cheapest candidate for input ``v``.

        Ties go to the smallest ``j`` and then to ``s = +1``.
        """
        v = np.ascontiguousarray(v, dtype=float)
        if v.shape != self.x.shape:
            raise ValueError(f"input must have length {self.dim}, got {v.shape}")
        j, s, cost = update_inplace(self.x, v, self.alpha)
        return UpdateDecision(int(j), int(s), float(cost))

    def output_channel_stochastic(self, r: float) -> int:
        """Kind ``k`` with probability equal to the weight of pair ``k``.

        ``r`` is uniform in [0, 1); kind ``k`` owns the interval ``[P_{k-1}, P_k)``.
        """
        return int(stochastic_channel(self.x, float(r)))

    def output_message(self, kind: int) -> tuple[float, float]:
        y0 = float(self.x[2 * kind])
        y1 = float(self.x[2 * kind + 1])
        n = math.hypot(y0, y1)
        if n <= DEGENERATE_NORM:
            self.degenerate_messages += 1
            return (1.0, 0.0)
        return (y0 / n, y1 / n)


def output_channel_deterministic(decision: UpdateDecision) -> int:
    return decision.j // 2


def fill_missing(m: LearningMachine, e: Event) -> np.ndarray:
    return m.fill_missing(e)


def update(m: LearningMachine, v: np.ndarray) -> UpdateDecision:
    return m.update(v)


def output_channel_stochastic(m: LearningMachine, r: float) -> int:
    return m.output_channel_stochastic(r)


def output_message(m: LearningMachine, kind: int) -> tuple[float, float]:
    return m.output_message(kind)
