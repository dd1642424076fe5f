"""Event-by-event gate processors.

A processor chains a front-end machine that learns the incoming amplitudes, a
fixed orthogonal transform (the realified gate unitary) and a back-end machine
that learns the transformed vector and picks the output channel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import GateSpec
from ._kernels import gate_step
from .linalg import is_orthogonal, realify
from .machine import Event, LearningMachine, MachineConfig, Mode
from .oracle import gate_unitary, qubit_bit, single_qubit_matrix


@dataclass
class GateProcessor:
    front: LearningMachine
    transform: np.ndarray
    back: LearningMachine
    label: str = ""

    def __post_init__(self):
        d = self.transform.shape[0]
        if self.transform.shape != (d, d) or not (self.front.dim == self.back.dim == d):
            raise ValueError(
                f"dimension mismatch: front {self.front.dim}, transform {self.transform.shape}, "
                f"back {self.back.dim}"
            )
        self.transform = np.ascontiguousarray(self.transform, dtype=float)
        if not is_orthogonal(self.transform):
            raise ValueError(f"transform of {self.label or 'processor'} is not orthogonal")

    @property
    def dim(self) -> int:
        return self.front.dim

    def process(self, e: Event, rng: np.random.Generator | None = None) -> Event:
        """Push one event through; exactly one event comes out."""
        front, back = self.front, self.back
        if not 0 <= e.kind < front.dim // 2:
            raise IndexError(f"event kind {e.kind} out of range for {self.label or 'processor'}")
        r = 0.0
        if back.stochastic:
            if rng is None:
                raise ValueError("a stochastic back-end needs a random generator")
            r = rng.random()
        kind, m0, m1, degenerate = gate_step(
            front.x, self.transform, back.x, front.alpha, e.kind,
            float(e.message[0]), float(e.message[1]), back.stochastic, r,
        )
        if degenerate:
            back.degenerate_messages += 1
        return Event(int(kind), (m0, m1))


@dataclass
class PhaseShifter:
    """Passive device rotating the message of selected event kinds by ``phi``."""

    phi: float
    acts_on: frozenset[int] = field(default_factory=lambda: frozenset({1}))
    label: str = ""

    def __post_init__(self):
        self.acts_on = frozenset(self.acts_on)
        self._c = math.cos(self.phi)
        self._s = math.sin(self.phi)

    @classmethod
    def on_kind(cls, phi: float, kind: int) -> "PhaseShifter":
        return cls(phi, frozenset({kind}))

    def process(self, e: Event, rng: np.random.Generator | None = None) -> Event:
        if e.kind not in self.acts_on:
            return e
        y0, y1 = e.message
        return Event(e.kind, (self._c * y0 - self._s * y1, self._s * y0 + self._c * y1))


def phase_shift(ps: PhaseShifter, e: Event) -> Event:
    return ps.process(e)


def make_processor(
    u: np.ndarray,
    alpha: float = 0.99,
    mode: Mode | str = Mode.DETERMINISTIC,
    rng: np.random.Generator | None = None,
    label: str = "",
) -> GateProcessor:
    """Processor for any unitary ``u``; internal vectors drawn from ``rng``.

    ``mode`` applies to the back-end only; the front-end always learns
    deterministically.
    """
    t = realify(u)
    dim = t.shape[0]
    rng = np.random.default_rng() if rng is None else rng
    front = LearningMachine.random(MachineConfig(alpha, dim, Mode.DETERMINISTIC), rng)
    back = LearningMachine.random(MachineConfig(alpha, dim, Mode(mode)), rng)
    return GateProcessor(front, t, back, label)


def make_single_qubit_gate(u: np.ndarray, mode=Mode.DETERMINISTIC, alpha: float = 0.99, rng=None) -> GateProcessor:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 unitary, got shape {u.shape}")
    return make_processor(u, alpha, mode, rng)


def make_multi_qubit_gate(g: GateSpec, num_qubits: int, mode=Mode.DETERMINISTIC, alpha: float = 0.99, rng=None) -> GateProcessor:
    """Processor for gate ``g`` embedded in the full ``2**num_qubits`` space."""
    return make_processor(gate_unitary(g, num_qubits), alpha, mode, rng, label=g.render())


def phase_shifter_for(g: GateSpec, num_qubits: int) -> PhaseShifter:
    """Passive shifter rotating every kind in which qubit ``g.qubits[0]`` is 1."""
    bit = qubit_bit(g.qubits[0], num_qubits)
    kinds = frozenset(k for k in range(1 << num_qubits) if k >> bit & 1)
    return PhaseShifter(g.angle, kinds, label=g.render())


__all__ = [
    "GateProcessor",
    "PhaseShifter",
    "make_multi_qubit_gate",
    "make_processor",
    "make_single_qubit_gate",
    "phase_shift",
    "phase_shifter_for",
    "single_qubit_matrix",
]
