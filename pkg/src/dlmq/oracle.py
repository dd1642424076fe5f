"""State-vector reference simulator and the closed forms used to check the event networks.

Bit order: qubit 1 is the most significant bit of a basis-state index, so on
``L`` qubits qubit ``q`` is bit ``L - q``. The event networks use the same
embedding through :func:`gate_unitary`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import CircuitDescription, GateSpec

SQRT1_2 = 1.0 / math.sqrt(2.0)

H = SQRT1_2 * np.array([[1, 1], [1, -1]], dtype=complex)
X = SQRT1_2 * np.array([[1, 1j], [1j, 1]], dtype=complex)
Y = SQRT1_2 * np.array([[1, 1], [-1, 1]], dtype=complex)
NOT = np.array([[0, 1], [1, 0]], dtype=complex)
SPIN = (
    0.5 * np.array([[0, 1], [1, 0]], dtype=complex),
    0.5 * np.array([[0, -1j], [1j, 0]], dtype=complex),
    0.5 * np.array([[1, 0], [0, -1]], dtype=complex),
)

# expectation triples (Q1, Q2, Q3) after the 3-qubit Fourier stage, by period
PERIOD_EXPECTATIONS = {
    1: (0.0, 0.0, 0.0),
    2: (0.0, 0.0, 0.5),
    3: (0.5, 0.375, 0.34375),
    4: (0.0, 0.5, 0.5),
}


class PeriodUnusableError(ValueError):
    """The period cannot produce a nontrivial factor; retry with another base."""


def qubit_bit(q: int, num_qubits: int) -> int:
    """Bit position of 1-based qubit ``q`` within a basis-state index."""
    return num_qubits - q


def phase_shift(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex)


def rotation(v) -> np.ndarray:
    """``exp(i v.S)`` for a rotation vector ``v``."""
    v = np.asarray(v, dtype=float)
    length = float(np.linalg.norm(v))
    if length == 0.0:
        return np.eye(2, dtype=complex)
    vs = sum(c * s for c, s in zip(v, SPIN))
    return np.eye(2) * math.cos(length / 2) + 2j * vs / length * math.sin(length / 2)


def controlled_unitary(u: np.ndarray, controls, target: int, num_qubits: int) -> np.ndarray:
    """Embed a 2x2 ``u`` acting on ``target`` when every control qubit is 1."""
    dim = 1 << num_qubits
    tbit = 1 << qubit_bit(target, num_qubits)
    cmask = 0
    for c in controls:
        cmask |= 1 << qubit_bit(c, num_qubits)
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        if i & cmask != cmask:
            out[i, i] = 1.0
            continue
        b = 1 if i & tbit else 0
        i0 = i & ~tbit
        out[i0, i] += u[0, b]
        out[i0 | tbit, i] += u[1, b]
    return out


def single_qubit_matrix(g: GateSpec) -> np.ndarray:
    if g.kind == "H":
        return H
    if g.kind == "X":
        return X
    if g.kind == "Y":
        return Y
    if g.kind in ("R", "PHASESHIFT"):
        return phase_shift(g.angle)
    raise ValueError(f"{g.kind} is not a single-qubit gate")


def gate_unitary(g: GateSpec, num_qubits: int) -> np.ndarray:
    """Full ``2**L`` unitary of one gate."""
    for q in g.qubits:
        if not 1 <= q <= num_qubits:
            raise ValueError(f"qubit {q} out of range [1, {num_qubits}]")
    if g.kind == "CNOT":
        return controlled_unitary(NOT, g.qubits[:1], g.qubits[1], num_qubits)
    if g.kind == "CPHASE":
        return controlled_unitary(phase_shift(g.angle), g.qubits[:1], g.qubits[1], num_qubits)
    if g.kind == "TOFFOLI":
        return controlled_unitary(NOT, g.qubits[:2], g.qubits[2], num_qubits)
    return controlled_unitary(single_qubit_matrix(g), (), g.qubits[0], num_qubits)


def circuit_unitary(c: CircuitDescription) -> np.ndarray:
    u = np.eye(1 << c.num_qubits, dtype=complex)
    for g in c.gates:
        u = gate_unitary(g, c.num_qubits) @ u
    return u


@dataclass
class StateVector:
    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"{self.num_qubits} qubits need {1 << self.num_qubits} amplitudes, "
                f"got {self.amplitudes.shape}"
            )
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state vector not normalized (norm^2 = {norm})")

    @classmethod
    def basis(cls, index: int, num_qubits: int) -> "StateVector":
        a = np.zeros(1 << num_qubits, dtype=complex)
        a[index] = 1.0
        return cls(a, num_qubits)

    @classmethod
    def from_bits(cls, bits) -> "StateVector":
        """Basis state from qubit values listed as qubit 1, 2, ..."""
        bits = list(bits)
        return cls.basis(bits_to_index(bits), len(bits))


def bits_to_index(bits) -> int:
    bits = list(bits)
    n = len(bits)
    return sum(int(b) << qubit_bit(q, n) for q, b in enumerate(bits, start=1))


def index_to_bits(index: int, num_qubits: int) -> tuple[int, ...]:
    return tuple((index >> qubit_bit(q, num_qubits)) & 1 for q in range(1, num_qubits + 1))


def apply_gate(s: StateVector, g: GateSpec) -> StateVector:
    return StateVector(gate_unitary(g, s.num_qubits) @ s.amplitudes, s.num_qubits)


def run_circuit(c: CircuitDescription, initial: StateVector | int = 0) -> StateVector:
    s = initial if isinstance(initial, StateVector) else StateVector.basis(initial, c.num_qubits)
    for g in c.gates:
        s = apply_gate(s, g)
    return s


def probabilities(s: StateVector) -> np.ndarray:
    return np.abs(s.amplitudes) ** 2


def qubit_expectations_from_probabilities(p: np.ndarray, num_qubits: int) -> np.ndarray:
    idx = np.arange(p.size)
    return np.array(
        [p[(idx >> qubit_bit(q, num_qubits)) & 1 == 1].sum() for q in range(1, num_qubits + 1)]
    )


def qubit_expectations(s: StateVector) -> np.ndarray:
    """Probability that each qubit reads 1, listed qubit 1 first."""
    return qubit_expectations_from_probabilities(probabilities(s), s.num_qubits)


@dataclass(frozen=True)
class PeriodDistribution:
    probs: tuple[float, ...]
    period: int


def period_distribution(M: int, N: int = 8) -> PeriodDistribution:
    """Probability of each frequency ``q`` after Fourier analysing a period-``M`` function on ``N`` points."""
    if not 1 <= M <= N:
        raise ValueError(f"period must lie in [1, {N}], got {M}")
    L = N // M
    extra = N - M * L
    probs = []
    for q in range(N):
        if (q * M) % N == 0:
            # removable singularity: sin(L t)/sin(t) -> +-L, sin((2L+1)t)/sin(t) -> 2L+1
            ratio_sq = float(L * L)
            ratio_odd = float(2 * L + 1)
        else:
            t = math.pi * q * M / N
            st = math.sin(t)
            ratio_sq = (math.sin(L * t) / st) ** 2
            ratio_odd = math.sin((2 * L + 1) * t) / st
        probs.append(M / N**2 * ratio_sq + extra / N**2 * ratio_odd)
    return PeriodDistribution(tuple(probs), M)


def period_expectations(M: int) -> tuple[float, float, float]:
    """(Q1, Q2, Q3) implied by :func:`period_distribution` for the 3-qubit Fourier stage.

    The Fourier stage leaves the frequency bit-reversed, so qubit ``k`` reads
    bit ``k - 1`` of ``q``.
    """
    p = np.array(period_distribution(M, 8).probs)
    q = np.arange(8)
    return tuple(float(p[(q >> k) & 1 == 1].sum()) for k in range(3))


def infer_period(q_estimates) -> int:
    """Period whose expectation triple is nearest to ``q_estimates``."""
    q = np.asarray(q_estimates, dtype=float)
    return min(PERIOD_EXPECTATIONS, key=lambda m: float(np.linalg.norm(q - PERIOD_EXPECTATIONS[m])))


def modexp_table(a: int, N: int, n_bits: int) -> list[int]:
    if not 1 < a < N or math.gcd(a, N) != 1:
        raise ValueError(f"base a={a} must satisfy 1 < a < N and gcd(a, N) = 1 for N={N}")
    return [pow(a, j, N) for j in range(1 << n_bits)]


def find_period(a: int, N: int) -> int:
    if math.gcd(a, N) != 1:
        raise ValueError(f"gcd({a}, {N}) != 1")
    seen = []
    v = 1
    while True:
        seen.append(v)
        v = v * a % N
        if v == 1:
            break
    # one period never repeats a value
    assert len(set(seen)) == len(seen)
    return len(seen)


def shor_postprocess(M: int, a: int, N: int) -> tuple[int, int]:
    if M % 2:
        raise PeriodUnusableError(f"period {M} is odd")
    h = pow(a, M // 2, N)
    if h == N - 1:
        raise PeriodUnusableError(f"{a}^{M // 2} = -1 mod {N}")
    f1, f2 = math.gcd(h - 1, N), math.gcd(h + 1, N)
    if f1 in (1, N) or f2 in (1, N):
        raise PeriodUnusableError(f"period {M} gives trivial factors ({f1}, {f2}) of {N}")
    return min(f1, f2), max(f1, f2)
