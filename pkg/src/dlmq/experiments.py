"""Canned experiments: Hadamard interference, Mach-Zehnder sweep, reversed CNOT, Shor for N = 15.

Every sweep point ``i`` runs with its own seed ``config.seed + i`` so points can
be computed independently.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import oracle
from .circuit import CircuitDescription, GateSpec, SHOR_BASES, mzi_circuit, reversed_cnot_circuit, shor_circuit
from .machine import Mode
from .network import build_network, constant_source, mixed_source, run

DEFAULT_SEED = 42
SHOR_INITIAL_BITS = (0, 0, 0, 0, 0, 0, 1)
SHOR_N = 15
CNOT_INPUTS = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    alpha: float = 0.99
    events_per_point: int = 10_000
    discard_fraction: float = 0.5
    seed: int = DEFAULT_SEED
    mode: Mode = Mode.DETERMINISTIC
    angles: tuple[float, ...] | None = None  # degrees
    points: int = 36
    p0: float = 1.0
    a: int = 7
    window: int = 100

    def __post_init__(self):
        self.mode = Mode(self.mode)
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.discard_fraction < 1.0:
            raise ValueError(f"discard_fraction must lie in (0, 1), got {self.discard_fraction}")
        if self.events_per_point < 100:
            raise ValueError(f"events_per_point must be >= 100, got {self.events_per_point}")
        if not 0.0 <= self.p0 <= 1.0:
            raise ValueError(f"p0 must lie in [0, 1], got {self.p0}")
        if self.points < 1 or self.window < 1:
            raise ValueError("points and window must be positive")

    @property
    def discard(self) -> int:
        return int(self.events_per_point * self.discard_fraction)

    def point_seed(self, i: int) -> int:
        return self.seed + i


@dataclass
class ExperimentResult:
    name: str
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)


def hadamard_probability(p0: float, dpsi: float) -> float:
    """Output-0 probability of a Hadamard fed amplitudes ``sqrt(p0) e^{i psi0}``, ``sqrt(1-p0) e^{i psi1}``."""
    return (1.0 + 2.0 * math.sqrt(p0 * (1.0 - p0)) * math.cos(dpsi)) / 2.0


def run_hadamard(config: ExperimentConfig) -> ExperimentResult:
    circuit = CircuitDescription(1, [GateSpec("H", (1,))])
    res = ExperimentResult(
        "hadamard",
        ["phi_deg", "psi0_deg", "psi1_deg", "n0", "n1", "n0_frac", "n1_frac", "oracle_b0", "oracle_b1"],
        meta={"p0": config.p0},
    )
    n, skip = config.events_per_point, config.discard
    for i in range(config.points):
        seed = config.point_seed(i)
        rng = np.random.default_rng(seed)
        psi0, psi1 = rng.uniform(0.0, 2.0 * math.pi, size=2)
        src = mixed_source(
            [config.p0, 1.0 - config.p0],
            [(math.cos(psi0), math.sin(psi0)), (math.cos(psi1), math.sin(psi1))],
            rng,
        )
        net = build_network(circuit, config.alpha, config.mode, seed)
        log = run(net, src, n, skip, keep_kinds=False)
        n0, n1 = (int(c) for c in log.output_counts)
        b0 = hadamard_probability(config.p0, psi0 - psi1)
        res.rows.append((
            math.degrees(psi0 - psi1) % 360.0, math.degrees(psi0), math.degrees(psi1),
            n0, n1, n0 / (n0 + n1), n1 / (n0 + n1), b0, 1.0 - b0,
        ))
    return res


def run_mzi(config: ExperimentConfig) -> ExperimentResult:
    angles = config.angles if config.angles is not None else tuple(range(0, 361, 10))
    res = ExperimentResult(
        "mzi", ["phi_deg", "n0_frac", "n2_frac", "n3_frac", "oracle_sin2", "oracle_cos2"]
    )
    counts = []
    n, skip = config.events_per_point, config.discard
    for i, phi_deg in enumerate(angles):
        seed = config.point_seed(i)
        rng = np.random.default_rng(seed)
        psi0 = rng.uniform(0.0, 2.0 * math.pi)
        phi = math.radians(phi_deg)
        net = build_network(mzi_circuit(phi), config.alpha, config.mode, seed)
        log = run(net, constant_source(0, (math.cos(psi0), math.sin(psi0))), n, skip, keep_kinds=False)
        n0, n1 = (int(c) for c in log.stage_counts[0])
        n2, n3 = (int(c) for c in log.output_counts)
        counts.append((n0, n1, n2, n3))
        res.rows.append((
            float(phi_deg), n0 / (n0 + n1), n2 / (n2 + n3), n3 / (n2 + n3),
            math.sin(phi / 2) ** 2, math.cos(phi / 2) ** 2,
        ))
    res.meta["counts"] = counts
    return res


def run_reversed_cnot(config: ExperimentConfig, inputs=CNOT_INPUTS) -> ExperimentResult:
    """Four Hadamards around a CNOT, fed one basis state per row.

    ``f<k>`` is the frequency of output kind ``k`` where ``k = 2*q1 + q2``.
    """
    circuit = reversed_cnot_circuit()
    res = ExperimentResult(
        "cnot-reversed",
        ["events", "q1", "q2", "f0", "f1", "f2", "f3", "oracle_f0", "oracle_f1", "oracle_f2", "oracle_f3"],
    )
    n, skip = config.events_per_point, config.discard
    for i, bits in enumerate(inputs):
        kind = oracle.bits_to_index(bits)
        net = build_network(circuit, config.alpha, config.mode, config.point_seed(i))
        log = run(net, constant_source(kind), n, skip, keep_kinds=False)
        expected = oracle.probabilities(oracle.run_circuit(circuit, kind))
        res.rows.append((n, *bits, *map(float, log.frequencies()), *map(float, expected)))
    return res


def windowed_qubits(output_kinds: np.ndarray, num_qubits: int, qubits, window: int) -> np.ndarray:
    """Mean of each qubit's bit over consecutive non-overlapping windows."""
    kinds = np.asarray(output_kinds)
    usable = (kinds.size // window) * window
    bits = np.stack([(kinds[:usable] >> oracle.qubit_bit(q, num_qubits)) & 1 for q in qubits], axis=1)
    return bits.reshape(-1, window, len(qubits)).mean(axis=1)


def run_shor(config: ExperimentConfig) -> ExperimentResult:
    if config.a not in SHOR_BASES:
        raise ValueError(f"unsupported base a={config.a}; choose one of {SHOR_BASES}")
    circuit = shor_circuit(config.a)
    kind = oracle.bits_to_index(SHOR_INITIAL_BITS)
    expected = oracle.qubit_expectations(oracle.run_circuit(circuit, kind))[:3]
    expected[np.abs(expected) < 1e-12] = 0.0
    net = build_network(circuit, config.alpha, config.mode, config.seed)
    n = config.events_per_point
    log = run(net, constant_source(kind), n, config.discard)
    windows = windowed_qubits(log.output_kinds, circuit.num_qubits, (1, 2, 3), config.window)
    res = ExperimentResult(
        "shor", ["window_index", "q1", "q2", "q3", "oracle_q1", "oracle_q2", "oracle_q3"]
    )
    for w, q in enumerate(windows):
        res.rows.append((w, *map(float, q), *map(float, expected)))
    tail = log.output_kinds[config.discard:]
    estimate = windowed_qubits(tail, circuit.num_qubits, (1, 2, 3), tail.size)[0]
    period = oracle.infer_period(estimate)
    res.meta.update(a=config.a, estimate=tuple(map(float, estimate)), period=period)
    try:
        res.meta["factors"] = oracle.shor_postprocess(period, config.a, SHOR_N)
    except oracle.PeriodUnusableError as exc:
        res.meta["factors"] = None
        res.meta["error"] = str(exc)
    return res


def run_circuit_sweep(
    config: ExperimentConfig,
    circuit: CircuitDescription,
    input_kind: int = 0,
    sweep_kind: str | None = None,
    angles=None,
) -> ExperimentResult:
    """Run an arbitrary circuit, optionally sweeping the angle of every ``sweep_kind`` gate (degrees)."""
    nk = 1 << circuit.num_qubits
    res = ExperimentResult(
        "run-circuit",
        ["point", "angle_deg", *(f"f{k}" for k in range(nk)), *(f"oracle_f{k}" for k in range(nk))],
    )
    points = [None] if sweep_kind is None else list(angles)
    for i, deg in enumerate(points):
        c = circuit if deg is None else circuit.with_angle(sweep_kind, math.radians(deg))
        net = build_network(c, config.alpha, config.mode, config.point_seed(i))
        log = run(net, constant_source(input_kind), config.events_per_point, config.discard, keep_kinds=False)
        expected = oracle.probabilities(oracle.run_circuit(c, input_kind))
        res.rows.append((i, float("nan") if deg is None else float(deg), *map(float, log.frequencies()), *map(float, expected)))
    return res


def default_filename(experiment: str, config: ExperimentConfig, tag=None) -> str:
    parts = [experiment]
    if tag is not None:
        parts.append(f"{tag:g}" if isinstance(tag, float) else str(tag))
    parts += [f"{config.alpha:g}", config.mode.value]
    return "_".join(parts) + ".csv"


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.6g}"


def emit_csv(result: ExperimentResult, path) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(result.columns)
            for row in result.rows:
                w.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


__all__ = [
    "DEFAULT_SEED",
    "ExperimentConfig",
    "ExperimentResult",
    "default_filename",
    "emit_csv",
    "hadamard_probability",
    "run_circuit_sweep",
    "run_hadamard",
    "run_mzi",
    "run_reversed_cnot",
    "run_shor",
    "windowed_qubits",
]
