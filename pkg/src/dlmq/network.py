"""Wiring gate processors into a sequential event pipeline."""
from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

import numpy as np

from .circuit import CircuitDescription
from .gates import GateProcessor, PhaseShifter, make_multi_qubit_gate, phase_shifter_for
from .machine import Event, Mode

Stage = Union[GateProcessor, PhaseShifter]
Source = Callable[[int], Iterator[Event]]


@dataclass
class Network:
    processors: list[Stage]
    num_qubits: int
    mode: Mode = Mode.DETERMINISTIC
    rng: np.random.Generator = field(default_factory=np.random.default_rng, repr=False)

    def __post_init__(self):
        dim = 2 << self.num_qubits
        for p in self.processors:
            if isinstance(p, GateProcessor) and p.dim != dim:
                raise ValueError(f"processor {p.label!r} has dim {p.dim}, network needs {dim}")

    @property
    def num_kinds(self) -> int:
        return 1 << self.num_qubits

    @property
    def machines(self):
        for p in self.processors:
            if isinstance(p, GateProcessor):
                yield p.front
                yield p.back

    def process(self, e: Event) -> tuple[Event, list[int]]:
        """One event through every stage; also returns the kind leaving each stage."""
        kinds = []
        for p in self.processors:
            e = p.process(e, self.rng)
            kinds.append(e.kind)
        return e, kinds


def _seed_sequence(seed) -> np.random.SeedSequence:
    return seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)


def build_network(
    c: CircuitDescription,
    alpha: float = 0.99,
    mode: Mode | str = Mode.DETERMINISTIC,
    seed: int | np.random.SeedSequence | None = 0,
) -> Network:
    """One processor per gate; internal vectors and stochastic draws come from ``seed``.

    ``PHASESHIFT`` gates become passive shifters. ``mode`` affects back-ends only.
    """
    mode = Mode(mode)
    rng = np.random.default_rng(_seed_sequence(seed))
    stages: list[Stage] = []
    for g in c.gates:
        if g.kind == "PHASESHIFT":
            stages.append(phase_shifter_for(g, c.num_qubits))
        else:
            stages.append(make_multi_qubit_gate(g, c.num_qubits, mode=mode, alpha=alpha, rng=rng))
    return Network(stages, c.num_qubits, mode, rng)


@dataclass
class EventLog:
    """Counters from a run.

    ``output_counts`` and ``stage_counts`` only include events after the first
    ``discard`` events. ``output_kinds`` (every output kind, in order) is kept
    unless disabled; ``trace`` holds full output events only when requested,
    and ``recent`` is a bounded ring of the latest outputs.
    """

    num_kinds: int
    discard: int = 0
    total: int = 0
    input_counts: np.ndarray = None
    output_counts: np.ndarray = None
    stage_counts: np.ndarray = None
    output_kinds: np.ndarray | None = None
    trace: list[Event] | None = None
    recent: deque = None

    @property
    def counted(self) -> int:
        return int(self.output_counts.sum())

    def frequencies(self) -> np.ndarray:
        n = self.output_counts.sum()
        return self.output_counts / n if n else np.zeros(self.num_kinds)

    def stage_frequencies(self, stage: int) -> np.ndarray:
        row = self.stage_counts[stage]
        n = row.sum()
        return row / n if n else np.zeros(self.num_kinds)

    def digest(self) -> str:
        h = hashlib.sha256()
        for arr in (self.input_counts, self.output_counts, self.stage_counts):
            h.update(np.ascontiguousarray(arr, dtype=np.int64).tobytes())
        if self.output_kinds is not None:
            h.update(np.ascontiguousarray(self.output_kinds, dtype=np.int64).tobytes())
        if self.trace is not None:
            h.update(np.array([[e.kind, *e.message] for e in self.trace], dtype=float).tobytes())
        return h.hexdigest()


def run(
    n: Network,
    source: Source | Iterator[Event],
    count: int,
    discard: int = 0,
    *,
    keep_kinds: bool = True,
    trace: bool = False,
    ring: int = 64,
) -> EventLog:
    """Feed ``count`` events through ``n``, strictly one at a time."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not 0 <= discard < count:
        raise ValueError(f"discard must lie in [0, {count}), got {discard}")
    events = source(count) if callable(source) else source
    nk = n.num_kinds
    log = EventLog(
        num_kinds=nk,
        discard=discard,
        input_counts=np.zeros(nk, dtype=np.int64),
        output_counts=np.zeros(nk, dtype=np.int64),
        stage_counts=np.zeros((len(n.processors), nk), dtype=np.int64),
        output_kinds=np.empty(count, dtype=np.int64) if keep_kinds else None,
        trace=[] if trace else None,
        recent=deque(maxlen=ring),
    )
    stages = n.processors
    rng = n.rng
    done = 0
    for i, e in zip(range(count), events):
        log.input_counts[e.kind] += 1
        counting = i >= discard
        for s, p in enumerate(stages):
            e = p.process(e, rng)
            if counting:
                log.stage_counts[s, e.kind] += 1
        if counting:
            log.output_counts[e.kind] += 1
        if keep_kinds:
            log.output_kinds[i] = e.kind
        if trace:
            log.trace.append(e)
        log.recent.append(e)
        done += 1
    if done != count:
        raise ValueError(f"source ran dry after {done} of {count} events")
    log.total = count
    return log


# event sources


def constant_source(kind: int, message: tuple[float, float] = (1.0, 0.0)) -> Source:
    e = Event(kind, (float(message[0]), float(message[1])))

    def gen(count: int) -> Iterator[Event]:
        for _ in range(count):
            yield e

    return gen


def mixed_source(probs, messages, rng: np.random.Generator) -> Source:
    """Kind ``k`` with probability ``probs[k]``, carrying ``messages[k]``."""
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or np.any(probs < 0) or not np.isclose(probs.sum(), 1.0):
        raise ValueError("probs must be a probability vector")
    events = [Event(k, (float(m[0]), float(m[1]))) for k, m in enumerate(messages)]
    cum = np.cumsum(probs)
    cum[-1] = 1.0

    def gen(count: int) -> Iterator[Event]:
        kinds = np.searchsorted(cum, rng.random(count), side="right")
        for k in kinds:
            yield events[int(k)]

    return gen


def amplitude_source(amplitudes, rng: np.random.Generator) -> Source:
    """Events distributed as ``|a_k|^2`` with message ``a_k / |a_k|``."""
    a = np.asarray(amplitudes, dtype=complex)
    p = np.abs(a) ** 2
    msgs = [(z.real / abs(z), z.imag / abs(z)) if abs(z) > 1e-12 else (1.0, 0.0) for z in a]
    return mixed_source(p / p.sum(), msgs, rng)
