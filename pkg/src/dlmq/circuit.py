"""Line-oriented circuit description format.

::

    # Mach-Zehnder interferometer
    QUBITS 1
    X 1
    PHASESHIFT 1 pi/3
    X 1

Controls come first and the target last (``CNOT 3 5``, ``TOFFOLI 2 6 7``,
``CPHASE 1 2 pi/2``). Angles are radians: a decimal, ``pi``, ``-pi``,
``pi/<k>`` or ``-pi/<k>``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

ARITY = {
    "H": 1,
    "X": 1,
    "Y": 1,
    "R": 1,
    "PHASESHIFT": 1,
    "CNOT": 2,
    "CPHASE": 2,
    "TOFFOLI": 3,
}
ANGLED = frozenset({"R", "CPHASE", "PHASESHIFT"})

_PI_RE = re.compile(r"^(?P<sign>[-+]?)pi(?:/(?P<k>\d+))?$")


class CircuitError(ValueError):
    """Invalid circuit, optionally pointing at the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class GateSpec:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in ARITY:
            raise CircuitError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != ARITY[self.kind]:
            raise CircuitError(
                f"{self.kind} takes {ARITY[self.kind]} qubit(s), got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"{self.kind} qubits must be distinct, got {self.qubits}")
        if (self.angle is not None) != (self.kind in ANGLED):
            need = "requires" if self.kind in ANGLED else "takes no"
            raise CircuitError(f"{self.kind} {need} an angle")

    def render(self) -> str:
        parts = [self.kind, *map(str, self.qubits)]
        if self.angle is not None:
            parts.append(repr(float(self.angle)))
        return " ".join(parts)


@dataclass(frozen=True)
class CircuitDescription:
    num_qubits: int
    gates: tuple[GateSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 1:
            raise CircuitError(f"need at least one qubit, got {self.num_qubits}")
        for g in self.gates:
            for q in g.qubits:
                if not 1 <= q <= self.num_qubits:
                    raise CircuitError(f"qubit {q} out of range [1, {self.num_qubits}]")

    def render(self) -> str:
        return "\n".join([f"QUBITS {self.num_qubits}", *(g.render() for g in self.gates)]) + "\n"

    def with_angle(self, kind: str, angle: float) -> "CircuitDescription":
        """Copy with every gate of ``kind`` set to ``angle``."""
        gates = [GateSpec(g.kind, g.qubits, angle) if g.kind == kind else g for g in self.gates]
        return CircuitDescription(self.num_qubits, gates)


def parse_angle(token: str) -> float:
    m = _PI_RE.match(token.strip().lower())
    if m:
        k = int(m["k"]) if m["k"] else 1
        if k == 0:
            raise ValueError("division by zero in angle")
        value = math.pi / k
        return -value if m["sign"] == "-" else value
    value = float(token)
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {token!r}")
    return value


def parse_circuit(text: str) -> CircuitDescription:
    num_qubits = None
    gates: list[GateSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].upper()
        if num_qubits is None:
            if head != "QUBITS":
                raise CircuitError("missing 'QUBITS <L>' header", lineno)
            if len(tokens) != 2:
                raise CircuitError("header must be 'QUBITS <L>'", lineno)
            try:
                num_qubits = int(tokens[1])
            except ValueError:
                raise CircuitError(f"bad qubit count {tokens[1]!r}", lineno) from None
            if num_qubits < 1:
                raise CircuitError(f"need at least one qubit, got {num_qubits}", lineno)
            continue
        if head == "QUBITS":
            raise CircuitError("duplicate QUBITS header", lineno)
        if head not in ARITY:
            raise CircuitError(f"unknown gate {tokens[0]!r}", lineno)
        n = ARITY[head]
        expected = n + (head in ANGLED)
        args = tokens[1:]
        if len(args) != expected:
            what = f"{n} qubit(s)" + (" and an angle" if head in ANGLED else "")
            raise CircuitError(f"{head} takes {what}, got {len(args)} argument(s)", lineno)
        try:
            qubits = tuple(int(a) for a in args[:n])
        except ValueError:
            raise CircuitError(f"bad qubit index in {' '.join(args[:n])!r}", lineno) from None
        for q in qubits:
            if not 1 <= q <= num_qubits:
                raise CircuitError(f"qubit {q} out of range [1, {num_qubits}]", lineno)
        angle = None
        if head in ANGLED:
            try:
                angle = parse_angle(args[-1])
            except ValueError:
                raise CircuitError(f"malformed angle {args[-1]!r}", lineno) from None
        try:
            gates.append(GateSpec(head, qubits, angle))
        except CircuitError as exc:
            raise CircuitError(str(exc), lineno) from None
    if num_qubits is None:
        raise CircuitError("missing 'QUBITS <L>' header", 1)
    return CircuitDescription(num_qubits, gates)


def render(c: CircuitDescription) -> str:
    return c.render()


# canned circuits


def mzi_circuit(phi: float = 0.0) -> CircuitDescription:
    return CircuitDescription(1, [GateSpec("X", (1,)), GateSpec("PHASESHIFT", (1,), phi), GateSpec("X", (1,))])


def reversed_cnot_circuit() -> CircuitDescription:
    """Four Hadamards around a CNOT; acts as a CNOT with control 2, target 1."""
    h1, h2 = GateSpec("H", (1,)), GateSpec("H", (2,))
    return CircuitDescription(2, [h1, h2, GateSpec("CNOT", (1, 2)), h1, h2])


def _controlled_swap(c: int, a: int, b: int) -> list[GateSpec]:
    return [GateSpec("CNOT", (b, a)), GateSpec("TOFFOLI", (c, a, b)), GateSpec("CNOT", (b, a))]


SHOR_BASES = (7, 11)


def shor_circuit(a: int) -> CircuitDescription:
    """Seven-qubit period finding for N = 15.

    Qubits 1-3 hold ``j`` (qubit 3 least significant), qubits 4-7 hold
    ``a**j mod 15`` (qubit 7 least significant). The Fourier stage has no
    final swaps, so qubit 1 ends up carrying the least significant bit of
    the measured frequency.
    """
    g = [GateSpec("H", (q,)) for q in (1, 2, 3)]
    if a == 11:
        # j odd: 0001 -> 1011
        g += [GateSpec("CNOT", (3, 4)), GateSpec("CNOT", (3, 6))]
    elif a == 7:
        # times 7 if j0, then times 4 (a rotation by two places) if j1
        g += [GateSpec("CNOT", (3, 5)), GateSpec("CNOT", (3, 6))]
        g += _controlled_swap(2, 4, 6) + _controlled_swap(2, 5, 7)
    else:
        raise ValueError(f"unsupported base a={a}; choose one of {SHOR_BASES}")
    g += [
        GateSpec("H", (1,)),
        GateSpec("CPHASE", (2, 1), math.pi / 2),
        GateSpec("CPHASE", (3, 1), math.pi / 4),
        GateSpec("H", (2,)),
        GateSpec("CPHASE", (3, 2), math.pi / 2),
        GateSpec("H", (3,)),
    ]
    return CircuitDescription(7, g)
