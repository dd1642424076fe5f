"""Command-line entry point: ``dlmq <subcommand> [options]``.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from . import oracle
from .circuit import ARITY, CircuitError, parse_circuit
from .machine import Mode

SEED_ENV = "DLMQ_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _probability(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return v


def _open_unit(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return v


def _events(text: str) -> int:
    v = int(text)
    if v < 100:
        raise argparse.ArgumentTypeError(f"must be at least 100, got {text}")
    return v


def _sweep(text: str):
    """``KIND:start:stop:step`` in degrees, stop inclusive."""
    parts = text.split(":")
    if len(parts) != 4 or parts[0].upper() not in ARITY:
        raise argparse.ArgumentTypeError(f"expected KIND:start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts[1:])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric sweep bounds in {text!r}") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"sweep needs step > 0 and stop >= start, got {text!r}")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return parts[0].upper(), tuple(float(start + i * step) for i in range(n))


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return ex.DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--alpha", type=_open_unit, default=0.99, help="learning parameter in (0, 1) (default 0.99)")
    common.add_argument("--events", type=_events, default=10_000, help="events per point (default 10000)")
    common.add_argument("--seed", type=int, default=None, help=f"run seed (default ${SEED_ENV} or {ex.DEFAULT_SEED})")
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.DETERMINISTIC.value,
                        help="back-end output selection (default deterministic)")
    common.add_argument("--discard", type=_open_unit, default=0.5,
                        help="fraction of leading events ignored in frequencies (default 0.5)")
    common.add_argument("--out", type=Path, default=None, help="CSV output path")

    p = _Parser(prog="dlmq", description="Event-by-event simulation of quantum circuits with learning machines.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("run-circuit", parents=[common], help="run a circuit file through a machine network")
    s.add_argument("circuit", type=Path)
    s.add_argument("--input", type=int, default=0, help="basis-state index fed as every input event (default 0)")
    s.add_argument("--sweep", type=_sweep, default=None, help="sweep an angle, e.g. PHASESHIFT:0:360:10 (degrees)")

    s = sub.add_parser("hadamard", parents=[common], help="Hadamard interference with random input phases")
    s.add_argument("--p0", type=_probability, default=1.0, help="probability of a 0 input event (default 1)")
    s.add_argument("--points", type=int, default=36, help="number of random phase pairs (default 36)")

    s = sub.add_parser("mzi", parents=[common], help="Mach-Zehnder interferometer phase sweep")
    s.add_argument("--sweep", type=_sweep, default=None, help="phase sweep, default PHASESHIFT:0:360:10")

    sub.add_parser("cnot-reversed", parents=[common], help="four Hadamards around a CNOT, all basis inputs")

    s = sub.add_parser("shor", parents=[common], help="Shor period finding for N = 15")
    s.add_argument("--a", type=int, choices=ex.SHOR_BASES, default=7)
    s.add_argument("--window", type=int, default=100, help="events per trajectory point (default 100)")

    s = sub.add_parser("oracle", help="state-vector probabilities and qubit expectations for a circuit file")
    s.add_argument("circuit", type=Path)
    s.add_argument("--input", type=int, default=0, help="initial basis-state index (default 0)")
    s.add_argument("--out", type=Path, default=None, help="optional CSV output path")
    return p


def _config(args, **kw) -> ex.ExperimentConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return ex.ExperimentConfig(
        name=args.command, alpha=args.alpha, events_per_point=args.events, seed=seed,
        mode=args.mode, discard_fraction=args.discard, **kw,
    )


def _read_circuit(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RuntimeError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_circuit(text)
    except CircuitError as exc:
        raise RuntimeError(f"{path}: {exc}") from exc


def _write(result, args, cfg, tag=None) -> None:
    path = args.out or Path(ex.default_filename(args.command, cfg, tag))
    ex.emit_csv(result, path)
    print(f"wrote {len(result.rows)} rows to {path}")


def _cmd_oracle(args) -> None:
    c = _read_circuit(args.circuit)
    if not 0 <= args.input < 1 << c.num_qubits:
        raise UsageError(f"--input must lie in [0, {(1 << c.num_qubits) - 1}]")
    s = oracle.run_circuit(c, args.input)
    p = oracle.probabilities(s)
    q = oracle.qubit_expectations(s)
    print("state,bits,probability")
    for k, pk in enumerate(p):
        print(f"{k},{''.join(map(str, oracle.index_to_bits(k, c.num_qubits)))},{pk:.6g}")
    print("qubit,expectation")
    for i, qk in enumerate(q, start=1):
        print(f"{i},{qk:.6g}")
    if args.out:
        res = ex.ExperimentResult("oracle", ["state", "probability"], [(k, float(pk)) for k, pk in enumerate(p)])
        ex.emit_csv(res, args.out)


def dispatch(args) -> None:
    cmd = args.command
    if cmd == "oracle":
        _cmd_oracle(args)
        return
    if cmd == "hadamard":
        if args.points < 1:
            raise UsageError("--points must be positive")
        cfg = _config(args, p0=args.p0, points=args.points)
        _write(ex.run_hadamard(cfg), args, cfg, args.p0)
    elif cmd == "mzi":
        angles = None
        if args.sweep is not None:
            kind, angles = args.sweep
            if kind != "PHASESHIFT":
                raise UsageError("mzi sweeps only the PHASESHIFT angle")
        cfg = _config(args, angles=angles)
        _write(ex.run_mzi(cfg), args, cfg)
    elif cmd == "cnot-reversed":
        cfg = _config(args)
        _write(ex.run_reversed_cnot(cfg), args, cfg)
    elif cmd == "shor":
        if args.window < 1:
            raise UsageError("--window must be positive")
        cfg = _config(args, a=args.a, window=args.window)
        res = ex.run_shor(cfg)
        _write(res, args, cfg, args.a)
        est = ", ".join(f"{v:.4f}" for v in res.meta["estimate"])
        print(f"(Q1, Q2, Q3) = ({est}); period {res.meta['period']}; factors {res.meta['factors']}")
    elif cmd == "run-circuit":
        c = _read_circuit(args.circuit)
        if not 0 <= args.input < 1 << c.num_qubits:
            raise UsageError(f"--input must lie in [0, {(1 << c.num_qubits) - 1}]")
        cfg = _config(args)
        kind, angles = args.sweep if args.sweep else (None, None)
        if kind is not None and not any(g.kind == kind for g in c.gates):
            raise UsageError(f"circuit has no {kind} gate to sweep")
        res = ex.run_circuit_sweep(cfg, c, args.input, kind, angles)
        if args.out is None:
            args.out = Path(ex.default_filename(f"run-circuit_{args.circuit.stem}", cfg))
        _write(res, args, cfg)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        dispatch(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:
        # --help exits 0 through argparse
        return int(exc.code or 0)
    except (RuntimeError, OSError, ValueError) as exc:
        print(f"dlmq: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
