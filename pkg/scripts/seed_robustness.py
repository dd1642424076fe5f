"""How often the short-run checks pass when only the seed changes.

For each seed base, runs the Hadamard sweep (p0 = 0.5 and 0.25), the reversed
CNOT at 200 events (deterministic) and at 2000 events (stochastic), and
reports the fraction of bases meeting each threshold.
"""
import argparse

import numpy as np

from dlmq import experiments as ex
from dlmq.machine import Mode


def correct_fraction(res):
    f = np.array([[r[res.columns.index(f"f{k}")] for k in range(4)] for r in res.rows])
    o = np.array([[r[res.columns.index(f"oracle_f{k}")] for k in range(4)] for r in res.rows])
    return f[np.arange(len(f)), o.argmax(axis=1)].min()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bases", type=int, default=20, help="number of seed bases")
    ap.add_argument("--stride", type=int, default=100, help="distance between seed bases")
    ap.add_argument("--skip-hadamard", action="store_true")
    args = ap.parse_args()
    seeds = [i * args.stride for i in range(args.bases)]

    checks = {
        "cnot dlm 200 >= 0.99": lambda s: correct_fraction(
            ex.run_reversed_cnot(ex.ExperimentConfig(seed=s, events_per_point=200))) >= 0.99,
        "cnot slm 2000 >= 0.93": lambda s: correct_fraction(
            ex.run_reversed_cnot(ex.ExperimentConfig(seed=s, events_per_point=2000, mode=Mode.STOCHASTIC))) >= 0.93,
    }
    if not args.skip_hadamard:
        for p0 in (0.5, 0.25):
            def had(s, p0=p0):
                res = ex.run_hadamard(ex.ExperimentConfig(seed=s, p0=p0))
                return np.abs(res.column("n0_frac") - res.column("oracle_b0")).max() <= 0.03
            checks[f"hadamard p0={p0} <= 0.03"] = had

    for name, check in checks.items():
        passed = sum(bool(check(s)) for s in seeds)
        print(f"{name}: {passed}/{len(seeds)} seed bases pass")


if __name__ == "__main__":
    main()
