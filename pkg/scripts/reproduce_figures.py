"""Write the CSV behind every canned experiment into one directory.

    python scripts/reproduce_figures.py --out results/ --seed 42
"""
import argparse
from pathlib import Path

from dlmq import experiments as ex
from dlmq import oracle
from dlmq.machine import Mode


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--seed", type=int, default=ex.DEFAULT_SEED)
    ap.add_argument("--events", type=int, default=10_000)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    def emit(res, name):
        path = ex.emit_csv(res, args.out / name)
        print(f"{path}: {len(res.rows)} rows")
        return res

    table = ex.ExperimentResult("period", ["q", *(f"M{m}" for m in range(1, 5))])
    dists = [oracle.period_distribution(m).probs for m in range(1, 5)]
    table.rows = [(q, *(d[q] for d in dists)) for q in range(8)]
    emit(table, "period_table.csv")

    for p0 in (1.0, 0.5, 0.25):
        cfg = ex.ExperimentConfig(p0=p0, seed=args.seed, events_per_point=args.events)
        emit(ex.run_hadamard(cfg), f"hadamard_p0_{p0:g}.csv")

    emit(ex.run_mzi(ex.ExperimentConfig(seed=args.seed, events_per_point=args.events)), "mzi.csv")

    emit(ex.run_reversed_cnot(ex.ExperimentConfig(seed=args.seed, events_per_point=200)), "cnot_reversed_dlm.csv")
    cfg = ex.ExperimentConfig(seed=args.seed, events_per_point=2000, mode=Mode.STOCHASTIC)
    emit(ex.run_reversed_cnot(cfg), "cnot_reversed_slm.csv")

    for a in (7, 11):
        for alpha in (0.99, 0.999):
            for mode in Mode:
                cfg = ex.ExperimentConfig(a=a, alpha=alpha, mode=mode, seed=args.seed, events_per_point=args.events)
                res = emit(ex.run_shor(cfg), f"shor_a{a}_{alpha:g}_{mode.value}.csv")
                est = ", ".join(f"{v:.3f}" for v in res.meta["estimate"])
                print(f"    (Q1, Q2, Q3) = ({est}), period {res.meta['period']}, factors {res.meta['factors']}")


if __name__ == "__main__":
    main()
