"""Time the compiled simplex kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--seeds 40] [--repeat 3]

Workload: every mixed-dominance and justifying-belief LP arising in the weak
and strong traces of seeded random games.
"""
import argparse
import time

from admissibility import lp
from admissibility.dominance import FULL, MIXED, STRONG, SUBSET, WEAK, find_dominator, find_justifying_belief
from admissibility.elimination import eliminate
from admissibility.harness import random_game


def workload(seeds, max_strategies):
    jobs = []
    for seed in range(seeds):
        game = random_game(seed, 2, max_strategies)
        for crit in (WEAK, STRONG):
            for r in eliminate(game, crit, MIXED).rounds:
                for i in range(game.n):
                    for s in r[i]:
                        jobs.append((game, i, s, r))
    return jobs


def run(jobs, backend):
    t0 = time.perf_counter()
    out = []
    for game, i, s, r in jobs:
        for mode, support in ((WEAK, FULL), (STRONG, SUBSET)):
            d = find_dominator(game, i, s, r, mode, MIXED, backend=backend)
            b = find_justifying_belief(game, i, s, r, support, backend=backend)
            out.append((d is None, b is None))
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=40)
    ap.add_argument("--max-strategies", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jobs = workload(args.seeds, args.max_strategies)
    print(f"{len(jobs)} strategy/restriction pairs, 4 LPs each")
    results = {}
    for backend in sorted(lp.KERNELS):
        best = None
        for _ in range(args.repeat):
            dt, out = run(jobs, backend)
            best = dt if best is None else min(best, dt)
        results[backend] = (best, out)
        print(f"{backend:8s} {best:8.3f} s")
    if len(results) == 2:
        (tc, oc), (tp, op) = results["cython"], results["python"]
        assert oc == op, "kernels disagree"
        print(f"speedup  {tp / tc:8.2f}x")
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
