"""Independent DE/rand/1/bin reference used to confirm the colony sanity threshold.

Runs the classic scheme on the 10-D sphere (pop 20, CR 0.3, F 0.5, 500
generations) over many seeds and prints the distribution of final best values.
"""
import sys

import numpy as np


def de_rand_1_bin(dim, lo, hi, pop, cr, f, gens, seed):
    rng = np.random.default_rng(seed)
    x = rng.uniform(lo, hi, size=(pop, dim))
    fit = np.sum(x * x, axis=1)
    for _ in range(gens):
        for t in range(pop):
            others = [k for k in range(pop) if k != t]
            r1, r2, r3 = rng.choice(others, size=3, replace=False)
            mutant = x[r1] + f * (x[r2] - x[r3])
            forced = rng.integers(dim)
            mask = rng.random(dim) < cr
            mask[forced] = True
            trial = np.clip(np.where(mask, mutant, x[t]), lo, hi)
            tf = float(np.sum(trial * trial))
            if tf <= fit[t]:
                x[t], fit[t] = trial, tf
    return float(fit.min())


def main():
    bound = float(sys.argv[1]) if len(sys.argv) > 1 else 100.0
    seeds = int(sys.argv[2]) if len(sys.argv) > 2 else 30
    best = [de_rand_1_bin(10, -bound, bound, 20, 0.3, 0.5, 500, s) for s in range(seeds)]
    best.sort()
    print(f"bound={bound} seeds={seeds}")
    print(f"min={best[0]:.3e} median={best[len(best) // 2]:.3e} max={best[-1]:.3e}")
    print(f"fraction <= 1e-3: {sum(b <= 1e-3 for b in best) / len(best):.3f}")


if __name__ == "__main__":
    main()
