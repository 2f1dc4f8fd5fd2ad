#!/usr/bin/env python3
"""Survey the product formula over Q on random inputs and tabulate how the
local factors of {p, q} distribute for small odd primes."""
import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from k2sym.arith import primes_below
from k2sym.k2q import hilbert_reciprocity, quadratic_reciprocity


@dataclass(frozen=True)
class Config:
    trials: int = 2000
    bound: int = 10**6
    prime_bound: int = 100
    seed: int = 0


def random_product_check(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    violations = 0
    for _ in range(cfg.trials):
        x = Fraction(rng.randint(1, cfg.bound) * rng.choice([1, -1]), rng.randint(1, cfg.bound))
        y = Fraction(rng.randint(1, cfg.bound) * rng.choice([1, -1]), rng.randint(1, cfg.bound))
        if hilbert_reciprocity(x, y).product != 1:
            violations += 1
            print(f"  product formula FAILED at x={x}, y={y}")
    return violations


def sign_pattern_table(cfg: Config) -> Counter:
    patterns = Counter()
    odd = [p for p in primes_below(cfg.prime_bound) if p > 2]
    for p in odd:
        for q in odd:
            if p >= q:
                continue
            rec = quadratic_reciprocity(p, q)
            patterns[(rec.legendre_p_q, rec.legendre_q_p)] += 1
    return patterns


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--prime-bound", type=int, default=100)
    args = ap.parse_args()
    cfg = Config(trials=args.trials, seed=args.seed, prime_bound=args.prime_bound)

    print(f"checking the product formula on {cfg.trials} random pairs ...")
    bad = random_product_check(cfg)
    print(f"  violations: {bad}")

    print(f"\nlegendre sign patterns for unordered odd prime pairs below {cfg.prime_bound}:")
    table = sign_pattern_table(cfg)
    total = sum(table.values())
    for (a, b), n in sorted(table.items()):
        print(f"  ({a:+d}, {b:+d}): {n:5d}  ({n / total:.1%})")


if __name__ == "__main__":
    main()
