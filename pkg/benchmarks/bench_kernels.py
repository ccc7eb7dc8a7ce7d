"""Benchmark the pure-Python kernels against the compiled ones.

Runs the same seeded corpus of bitmask families through every available
backend, checks that the returned values agree, and prints a timing
table with speedup factors.  Wall-clock numbers are informational only;
the value agreement is the part that must always hold.

Usage:
    python3 benchmarks/bench_kernels.py [--seed N] [--families N] [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from zerotrace._kernels import available_backends


def build_corpus(seed: int, families: int) -> list:
    """Seeded list of (n_points, masks) pairs, mixed small and dense."""
    rng = random.Random(seed)
    corpus = []
    for i in range(families):
        n = rng.randint(4, 12) if i % 3 else rng.randint(10, 14)
        universe = 1 << n
        k = rng.randint(1, min(60, universe))
        masks = sorted(rng.sample(range(universe), k))
        corpus.append((n, masks))
    return corpus


def run_op(backend, op: str, corpus: list) -> tuple:
    """(elapsed seconds, result checksum) for one op over the corpus."""
    fn = getattr(backend, op)
    checksum = 0
    start = time.perf_counter()
    for n, masks in corpus:
        if op == "count_restrictions":
            checksum += fn(masks, (1 << n) - 1)
        elif op in ("vcdim", "ldim"):
            checksum += fn(masks, n)
        elif op == "pi":
            checksum += fn(masks, n, min(n, 6))
        else:  # rho
            checksum += fn(masks, n, min(n, 5))
    return time.perf_counter() - start, checksum


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=20240601)
    parser.add_argument("--families", type=int, default=120)
    parser.add_argument("--repeat", type=int, default=3, help="best of N timings")
    args = parser.parse_args()

    backends = available_backends()
    corpus = build_corpus(args.seed, args.families)
    total = {name: 0.0 for name in backends}
    ops = ["count_restrictions", "vcdim", "pi", "ldim", "rho"]

    print(f"backends: {', '.join(sorted(backends))}")
    print(f"corpus: {args.families} families, seed {args.seed}, best of {args.repeat}")
    print()
    header = f"{'op':<20}" + "".join(f"{name:>12}" for name in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for op in ops:
        times = {}
        sums = {}
        for name, backend in backends.items():
            best = float("inf")
            for _ in range(args.repeat):
                elapsed, checksum = run_op(backend, op, corpus)
                best = min(best, elapsed)
                sums.setdefault(name, checksum)
                if sums[name] != checksum:
                    raise SystemExit(f"{name}.{op}: nondeterministic checksum")
            times[name] = best
            total[name] += best
        if len(set(sums.values())) != 1:
            raise SystemExit(f"{op}: backends disagree: {sums}")
        row = f"{op:<20}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in backends)
        if "pure" in times and "compiled" in times and times["compiled"] > 0:
            row += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(row)

    print("-" * len(header))
    row = f"{'total':<20}" + "".join(f"{total[n] * 1e3:>10.2f}ms" for n in backends)
    if "pure" in total and "compiled" in total and total["compiled"] > 0:
        row += f"{total['pure'] / total['compiled']:>9.1f}x"
    print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
