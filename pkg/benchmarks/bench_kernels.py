"""Time the Python and Cython kernels on identical inputs.

    python benchmarks/bench_kernels.py --sizes 16 32 64 --repeat 5
"""

from __future__ import annotations

import argparse
import random
import timeit
from fractions import Fraction

from ward.kernels import available_backends


def make_inputs(n: int, seed: int):
    rng = random.Random(seed)

    def rat():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 20))

    a = [rat() for _ in range(n + 1)]
    b = [rat() for _ in range(n + 1)]
    a[0] = a[0] or Fraction(1)
    g = [Fraction(0)] + [rat() for _ in range(n)]
    return a, b, g


def bench(mod, n: int, repeat: int, seed: int):
    a, b, g = make_inputs(n, seed)
    jobs = {
        "convolve": lambda: mod.convolve(a, b, n),
        "reciprocal": lambda: mod.reciprocal(a, n),
        "compose": lambda: mod.compose(a, g, n),
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in jobs.items()}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the Python fallback only")
    for n in args.sizes:
        a, b, g = make_inputs(n, args.seed)
        # both backends must agree before their timings mean anything
        outs = {name: (m.convolve(a, b, n), m.reciprocal(a, n), m.compose(a, g, n))
                for name, m in backends.items()}
        if len(set(map(repr, outs.values()))) != 1:
            raise SystemExit(f"backends disagree at n={n}")
        times = {name: bench(m, n, args.repeat, args.seed) for name, m in backends.items()}
        for op in ("convolve", "reciprocal", "compose"):
            row = "  ".join(f"{name} {times[name][op] * 1e3:9.3f} ms" for name in times)
            speed = ""
            if "cython" in times:
                speed = f"  speedup {times['python'][op] / times['cython'][op]:.2f}x"
            print(f"n={n:<4d} {op:<10s} {row}{speed}")


if __name__ == "__main__":
    main()
