"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 120]
"""

import argparse
import random
import timeit

from jetscheme import _pykernels

try:
    from jetscheme import _ckernels
except ImportError:  # extension not built
    _ckernels = None

P = 2147483629


def _rank_case(rng, n):
    return [[rng.randrange(P) for _ in range(n)] for _ in range(n)]


def _series_case(rng, n):
    return [rng.randrange(P) for _ in range(n + 1)], [rng.randrange(P) for _ in range(n + 1)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=120)
    args = ap.parse_args(argv)
    rng = random.Random(7)
    M = _rank_case(rng, args.size)
    a, b = _series_case(rng, 8 * args.size)
    cases = [
        ("rank_mod_p", lambda mod: mod.rank_mod_p(M, P)),
        ("series_mul_mod_p", lambda mod: mod.series_mul_mod_p(a, b, len(a) - 1, P)),
    ]
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':<18}{'backend':<9}{'best (ms)':>10}")
    for name, call in cases:
        results = {}
        for label, mod in backends:
            results[label] = call(mod)
            best = min(timeit.repeat(lambda: call(mod), number=1, repeat=args.repeat))
            print(f"{name:<18}{label:<9}{best * 1e3:>10.2f}")
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"{name}: backends disagree")
    if _ckernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
