"""Compare the compiled and pure-Python edit-distance kernels.

    python3 benchmarks/bench_kernels.py --length 400 --repeat 5
"""

import argparse
import random
import time
from array import array

from vrsdr_score import _align_py

try:
    from vrsdr_score import _align_ext
except ImportError:
    _align_ext = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--length", type=int, default=400, help="tokens per sequence")
    parser.add_argument("--pairs", type=int, default=20)
    parser.add_argument("--vocabulary", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    pairs = [
        (array("i", (rng.randrange(args.vocabulary) for _ in range(args.length))),
         array("i", (rng.randrange(args.vocabulary) for _ in range(args.length))))
        for _ in range(args.pairs)
    ]
    kernels = [("python", _align_py)]
    if _align_ext is not None:
        kernels.append(("cython", _align_ext))
    else:
        print("compiled kernel not built; showing the pure-Python kernel only")

    results = {}
    for name, mod in kernels:
        for fn_name in ("edit_distance", "edit_counts"):
            fn = getattr(mod, fn_name)
            results[(name, fn_name)] = best_of(lambda: [fn(r, h) for r, h in pairs], args.repeat)

    print(f"{args.pairs} pairs of {args.length} tokens, best of {args.repeat}")
    print(f"{'kernel':<8} {'function':<14} {'seconds':>10} {'speedup':>8}")
    for (name, fn_name), secs in results.items():
        base = results[("python", fn_name)]
        print(f"{name:<8} {fn_name:<14} {secs:>10.4f} {base / secs:>7.1f}x")

    if _align_ext is not None:
        for r, h in pairs:
            assert _align_py.edit_counts(r, h) == _align_ext.edit_counts(r, h)


if __name__ == "__main__":
    main()
