"""Time the pure-Python and compiled Smith reduction kernels on random matrices.

    python benchmarks/bench_snf.py [--sizes 8 16 32] [--density 0.2] [--repeat 5]

Matrices are sparse with small entries, like boundary matrices.  Both kernels
must return the same diagonal.  When the compiled kernel overflows its
machine integers the row says so; the library then falls back to Python.
"""

import argparse
import random
import timeit

from todacx import _kernel


def random_matrix(rng, n, m, density, lo=-2, hi=2):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(m)] for _ in range(n)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 24, 32])
    ap.add_argument("--density", type=float, default=0.2)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    kernels = {"python": _kernel.python_smith_reduce}
    if _kernel._compiled is not None:
        kernels["compiled"] = _kernel.compiled_smith_reduce
    else:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'size':>6} " + " ".join(f"{k:>12}" for k in kernels) + ("  speedup" if len(kernels) > 1 else ""))
    for n in args.sizes:
        mat = random_matrix(rng, n, n, args.density)
        try:
            diags = {k: list(f([r[:] for r in mat], n, n, True)[0]) for k, f in kernels.items()}
        except OverflowError:
            print(f"{n:>6}  compiled kernel overflowed; the library would use the Python kernel")
            continue
        if len(set(map(tuple, diags.values()))) != 1:
            raise SystemExit(f"kernels disagree at size {n}")
        times = {}
        for k, f in kernels.items():
            t = timeit.repeat(lambda: f([r[:] for r in mat], n, n, True), number=1, repeat=args.repeat)
            times[k] = min(t)
        row = f"{n:>6} " + " ".join(f"{times[k] * 1e3:>10.2f}ms" for k in kernels)
        if len(kernels) > 1:
            row += f"  {times['python'] / times['compiled']:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
