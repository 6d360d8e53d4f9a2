"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from mubkit._backend import available_backends
from mubkit.field import GaloisField


def cases():
    rng = np.random.default_rng(0)
    out = []
    for N in (27, 81, 125):
        f = GaloisField(N)
        out.append((f"field_mul_table N={N}", lambda k, f=f: k.field_mul_table(f.p, f.m, f.poly)))
    for N in (27, 81, 125):
        f = GaloisField(N)
        modulus = 4 if f.p == 2 else f.p
        out.append((f"quadratic_exponents N={N}", lambda k, f=f, mod=modulus: k.quadratic_exponents(f.alpha, f.p, mod)))
    for n in (8, 16, 32):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = (a + a.conj().T) / 2
        out.append((f"jacobi_hermitian n={n}", lambda k, h=h: k.jacobi_hermitian(h, True, 1e-12, 100)))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':32}" + "".join(f"{n + ' [ms]':>16}" for n in names) + ("  speedup" if len(names) > 1 else ""))
    for label, fn in cases():
        times = {}
        for name in names:
            k = backends[name]
            fn(k)  # warm-up
            times[name] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) * 1e3
        row = f"{label:32}" + "".join(f"{times[n]:16.3f}" for n in names)
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:7.1f}x"
        print(row)
    if "cython" not in backends:
        print("compiled extension not built; only the pure-Python backend was timed")


if __name__ == "__main__":
    main()
