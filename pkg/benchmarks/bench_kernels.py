"""Benchmark: compiled identity kernel versus the pure-Python fallback.

Runs the streaming b^2 / B^2 / bB+Bb check on group-algebra Hochschild
words at sizes the pure path can still finish, then reports the compiled
path alone on the full acceptance size.

    python benchmarks/bench_kernels.py
"""
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hhk.corpus import load_algebra
from hhk.identities import _tables, _as_arrays
from hhk._kernels import speed_py

try:
    from hhk._kernels import _speed
except ImportError:
    _speed = None


def words(dim, cutoff):
    return sum(dim * (dim - 1) ** s for s in range(cutoff + 1))


def run(name, cutoff):
    alg, _ = load_algebra(name)
    dim = len(alg.space)
    modulus = 0 if alg.field.tag == "Q" else alg.field.p
    mi, mc = _tables(alg)
    t0 = time.time()
    ok_p, _ = speed_py.check_table_hochschild(dim, alg.unit_index, mi, mc,
                                              cutoff, modulus)
    tp = time.time() - t0
    tc = None
    if _speed is not None:
        t0 = time.time()
        ok_c, _ = _speed.check_table_hochschild(dim, alg.unit_index,
                                                _as_arrays(mi), _as_arrays(mc),
                                                cutoff, modulus)
        tc = time.time() - t0
        assert ok_p == ok_c
    n = words(dim, cutoff)
    speedup = f"{tp / tc:7.1f}x" if tc else "    n/a"
    print(f"{name:8s} cutoff {cutoff}  {n:>9d} words   "
          f"pure {tp:8.2f}s   compiled {tc if tc is not None else float('nan'):8.2f}s   {speedup}")


def main():
    print("identity kernel: pure vs compiled")
    run("qc3", 8)
    run("s3q", 4)
    run("f2c2", 10)
    if _speed is not None:
        alg, _ = load_algebra("s3q")
        mi, mc = _tables(alg)
        t0 = time.time()
        ok, _ = _speed.check_table_hochschild(6, alg.unit_index, _as_arrays(mi),
                                              _as_arrays(mc), 8, 0)
        print(f"s3q cutoff 8 (compiled only): ok={ok}  {time.time() - t0:.1f}s  "
              f"({words(6, 8)} words)")
    else:
        print("compiled kernel not built; run: python setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
