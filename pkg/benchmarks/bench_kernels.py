"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Workloads are the row streams the package actually produces: closures of a
few inverse systems (generators plus all derivatives) and a random dense
integer matrix.
"""

import argparse
import random
import statistics
import time

from macinv import _pykernels
from macinv.apolar import Poly, contract, divisors, grlex_key
from macinv.construct import stanley_witness, witness_G
from macinv.exactla import as_int_row

try:
    from macinv import _ckernels
except ImportError:
    _ckernels = None


def derivative_rows(gens):
    """All x^a ∘ g as integer rows over the divisor frame of the generators."""
    nvars = gens[0].nvars
    mons = set()
    for g in gens:
        for m in g.terms:
            mons.update(divisors(m))
    frame = sorted(mons, key=grlex_key, reverse=True)
    index = {m: j for j, m in enumerate(frame)}
    rows = []
    for g in gens:
        ops = set()
        for m in g.terms:
            ops.update(divisors(m))
        for a in sorted(ops):
            d = contract(Poly.monomial(a), g)
            if d:
                rows.append(as_int_row(d.to_vector(index)))
    assert all(len(r) == len(frame) for r in rows) and nvars
    return rows


def workloads():
    rng = random.Random(1)
    _, G = stanley_witness()
    yield "stanley G (13 vars)", derivative_rows([G])
    yield "witness G(8, 30)", derivative_rows([witness_G(8, 30)])
    yield "witness G(12, 70)", derivative_rows([witness_G(12, 70)])
    yield "random 60x60 in [-50,50]", [[rng.randint(-50, 50) for _ in range(60)] for _ in range(60)]


def echelon(mod, rows):
    basis, pivots = [], []
    for r in rows:
        mod.insert_vector(basis, pivots, list(r))
    return basis, pivots


def timeit(mod, rows, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        echelon(mod, rows)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is timed")
    print(f"{'workload':28} {'rows':>5} {'cols':>5} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, rows in workloads():
        py = timeit(_pykernels, rows, args.repeat)
        line = f"{name:28} {len(rows):5} {len(rows[0]):5} {py * 1e3:10.2f}"
        if _ckernels is not None:
            assert echelon(_pykernels, rows) == echelon(_ckernels, rows)
            cy = timeit(_ckernels, rows, args.repeat)
            line += f" {cy * 1e3:10.2f} {py / cy:7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
