"""Compare the compiled row-reduction kernels with their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 120]

Prints one line per workload with the best-of-N time for each backend.  The
end-to-end rows rerun a pipeline in a subprocess with QUIVERKOSZUL_PURE set,
since the backend is fixed at import.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from quiverkoszul import _pykernels

try:
    from quiverkoszul import _ckernels
except ImportError:
    _ckernels = None

PIPELINE = """
import time
from quiverkoszul import fixtures
from quiverkoszul.hochschild import Hochschild
from quiverkoszul.resolution import verify_exactness
t = time.perf_counter()
res = fixtures.resolution({source}, pin=False)
verify_exactness(res)
hh = Hochschild(res)
[hh.cohomology_dims(n) for n in range(res.maxdeg)]
print(time.perf_counter() - t)
"""

PIPELINES = [
    ("ex53 over Q, maxdeg 6", "fixtures.load('ex53', 6)"),
    ("ex53 over F_32003, maxdeg 7", "fixtures.quantum_exterior(2, 3, 5, 'Fp 32003', 7)"),
    ("ex52 over Q, maxdeg 6", "fixtures.load('ex52', 6)"),
]


def random_rows(nrows, ncols, density, rng, modulus=None):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                x = rng.randint(-9, 9)
                if x:
                    row[j] = x % modulus if modulus else Fraction(x, rng.randint(1, 4))
        rows.append({k: v for k, v in row.items() if v})
    return rows


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def pipeline_time(source, pure):
    env = dict(os.environ)
    env.pop("QUIVERKOSZUL_PURE", None)
    if pure:
        env["QUIVERKOSZUL_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", PIPELINE.format(source=source)],
                         env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; only the Python kernels are available")
    rng = random.Random(args.seed)
    p = 32003
    n = args.size
    workloads = [
        ("rref Q   dense", lambda k: k.rref_rational, random_rows(n // 2, n // 2, 0.5, rng)),
        ("rref Q   sparse", lambda k: k.rref_rational, random_rows(n, n, 0.05, rng)),
        ("rref F_p dense", lambda k: (lambda rows: k.rref_modp(rows, p)), random_rows(n, n, 0.5, rng, p)),
        ("rref F_p sparse", lambda k: (lambda rows: k.rref_modp(rows, p)), random_rows(2 * n, 2 * n, 0.05, rng, p)),
    ]
    print(f"{'workload':<32}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for label, pick, rows in workloads:
        py = best(lambda: pick(_pykernels)(rows), args.repeat)
        if _ckernels is None:
            print(f"{label:<32}{py:>11.4f}s{'-':>12}{'-':>10}")
            continue
        assert pick(_pykernels)(rows) == pick(_ckernels)(rows), label
        c = best(lambda: pick(_ckernels)(rows), args.repeat)
        print(f"{label:<32}{py:>11.4f}s{c:>11.4f}s{py / c:>9.1f}x")
    for label, source in PIPELINES:
        py = pipeline_time(source, pure=True)
        if _ckernels is None:
            print(f"{label:<32}{py:>11.4f}s{'-':>12}{'-':>10}")
            continue
        c = pipeline_time(source, pure=False)
        print(f"{label:<32}{py:>11.4f}s{c:>11.4f}s{py / c:>9.1f}x")


if __name__ == "__main__":
    main()
