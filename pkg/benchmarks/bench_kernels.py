"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from evidirac import kernels
from evidirac.compact import build_compact_datum
from evidirac.norms import _spin_tables


def workloads(mod, rng):
    k = build_compact_datum()
    e7 = [list(r) for r in k.root_datum.cartan]
    kc = [list(r) for r in k.cartan]
    rho_n, cartan, gram2, shift = _spin_tables()
    vecs = [[rng.randrange(-40, 40) for _ in range(7)] for _ in range(2000)]
    mus = [[rng.randrange(0, 16) for _ in range(7)] for _ in range(200)]
    return {
        "dominant_word x2000 (E7)": lambda: [mod.dominant_word(v, e7) for v in vecs],
        "spin_values x200": lambda: [mod.spin_values(m, rho_n, cartan, gram2, shift) for m in mus],
        "orbit_levels W(k)": lambda: mod.orbit_levels([1] * 7, kc),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    found = kernels.backends()
    results = {}
    for name, mod in found.items():
        for label, fn in workloads(mod, random.Random(1)).items():
            results.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'workload':28} " + " ".join(f"{n:>10}" for n in found) + "   speedup")
    for label, row in results.items():
        line = f"{label:28} " + " ".join(f"{row[n]:9.4f}s" for n in found)
        if "cython" in row:
            line += f"   {row['python'] / row['cython']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
