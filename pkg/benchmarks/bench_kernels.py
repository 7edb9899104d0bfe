"""Time the compiled and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per (workload, backend) with the best wall time, then the
speedup of the compiled backend.  Results of both backends are compared for
equality before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from fixlocus import _kernels_py
from fixlocus.groups import abelian_group, dihedral_group, symmetric_group
from fixlocus.perm import powers

try:
    from fixlocus import _kernels as _compiled
except ImportError:
    _compiled = None


def workloads():
    groups = {"D250": dihedral_group(250), "Z5^4": abelian_group([5] * 4), "S7": symmetric_group(7)}
    for name, G in groups.items():
        table, inv = G._table, G._inv_table
        gens = np.ascontiguousarray(np.array([g.images for g in G.generators], dtype=np.intc))
        yield f"closure {name} (order {G.order})", lambda k, gens=gens, n=G.order: k.closure(gens, n)

        sample = range(1, G.order, max(1, G.order // 40))

        def normalizers(k, table=table, inv=inv, G=G, sample=sample):
            out = []
            for g in sample:
                targets = np.ascontiguousarray(table[powers(G, g)])
                out.append(k.conjugator_mask(table, inv, table[g], targets))
            return out
        yield f"normalizer scans {name} ({len(sample)} elements)", normalizers

        def first_hits(k, table=table, inv=inv, sample=sample):
            targets = np.ascontiguousarray(table[[1]])
            return [k.first_conjugator(table, inv, table[g], targets) for g in sample]
        yield f"conjugacy tests {name}", first_hits


def _same(a, b) -> bool:
    if isinstance(a, list):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) and a.ndim == 2:
        return sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))
    return np.array_equal(a, b)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.insert(0, ("cython", _compiled))
    else:
        print("compiled kernels not built; timing the numpy backend only")
    for label, work in workloads():
        results = {name: work(mod) for name, mod in backends}
        if len(results) == 2:
            assert _same(results["cython"], results["python"]), f"backends disagree on {label}"
        times = {name: min(timeit.repeat(lambda mod=mod: work(mod), number=1, repeat=args.repeat))
                 for name, mod in backends}
        line = "  ".join(f"{name} {t * 1e3:9.2f} ms" for name, t in times.items())
        if len(times) == 2:
            line += f"  speedup {times['python'] / times['cython']:6.1f}x"
        print(f"{label:<42} {line}")


if __name__ == "__main__":
    main()
