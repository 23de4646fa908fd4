"""Compare the compiled and pure-Python kernels.

Run: python3 benchmarks/bench_kernels.py
"""
import argparse
import timeit

from spidersq import _kernels_py
from spidersq.greimas import META_TAGS, corner, meta_term_target
from spidersq.semantics import ModelSpace, _encode

try:
    from spidersq import _kernels
except ImportError:
    _kernels = None


def workload(labels=("M", "S1", "S2", "X"), bound=3):
    space = ModelSpace(labels, bound)
    ds = [corner(c) for c in ("d1", "d2", "d3", "d4")] + [meta_term_target(t) for t in META_TAGS]
    return space, [_encode(d, space.labels) for d in ds]


def run(mod, space, encoded):
    for kind, habs, mults in encoded:
        mod.sat_many(space.flat, space.nzones, kind, habs, mults)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--bound", type=int, default=3)
    args = ap.parse_args()
    space, encoded = workload(bound=args.bound)
    mods = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{space.nvectors} count vectors x {len(encoded)} diagrams, bound {args.bound}")
    base = {}
    for name, mod in mods:
        t = min(timeit.repeat(lambda: run(mod, space, encoded), number=1, repeat=args.repeat))
        r = min(timeit.repeat(lambda: mod.interpretation_ranks(4, args.bound), number=1,
                              repeat=args.repeat))
        base.setdefault("sat", t)
        base.setdefault("rank", r)
        print(f"{name:7s} sat_many {t * 1e3:8.2f} ms ({base['sat'] / t:5.1f}x)   "
              f"interpretation_ranks {r * 1e3:8.2f} ms ({base['rank'] / r:5.1f}x)")
    if _kernels is None:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
