"""Compare the compiled and pure-Python permutation kernels.

    python3 benchmarks/bench_perm.py [--repeat N]
"""
import argparse
import timeit

from cactuskit import perm, roots
from cactuskit.coxeter import preset

CASES = [("group_order", "F4"), ("group_order", "H4"), ("longest_descent", "E8"), ("longest_descent", "H4")]


def _job(impl, kind, rs):
    if kind == "group_order":
        return lambda: impl.group_order(rs.gens, 10**6)
    allowed = list(range(rs.rank))
    return lambda: impl.longest_descent(rs.gens, rs.simple_indices, rs.positive, allowed)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = perm.backends()
    print(f"backends: {', '.join(impls)}")
    print(f"{'kernel':<16}{'type':<6}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for kind, name in CASES:
        rs = roots.build_root_system(preset(name))
        times = {}
        results = set()
        for label, impl in impls.items():
            job = _job(impl, kind, rs)
            results.add(repr(job()))
            times[label] = min(timeit.repeat(job, number=1, repeat=args.repeat))
        assert len(results) == 1, "backends disagree"
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{kind:<16}{name:<6}" + "".join(f"{t:>11.4f}s" for t in times.values()) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
