"""Time the compiled and pure-Python search kernels on the same shards.

    python3 benchmarks/bench_search.py --max-edge 20 --repeat 3
"""
from __future__ import annotations

import argparse
import time

from cmtetra.search import _compiled, _kernel_py


def run(mod, max_edge: int, include_degenerate: bool) -> tuple:
    t0 = time.perf_counter()
    hits = [h for d12 in range(1, max_edge + 1) for h in mod.scan_shard(d12, max_edge, include_degenerate)]
    return time.perf_counter() - t0, hits


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-edge", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--include-degenerate", action="store_true")
    args = ap.parse_args(argv)

    kernels = [("python", _kernel_py)]
    if _compiled is not None:
        kernels.append(("compiled", _compiled))
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {}
    for name, mod in kernels:
        best, hits = min(run(mod, args.max_edge, args.include_degenerate) for _ in range(args.repeat))
        results[name] = (best, hits)
        print(f"{name:>8}: {best:8.3f} s  {len(hits)} hits  (max_edge={args.max_edge}, best of {args.repeat})")
    if len(results) == 2:
        (tp, hp), (tc, hc) = results["python"], results["compiled"]
        if hp != hc:
            print("MISMATCH between kernels")
            return 1
        print(f" speedup: {tp / tc:6.1f}x, identical hit lists")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
