"""Time the compiled and pure-Python minimum-cover kernels on the same instances.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Both backends must return identical results; the script exits nonzero if
they disagree.
"""
import argparse
import json
import math
import statistics
import sys
import time

from simultile import kernels


def instances():
    """Doubly stochastic patterns use the component rule, integer tilings the rank rule."""
    out = []
    for n, m in [(2, 6), (3, 5), (4, 6), (5, 5), (5, 6), (3, 10)]:
        edges = [(i, j) for i in range(n) for j in range(m)]
        out.append((f"dsarray {n}x{m}", n, m, edges, kernels.RULE_COMPONENT))
    for n, m in [(3, 4), (4, 6), (5, 6), (6, 6), (4, 9)]:
        L = n * m // math.gcd(n, m)
        edges = sorted((t % n, t % m) for t in range(L))
        out.append((f"ztile {n},{m}", n, m, edges, kernels.RULE_RANK))
    return out


def time_one(backend, n, m, edges, rule, repeat):
    samples, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.min_cover_search(n, m, edges, max(n, m), len(edges), rule, m, n, backend=backend)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the rows to this file")
    a = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python backend is timed", file=sys.stderr)
    rows, agree = [], True
    print(f"{'instance':<16}{'size':>6}{'examined':>10}" + "".join(f"{b + ' s':>12}" for b in backends)
          + ("   speedup" if len(backends) > 1 else ""))
    for name, n, m, edges, rule in instances():
        times, results = {}, {}
        for b in backends:
            times[b], results[b] = time_one(b, n, m, edges, rule, a.repeat)
        ref = results[backends[0]]
        if any(r[:2] != ref[:2] for r in results.values()):
            agree = False
        row = {"instance": name, "size": ref[0], "examined": ref[2], "seconds": times}
        line = f"{name:<16}{ref[0]:>6}{ref[2]:>10}" + "".join(f"{times[b]:>12.4f}" for b in backends)
        if "cython" in times and times["cython"] > 0:
            row["speedup"] = times["python"] / times["cython"]
            line += f"{row['speedup']:>10.1f}x"
        rows.append(row)
        print(line)
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    if not agree:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
