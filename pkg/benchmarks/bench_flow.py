"""Compare the numba kernels against the plain Python fallback.

Each path runs in its own interpreter because the switch is read at import
time (``ARBCOVER_DISABLE_NUMBA``). Example::

    python3 benchmarks/bench_flow.py --nodes 12 24 --repeat 3
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
from arbcover import _accel
from arbcover.blocker import covering_tight_arborescences
from arbcover.graph import Digraph
from arbcover.mincut import min_double_cut

n, repeat = int(sys.argv[1]), int(sys.argv[2])
rng = random.Random(n)
spine = [(("spine", v), v - 1, v) for v in range(1, n)]
pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
extra = [(i, u, v) for i, (u, v) in enumerate(rng.sample(pairs, min(len(pairs), 4 * n)))]
D = Digraph(n, extra + spine)
w = {a: rng.randint(1, 9) for a in D.arc_ids}

# warm-up compiles (or loads the cache) outside the timed region
min_double_cut(Digraph.from_edges(3, [(0, 1), (1, 2)]), {0: 1, 1: 1})

def best(fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out

t_mu, mu = best(lambda: min_double_cut(D, w))
t_cov, cov = best(lambda: covering_tight_arborescences(D, [range(n)], w))
print(json.dumps({"numba": _accel.HAS_NUMBA, "n": n, "m": D.m,
                  "double_cut_s": t_mu, "cover_s": t_cov,
                  "mu": str(mu.value), "gamma": str(cov.gamma)}))
"""


def run(n, repeat, disable):
    env = dict(os.environ, ARBCOVER_DISABLE_NUMBA="1" if disable else "0")
    done = subprocess.run([sys.executable, "-c", WORKER, str(n), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(done.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, nargs="+", default=[10, 20, 30])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'n':>4} {'m':>5} {'path':>7} {'double cut s':>13} {'cover s':>9} {'speedup':>8}")
    for n in args.nodes:
        fast = run(n, args.repeat, disable=False)
        slow = run(n, args.repeat, disable=True)
        if (fast["mu"], fast["gamma"]) != (slow["mu"], slow["gamma"]):
            raise SystemExit(f"paths disagree at n={n}: {fast} vs {slow}")
        for label, r in (("numba", fast), ("python", slow)):
            speedup = slow["cover_s"] / r["cover_s"]
            print(f"{n:>4} {r['m']:>5} {label:>7} {r['double_cut_s']:>13.4f} {r['cover_s']:>9.4f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
