"""Compare the rational-arithmetic backends on a representative workload.

The package selects gmpy2's C-implemented mpq at import time when available
and falls back to fractions.Fraction otherwise.  This driver runs the same
seeded workload in a subprocess per backend (the choice is fixed at import,
so it needs a fresh interpreter) and prints the timings.

Usage: python benchmarks/bench_rational_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
import fuchskit
from fuchskit.generate import Sizes, rand_constant_module, rand_expring, rand_shearing_gauge, rand_sigma_module
from fuchskit.diffmod import base_change, fundamental_matrix
from fuchskit.functors import exponents, find_constant_form, mon, rm
from fuchskit.expring import solve_dsigma, solve_partial
from fuchskit.sigmamod import trivialize
from fuchskit.ratio import BACKEND

rng = random.Random(20250809)
sizes = Sizes(max_dim=4)
timings = {}

t0 = time.time()
for _ in range(60):
    y = rand_expring(rng, sizes)
    assert solve_dsigma(y).dsigma() == y
    assert solve_partial(y).partial() == y
timings["solver_roundtrips_x60"] = time.time() - t0

t0 = time.time()
for _ in range(30):
    m = rand_constant_module(rng, sizes)
    rm(mon(m))
timings["mon_rm_roundtrips_x30"] = time.time() - t0

t0 = time.time()
for _ in range(15):
    m = rand_constant_module(rng, sizes)
    e = exponents(m)
    sheared = base_change(m, rand_shearing_gauge(rng, sizes, m.dim))
    find_constant_form(sheared, exponent_candidates=list(dict.fromkeys(e.entries)),
                       laurent_degree_bound=7)
timings["constant_form_searches_x15"] = time.time() - t0

t0 = time.time()
for _ in range(20):
    v = rand_sigma_module(rng, sizes)
    trivialize(v)
    fundamental_matrix(rm(v))
timings["trivialize_and_fundamental_x20"] = time.time() - t0

timings["total"] = sum(timings.values())
print(json.dumps({"backend": BACKEND, "timings": timings}))
"""


def run_backend(pure_python, repeat):
    env = dict(os.environ)
    if pure_python:
        env["FUCHS_KIT_PURE_PYTHON"] = "1"
    else:
        env.pop("FUCHS_KIT_PURE_PYTHON", None)
    best = None
    for _ in range(repeat):
        out = subprocess.run(
            [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True
        )
        result = json.loads(out.stdout.strip().splitlines()[-1])
        if best is None or result["timings"]["total"] < best["timings"]["total"]:
            best = result
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=1, help="best of N runs")
    args = parser.parse_args()

    results = []
    for pure in (False, True):
        results.append(run_backend(pure, args.repeat))

    names = sorted(results[0]["timings"])
    width = max(len(n) for n in names)
    header = f"{'workload':<{width}}  " + "  ".join(f"{r['backend']:>12}" for r in results)
    print(header)
    print("-" * len(header))
    for name in names:
        row = f"{name:<{width}}  " + "  ".join(
            f"{r['timings'][name]:>11.2f}s" for r in results
        )
        print(row)
    fast, slow = results[0]["timings"]["total"], results[1]["timings"]["total"]
    if results[0]["backend"] != results[1]["backend"] and fast > 0:
        print(f"\nspeedup ({results[0]['backend']} vs {results[1]['backend']}): {slow / fast:.2f}x")
    else:
        print("\ngmpy2 not installed: both runs used the fractions backend")


if __name__ == "__main__":
    main()
