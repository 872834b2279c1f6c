"""Timing comparison of the two rational backends on a fixed suite workload.

The package picks gmpy2's GMP-backed mpq when importable and falls back to
fractions.Fraction otherwise; FEMLAB_PURE_RATIONAL=1 forces the fallback.
This script runs the same seeded suites in a child interpreter per backend
and prints wall times plus the speedup, so the cost of the pure fallback
is measured rather than guessed.

Usage: python benchmarks/bench_rational_backends.py [--count N] [--seed N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = """
import json, sys, time
from femlab import BACKEND
from femlab.suites import SUITES, run_suite

seed, count = int(sys.argv[1]), int(sys.argv[2])
t0 = time.perf_counter()
failures = 0
for name in SUITES:
    _, summary = run_suite(name, seed, count)
    failures += summary["failures"]
elapsed = time.perf_counter() - t0
print(json.dumps({"backend": BACKEND, "seconds": elapsed, "failures": failures}))
"""


def run_backend(pure: bool, seed: int, count: int) -> dict:
    env = dict(os.environ)
    env["FEMLAB_PURE_RATIONAL"] = "1" if pure else "0"
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(seed), str(count)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=60, help="trials per suite")
    parser.add_argument("--seed", type=int, default=2026)
    args = parser.parse_args()

    rows = [run_backend(False, args.seed, args.count), run_backend(True, args.seed, args.count)]
    for row in rows:
        if row["failures"]:
            print("suite failures under %s backend: %d" % (row["backend"], row["failures"]))
            return 1
        print("%-10s %8.3fs  (all suites x %d trials, seed %d)"
              % (row["backend"], row["seconds"], args.count, args.seed))
    if rows[0]["backend"] == rows[1]["backend"]:
        print("gmpy2 not importable here; both runs used the pure backend")
    else:
        print("speedup: pure/%s = %.2fx" % (rows[0]["backend"], rows[1]["seconds"] / rows[0]["seconds"]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
