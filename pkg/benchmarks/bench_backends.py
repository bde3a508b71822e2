"""Time the exact pipeline under each rational backend.

Each backend runs in a fresh interpreter because the backend is fixed at
import time by ``MVLAGUERRE_BACKEND``.

    python3 benchmarks/bench_backends.py --N 4 --nmax 5
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = """
import json, time
from mvlaguerre import BACKEND
from mvlaguerre.pearson import example3
from mvlaguerre.suites import run_suites
t0 = time.perf_counter()
f = example3({N}, "3/2", "3/2", 1, 1, {nmax} + 3)
records = run_suites(f, ["structure", "pearson", "mvop", "diffops"], {nmax}, (0, 1))
print(json.dumps({{"backend": BACKEND, "seconds": time.perf_counter() - t0,
                  "checks": len(records), "passed": sum(r.check.passed for r in records)}}))
"""


def run(backend: str, N: int, nmax: int) -> dict:
    env = {**os.environ, "MVLAGUERRE_BACKEND": backend}
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD.format(N=N, nmax=nmax)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--nmax", type=int, default=5)
    args = ap.parse_args()
    results = [run(b, args.N, args.nmax) for b in ("gmpy2", "fraction")]
    for r in results:
        print(f"{r['backend']:>8}: {r['seconds']:7.2f} s  ({r['passed']}/{r['checks']} checks)")
    print(f"speed-up: {results[1]['seconds'] / results[0]['seconds']:.1f}x")


if __name__ == "__main__":
    main()
