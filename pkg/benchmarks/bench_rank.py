"""Compare the numba and pure-numpy kernels.

Each backend runs in its own interpreter because the choice is made at
import time from ``VERLINDE_NUMBA``.  Usage::

    python3 benchmarks/bench_rank.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CASES = [
    ("rank 300x300 mod 13", "rank", (300, 13)),
    ("rank 800x800 mod 13", "rank", (800, 13)),
    ("S^6(M_5) Jordan type, p=7", "sym", (5, 6, 7)),
    ("S^5(M_6) free?, p=7", "free", (6, 5, 7)),
    ("S^6(M_8) free?, p=11", "free", (8, 6, 11)),
]

WORKER = r"""
import json, sys, time
import numpy as np
from verlinde import _accel, oracle
kind, params, repeat = json.loads(sys.argv[1])
def run():
    if kind == "rank":
        n, p = params
        a = np.random.default_rng(0).integers(0, p, size=(n, n))
        return _accel.rank_mod_p(a, p)
    if kind == "sym":
        return str(oracle.sym_power_jordan(*params, method="graded"))
    return oracle.sym_power_is_projective(*params)
value = run()  # warm-up (numba compilation, table caches)
best = float("inf")
for _ in range(repeat):
    t = time.perf_counter()
    run()
    best = min(best, time.perf_counter() - t)
print(json.dumps({"backend": _accel.backend(), "seconds": best, "value": str(value)}))
"""


def measure(kind, params, repeat, numba: bool) -> dict:
    env = dict(os.environ, VERLINDE_NUMBA="1" if numba else "0")
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps([kind, params, repeat])],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for label, kind, params in CASES:
        fast = measure(kind, params, args.repeat, True)
        slow = measure(kind, params, args.repeat, False)
        ratio = slow["seconds"] / fast["seconds"] if fast["seconds"] else float("inf")
        agree = fast["value"] == slow["value"]
        print(f"{label:34s} {fast['seconds']:10.4f} {slow['seconds']:10.4f} {ratio:8.1f}  {agree}")


if __name__ == "__main__":
    main()
