"""How the permutation brute force scales on the cyclic formula x_1<x_2<...<x_k<x_1.

The formula is unsatisfiable, so every one of the k! orders is tried.
Run: python demos/04_scaling.py
"""

import math

import numpy as np

from permgames.cli import bench_rows

rows = bench_rows(4, 8, 3, ["brute", "iar"], iar_max_k=5)
print(f"{'k':>2} {'method':6} {'median ms':>10} {'us per order':>13}")
for k, method, med, _, runs, status in rows:
    if status != "ok":
        print(f"{k:>2} {method:6} {status:>10}")
        continue
    print(f"{k:>2} {method:6} {med * 1e3:10.3f} {med * 1e6 / math.factorial(k):13.3f}")

brute = [(k, med) for k, m, med, *_ in rows if m == "brute"]
ks = np.array([k for k, _ in brute], dtype=float)
logt = np.log([t for _, t in brute])
logfact = np.array([math.lgamma(k + 1) for k in ks])
slope = np.polyfit(logfact, logt, 1)[0]
print(f"log time against log k!: slope {slope:.2f} (1 means time grows like k!)")
