#!/usr/bin/env python3
"""Benchmark: compiled kernel twin vs the pure-Python fallback.

Runs each workload in a fresh subprocess per backend (the backend is
chosen at import time via SPECLAB_PURE_PYTHON) and prints a side-by-side
table.  Workloads are the package's real hot paths, not microbenchmarks:

  poly-mul-reduce   sparse products reduced to sphere normal form
  laplacian-sweep   the two-route Laplacian agreement sweep (degree 5)
  frac-rref         exact row echelon of a random rational matrix
  spinor-dirac      Dirac operator applications on spinor monomials
"""

import json
import os
import subprocess
import sys

WORKLOADS = {
    "poly-mul-reduce": r"""
import random, time
from fractions import Fraction
from speclab.polynomial import SpherePoly, monomials_of_degree
rng = random.Random(7)
monos = [m for d in range(7) for m in monomials_of_degree(4, d)]
def rand_poly():
    terms = {}
    for _ in range(40):
        e = rng.choice(monos)
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return SpherePoly(3, terms)
polys = [rand_poly() for _ in range(30)]
t0 = time.perf_counter()
acc = SpherePoly.zero(3)
for a in polys:
    for b in polys[:10]:
        acc = acc + a * b
elapsed = time.perf_counter() - t0
print(elapsed)
""",
    "laplacian-sweep": r"""
import time
from fractions import Fraction
from speclab.polynomial import SpherePoly, normal_monomials
from speclab.scalar_ops import laplacian, laplacian_via_conformal_fields
t0 = time.perf_counter()
for n in (2, 3, 4):
    for e in normal_monomials(n, 5):
        p = SpherePoly(n, {e: Fraction(1)}, reduced=True)
        assert laplacian(p) == laplacian_via_conformal_fields(p)
elapsed = time.perf_counter() - t0
print(elapsed)
""",
    "frac-rref": r"""
import random, time
from fractions import Fraction
from speclab.linalg import rref
rng = random.Random(11)
rows = [[Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(90)]
        for _ in range(70)]
t0 = time.perf_counter()
rref(rows)
elapsed = time.perf_counter() - t0
print(elapsed)
""",
    "spinor-dirac": r"""
import time
from speclab.polynomial import SpherePoly, normal_monomials
from speclab.clifford import SpinorPoly, dirac_apply, gamma_algebra
n = 3
d = gamma_algebra(n).dim_spin
basis = [SpinorPoly.unit(n, c, SpherePoly.monomial(n, e))
         for c in range(d) for e in normal_monomials(n, 2)]
t0 = time.perf_counter()
for psi in basis:
    dirac_apply(dirac_apply(psi))
elapsed = time.perf_counter() - t0
print(elapsed)
""",
}


def run(workload: str, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["SPECLAB_PURE_PYTHON"] = "1"
    else:
        env.pop("SPECLAB_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOADS[workload]],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return float(out.stdout.strip().splitlines()[-1])


def main() -> int:
    check = subprocess.run(
        [sys.executable, "-c", "from speclab import _kernel; print(_kernel.BACKEND)"],
        capture_output=True,
        text=True,
    )
    backend = check.stdout.strip()
    if backend != "cython":
        print("compiled kernel not available; build it first:")
        print("  python setup.py build_ext --inplace")
        return 1
    rows = []
    print(f"{'workload':18s} {'pure (s)':>10s} {'cython (s)':>11s} {'speedup':>8s}")
    for name in WORKLOADS:
        t_pure = run(name, pure=True)
        t_cy = run(name, pure=False)
        rows.append({"workload": name, "pure_s": t_pure, "cython_s": t_cy})
        print(f"{name:18s} {t_pure:10.3f} {t_cy:11.3f} {t_pure / t_cy:7.2f}x")
    if "--json" in sys.argv:
        print(json.dumps(rows, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
