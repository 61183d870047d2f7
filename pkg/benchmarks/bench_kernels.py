"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own interpreter (the choice is fixed at import via
ARTIFACT_NO_NUMBA).  Every workload runs once untimed to absorb compilation,
then the best of ``--repeat`` runs is reported.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _workloads():
    from artifact import _kernels as K
    from artifact.complexes import exponent_matrix
    from artifact.iota import iota_tensor, make_X, make_X_dual
    from artifact.knots import Staircase, lattice_model, parse_knot, thin_negative, torus_alexander
    from artifact.local_maps import brute_force_count

    rng = np.random.default_rng(0)
    model = lattice_model(parse_knot("4*T(2,3)"))
    a0 = model.build_As(0)
    D, E = a0.differential, exponent_matrix(a0.gradings, a0.gradings, -1)
    A = (rng.random((300, 400)) < 0.05).astype(np.uint8)
    b = K.matmul(A, (rng.random((400, 1)) < 0.5).astype(np.uint8))[:, 0]
    dual_pair = iota_tensor(make_X_dual(1), make_X_dual(1))
    thin = thin_negative(2).large_surgery_iota()
    stairs = [Staircase.from_alexander(torus_alexander(2, 5))] * 6 + [Staircase.from_alexander(torus_alexander(2, 3))] * 6
    alphas = np.array([c[0] for s in stairs for c in s.corners])
    betas = np.array([c[1] for s in stairs for c in s.corners])
    offsets = np.cumsum([0] + [len(s.corners) for s in stairs])
    grid = (np.array([m for m in range(-15, 16) if m % 2]), np.arange(-15, 16), np.arange(-4, 5))
    return {
        f"graded reduction ({a0.n} generators)": lambda: K.reduce_graded(D, E),
        "lex-least solve (300 x 400)": lambda: K.solve_lexmin(A, b),
        "local-map enumeration (2^21 candidates)": lambda: brute_force_count(dual_pair, thin),
        "corner-tuple minimum (3^6 2^6 tuples)": lambda: K.min_of_max_over_products(alphas, betas, offsets),
        "definiteness grid (138384 points)": lambda: K.definiteness_grid(*grid),
    }


def worker(repeat: int) -> None:
    from artifact import _kernels as K

    out = {"backend": K.backend_name(), "times": {}}
    for name, fn in _workloads().items():
        fn()
        best = min(_time(fn) for _ in range(repeat))
        out["times"][name] = best
    print(json.dumps(out))


def _time(fn) -> float:
    t = time.perf_counter()
    fn()
    return time.perf_counter() - t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return
    results = {}
    for flag in ("0", "1"):
        env = dict(os.environ, ARTIFACT_NO_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        data = json.loads(proc.stdout.strip().splitlines()[-1])
        results[data["backend"]] = data["times"]
    names = list(next(iter(results.values())))
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for n in names:
        fast, slow = results.get("numba", {}).get(n), results["numpy"][n]
        if fast is None:
            print(f"{n:<{width}}  {'n/a':>10}  {slow * 1e3:>8.2f}ms")
        else:
            print(f"{n:<{width}}  {fast * 1e3:>8.2f}ms  {slow * 1e3:>8.2f}ms  {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
