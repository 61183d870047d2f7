import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact import _kernels as K

from oracles import f2_rank


def _random_bits(draw_seed, shape, density=0.4):
    rng = np.random.default_rng(draw_seed)
    return (rng.random(shape) < density).astype(np.uint8)


@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 9), n=st.integers(1, 9))
def test_rank_matches_oracle(seed, m, n):
    A = _random_bits(seed, (m, n))
    assert K.rank(A) == f2_rank(A.tolist())


@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 8), n=st.integers(1, 8))
def test_nullspace_is_kernel(seed, m, n):
    A = _random_bits(seed, (m, n))
    N = K.nullspace(A)
    assert N.shape[0] == n - f2_rank(A.tolist())
    if N.size:
        assert not K.matmul(A, N.T).any()


@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 8), n=st.integers(1, 10))
def test_solve_lexmin_is_least_solution(seed, m, n):
    A = _random_bits(seed, (m, n))
    rng = np.random.default_rng(seed + 1)
    b = K.matmul(A, (rng.random((n, 1)) < 0.5).astype(np.uint8))[:, 0]
    x = K.solve_lexmin(A, b)
    assert x is not None
    assert np.array_equal(K.matmul(A, x[:, None])[:, 0], b)
    if n <= 10:
        # no solution is lexicographically smaller (first coordinate most significant)
        best = None
        for v in range(1 << n):
            cand = np.array([(v >> (n - 1 - j)) & 1 for j in range(n)], dtype=np.uint8)
            if np.array_equal(K.matmul(A, cand[:, None])[:, 0], b):
                best = cand
                break
        assert np.array_equal(best, x)


def test_inconsistent_system_has_no_solution():
    A = np.array([[1, 1], [1, 1]], dtype=np.uint8)
    assert K.solve_lexmin(A, np.array([0, 1], dtype=np.uint8)) is None


@given(seed=st.integers(0, 2**32 - 1))
def test_matmul_is_mod_two(seed):
    A = _random_bits(seed, (7, 5))
    B = _random_bits(seed + 1, (5, 6))
    assert np.array_equal(K.matmul(A, B), (A.astype(int) @ B.astype(int)) % 2)


def test_min_of_max_over_products_small():
    alphas = np.array([[0, 1], [0, 2]], dtype=np.int64)
    betas = np.array([[1, 0], [2, 0]], dtype=np.int64)
    offsets = np.array([0, 2, 4], dtype=np.int64)
    flat_a = alphas.reshape(-1)
    flat_b = betas.reshape(-1)
    assert K.min_of_max_over_products(flat_a, flat_b, offsets) == 2


@pytest.mark.skipif(not K.NUMBA_AVAILABLE, reason="numba not installed")
def test_backends_agree_on_reduction_and_solver():
    rng = np.random.default_rng(7)
    from oracles import random_complex

    for _ in range(20):
        gr, D, _, _ = random_complex(rng, 4, 1)
        from artifact.complexes import exponent_matrix

        E = exponent_matrix(gr, gr, -1).astype(np.int64)
        a = K._reduce_numpy(D.copy(), E)
        b = K._reduce_numba(D.copy(), E)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)
        A = (rng.random((6, 9)) < 0.4).astype(np.uint8)
        rhs = (rng.random(6) < 0.5).astype(np.uint8)
        ra = K._rref_numpy(A, rhs, False)
        rb = K._rref_numba(A, rhs, False)
        for x, y in zip(ra, rb):
            assert np.array_equal(x, y)


def test_fallback_backend_selected_by_env():
    env = dict(os.environ, ARTIFACT_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from artifact import _kernels as K; print(K.backend_name())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_cli_output_identical_across_backends():
    args = [sys.executable, "-m", "artifact", "--json", "reproduce", "thin-reductions"]
    fast = subprocess.run(args, capture_output=True, text=True, env=dict(os.environ, ARTIFACT_NO_NUMBA="0"))
    slow = subprocess.run(args, capture_output=True, text=True, env=dict(os.environ, ARTIFACT_NO_NUMBA="1"))
    assert fast.returncode == slow.returncode == 0
    assert fast.stdout == slow.stdout
