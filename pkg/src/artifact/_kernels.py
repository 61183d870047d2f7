"""Hot loops over F2 matrices, with a numba path and a vectorised numpy path.

The numba path is used when numba imports and ``ARTIFACT_NO_NUMBA`` is unset
(or ``0``).  Both paths perform the same elementary operations in the same
order, so their outputs are bit-identical; the test suite checks this.

Conventions shared by every kernel:

* F2 matrices are ``uint8`` arrays holding 0/1.
* A differential ``D`` of a complex on ``n`` generators is stored with
  ``D[y, x] = 1`` when the boundary of ``x`` has a nonzero coefficient on
  ``y``.  The power of ``U`` on that coefficient is implied by the gradings
  and is passed separately as the integer matrix ``E`` (``-1`` where no
  homogeneous entry can exist).
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None
    njit = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("ARTIFACT_NO_NUMBA", "0") in ("", "0")


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# Graded Smith-style reduction
# ---------------------------------------------------------------------------


def _reduce_numpy(D, E):
    n = D.shape[0]
    D = D.copy()
    P = np.eye(n, dtype=np.uint8)
    Pinv = np.eye(n, dtype=np.uint8)
    active = np.ones(n, dtype=np.bool_)
    partner = np.full(n, -1, dtype=np.int64)
    is_source = np.zeros(n, dtype=np.bool_)
    # basis changes can create entries at any homogeneous position, not just
    # the original ones, so levels run up to the largest valid exponent
    max_level = int(E.max()) if E.size else -1
    level_mask = [(E == lv) for lv in range(max_level + 1)]
    for level in range(max_level + 1):
        at_level = level_mask[level]
        while True:
            found = False
            for x in range(n):
                if not active[x]:
                    continue
                col = (D[:, x] == 1) & at_level[:, x] & active
                hits = np.flatnonzero(col)
                if hits.size == 0:
                    continue
                y = int(hits[0])
                _pivot_numpy(D, P, Pinv, active, x, y)
                partner[x] = y
                partner[y] = x
                is_source[x] = True
                active[x] = False
                active[y] = False
                found = True
            if not found:
                break
    return D, P, Pinv, partner, is_source


def _pivot_numpy(D, P, Pinv, active, x, y):
    # Clear row y: every other active z with a y-coefficient becomes z + U^c x.
    zs = np.flatnonzero((D[y] == 1) & active)
    zs = zs[zs != x]
    if zs.size:
        colx = D[:, x].copy()
        D[:, zs] ^= colx[:, None]
        D[x, :] ^= np.bitwise_xor.reduce(D[zs, :], axis=0)
        pcol = P[:, x].copy()
        P[:, zs] ^= pcol[:, None]
        Pinv[x, :] ^= np.bitwise_xor.reduce(Pinv[zs, :], axis=0)
    # Clear column x: y is replaced by y + sum U^c w over the other targets w.
    ws = np.flatnonzero((D[:, x] == 1) & active)
    ws = ws[ws != y]
    if ws.size:
        rowy = D[y, :].copy()
        D[ws, :] ^= rowy[None, :]
        D[:, y] ^= np.bitwise_xor.reduce(D[:, ws], axis=1)
        prow = Pinv[y, :].copy()
        Pinv[ws, :] ^= prow[None, :]
        P[:, y] ^= np.bitwise_xor.reduce(P[:, ws], axis=1)


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _pivot_numba(D, P, Pinv, active, x, y):  # pragma: no cover - jitted
        n = D.shape[0]
        zs = np.empty(n, dtype=np.int64)
        nz = 0
        for z in range(n):
            if z != x and active[z] and D[y, z] == 1:
                zs[nz] = z
                nz += 1
        if nz > 0:
            for k in range(nz):
                z = zs[k]
                for r in range(n):
                    if D[r, x] == 1:
                        D[r, z] ^= 1
                    if P[r, x] == 1:
                        P[r, z] ^= 1
            for c in range(n):
                acc = 0
                accp = 0
                for k in range(nz):
                    acc ^= D[zs[k], c]
                    accp ^= Pinv[zs[k], c]
                D[x, c] ^= acc
                Pinv[x, c] ^= accp
        ws = np.empty(n, dtype=np.int64)
        nw = 0
        for w in range(n):
            if w != y and active[w] and D[w, x] == 1:
                ws[nw] = w
                nw += 1
        if nw > 0:
            for k in range(nw):
                w = ws[k]
                for c in range(n):
                    if D[y, c] == 1:
                        D[w, c] ^= 1
                    if Pinv[y, c] == 1:
                        Pinv[w, c] ^= 1
            for r in range(n):
                acc = 0
                accp = 0
                for k in range(nw):
                    acc ^= D[r, ws[k]]
                    accp ^= P[r, ws[k]]
                D[r, y] ^= acc
                P[r, y] ^= accp

    @njit(cache=True)
    def _reduce_numba(D, E):  # pragma: no cover - jitted
        n = D.shape[0]
        D = D.copy()
        P = np.eye(n, dtype=np.uint8)
        Pinv = np.eye(n, dtype=np.uint8)
        active = np.ones(n, dtype=np.bool_)
        partner = np.full(n, -1, dtype=np.int64)
        is_source = np.zeros(n, dtype=np.bool_)
        max_level = -1
        for i in range(n):
            for j in range(n):
                if E[i, j] > max_level:
                    max_level = E[i, j]
        for level in range(max_level + 1):
            while True:
                found = False
                for x in range(n):
                    if not active[x]:
                        continue
                    y = -1
                    for r in range(n):
                        if active[r] and D[r, x] == 1 and E[r, x] == level:
                            y = r
                            break
                    if y < 0:
                        continue
                    _pivot_numba(D, P, Pinv, active, x, y)
                    partner[x] = y
                    partner[y] = x
                    is_source[x] = True
                    active[x] = False
                    active[y] = False
                    found = True
                if not found:
                    break
        return D, P, Pinv, partner, is_source


def reduce_graded(D: np.ndarray, E: np.ndarray):
    """Split a graded differential into cancelling pairs and free generators.

    Returns ``(D_reduced, P, Pinv, partner, is_source)``.  Column ``j`` of
    ``P`` is the ``j``-th new basis vector written in the old basis and
    ``Pinv`` is its inverse.  ``partner[x] = y`` with ``is_source[x]`` means
    the new ``x`` bounds ``U^E[y, x]`` times the new ``y``; ``partner == -1``
    marks generators of free summands of homology.
    """
    D = np.ascontiguousarray(D, dtype=np.uint8)
    E = np.ascontiguousarray(E, dtype=np.int64)
    if USE_NUMBA:
        return _reduce_numba(D, E)
    return _reduce_numpy(D, E)


# ---------------------------------------------------------------------------
# Linear systems over F2
# ---------------------------------------------------------------------------


def _rref_numpy(A, b, reverse):
    A = A.copy()
    b = b.copy()
    m, n = A.shape
    pivots = np.full(n, -1, dtype=np.int64)
    rank = 0
    cols = range(n - 1, -1, -1) if reverse else range(n)
    for j in cols:
        if rank == m:
            break
        hits = np.flatnonzero(A[rank:, j]) + rank
        if hits.size == 0:
            continue
        r = int(hits[0])
        if r != rank:
            A[[rank, r]] = A[[r, rank]]
            b[[rank, r]] = b[[r, rank]]
        others = np.flatnonzero(A[:, j])
        others = others[others != rank]
        if others.size:
            A[others] ^= A[rank]
            b[others] ^= b[rank]
        pivots[j] = rank
        rank += 1
    return A, b, pivots, rank


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _rref_numba(A, b, reverse):  # pragma: no cover - jitted
        A = A.copy()
        b = b.copy()
        m, n = A.shape
        pivots = np.full(n, -1, dtype=np.int64)
        rank = 0
        for t in range(n):
            j = n - 1 - t if reverse else t
            if rank == m:
                break
            r = -1
            for i in range(rank, m):
                if A[i, j] == 1:
                    r = i
                    break
            if r < 0:
                continue
            if r != rank:
                for c in range(n):
                    tmp = A[rank, c]
                    A[rank, c] = A[r, c]
                    A[r, c] = tmp
                tmp = b[rank]
                b[rank] = b[r]
                b[r] = tmp
            for i in range(m):
                if i != rank and A[i, j] == 1:
                    for c in range(n):
                        A[i, c] ^= A[rank, c]
                    b[i] ^= b[rank]
            pivots[j] = rank
            rank += 1
        return A, b, pivots, rank


def rref(A: np.ndarray, b: np.ndarray | None = None, reverse: bool = False):
    """Reduced row echelon form over F2 of ``[A | b]``.

    With ``reverse=True`` columns are eliminated from last to first, which is
    what makes "free variables set to zero" the lexicographically least
    solution in the original column order.
    """
    A = np.ascontiguousarray(A, dtype=np.uint8)
    if b is None:
        b = np.zeros(A.shape[0], dtype=np.uint8)
    b = np.ascontiguousarray(b, dtype=np.uint8)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A.copy(), b.copy(), np.full(A.shape[1], -1, dtype=np.int64), 0
    if USE_NUMBA:
        return _rref_numba(A, b, reverse)
    return _rref_numpy(A, b, reverse)


def solve_lexmin(A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Lexicographically least solution of ``A x = b`` over F2, or ``None``."""
    m, n = A.shape
    R, c, pivots, rank = rref(A, b, reverse=True)
    if rank < m and c[rank:].any():
        return None
    x = np.zeros(n, dtype=np.uint8)
    for j in range(n):
        if pivots[j] >= 0:
            x[j] = c[pivots[j]]
    return x


def rank(A: np.ndarray) -> int:
    return int(rref(A)[3])


def nullspace(A: np.ndarray) -> np.ndarray:
    """Rows form a basis of ``{x : A x = 0}`` over F2."""
    m, n = A.shape
    R, _, pivots, rk = rref(A)
    free = [j for j in range(n) if pivots[j] < 0]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for j in range(n):
            if pivots[j] >= 0 and R[pivots[j], f]:
                basis[k, j] = 1
    return basis


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product over F2 (float BLAS is exact here since sums stay below 2**24)."""
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
    prod = A.astype(np.float32) @ B.astype(np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of candidate chain maps
# ---------------------------------------------------------------------------


def _enumerate_numpy(rows, cols, Da, Db, Ia, Ib, ta, K, L, nb, na, batch=4096):
    m = rows.size
    total = 1 << m
    count = 0
    first = -1
    for start in range(0, total, batch):
        masks = np.arange(start, min(total, start + batch), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(m)[None, :]) & 1).astype(np.uint8)
        F = np.zeros((masks.size, nb, na), dtype=np.int64)
        F[:, rows, cols] = bits
        chain = (np.einsum("ij,bjk->bik", Db, F) + np.einsum("bij,jk->bik", F, Da)) & 1
        ok = ~chain.reshape(masks.size, -1).any(axis=1)
        image = (F @ ta) & 1
        tower = ((image @ K.T) & 1).any(axis=1)
        ok &= tower
        resid = (np.einsum("bij,jk->bik", F, Ia) + np.einsum("ij,bjk->bik", Ib, F)) & 1
        homotopic = ~((resid.reshape(masks.size, -1) @ L.T) & 1).any(axis=1)
        ok &= homotopic
        hits = np.flatnonzero(ok)
        if hits.size and first < 0:
            first = int(masks[hits[0]])
        count += int(hits.size)
    return count, first


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _enumerate_numba(rows, cols, Da, Db, Ia, Ib, ta, K, L, nb, na):  # pragma: no cover
        m = rows.size
        total = 1 << m
        count = 0
        first = -1
        F = np.zeros((nb, na), dtype=np.int64)
        chain = np.zeros((nb, na), dtype=np.int64)
        resid = np.zeros(nb * na, dtype=np.int64)
        image = np.zeros(nb, dtype=np.int64)
        for mask in range(total):
            for k in range(m):
                F[rows[k], cols[k]] = (mask >> k) & 1
            bad = False
            for i in range(nb):
                for j in range(na):
                    s = 0
                    for t in range(nb):
                        s += Db[i, t] * F[t, j]
                    for t in range(na):
                        s += F[i, t] * Da[t, j]
                    if s & 1:
                        bad = True
                        break
                if bad:
                    break
            if bad:
                continue
            for i in range(nb):
                s = 0
                for j in range(na):
                    s += F[i, j] * ta[j]
                image[i] = s & 1
            tower = False
            for r in range(K.shape[0]):
                s = 0
                for i in range(nb):
                    s += K[r, i] * image[i]
                if s & 1:
                    tower = True
                    break
            if not tower:
                continue
            for i in range(nb):
                for j in range(na):
                    s = 0
                    for t in range(na):
                        s += F[i, t] * Ia[t, j]
                    for t in range(nb):
                        s += Ib[i, t] * F[t, j]
                    resid[i * na + j] = s & 1
            homotopic = True
            for r in range(L.shape[0]):
                s = 0
                for c in range(nb * na):
                    s += L[r, c] * resid[c]
                if s & 1:
                    homotopic = False
                    break
            if not homotopic:
                continue
            count += 1
            if first < 0:
                first = mask
        return count, first


def enumerate_local_maps(rows, cols, Da, Db, Ia, Ib, ta, K, L):
    """Count degree-0 matrices supported on ``(rows, cols)`` that are local maps.

    ``K`` tests that the image of the source tower cycle ``ta`` survives
    localisation (some row of ``K`` pairs nontrivially with it) and ``L``
    spans the left null space of the homotopy system, so ``L r = 0`` exactly
    when ``r = f iota + iota' f`` is a null-homotopic residual.
    Returns ``(count, first_mask)``.
    """
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (rows, cols, Da, Db, Ia, Ib, ta, K, L)]
    nb, na = Db.shape[0], Da.shape[0]
    if USE_NUMBA:
        return _enumerate_numba(*args, nb, na)
    return _enumerate_numpy(*args, nb, na)


# ---------------------------------------------------------------------------
# Product enumeration for sums of staircases
# ---------------------------------------------------------------------------


def _minmax_numpy(alphas, betas, offsets):
    sa = np.zeros(1, dtype=np.int64)
    sb = np.zeros(1, dtype=np.int64)
    for k in range(offsets.size - 1):
        a = alphas[offsets[k]:offsets[k + 1]]
        b = betas[offsets[k]:offsets[k + 1]]
        sa = (sa[:, None] + a[None, :]).ravel()
        sb = (sb[:, None] + b[None, :]).ravel()
    return int(np.maximum(sa, sb).min())


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _minmax_numba(alphas, betas, offsets):  # pragma: no cover - jitted
        k = offsets.size - 1
        idx = np.zeros(k, dtype=np.int64)
        best = np.iinfo(np.int64).max
        while True:
            sa = 0
            sb = 0
            for t in range(k):
                sa += alphas[offsets[t] + idx[t]]
                sb += betas[offsets[t] + idx[t]]
            v = sa if sa > sb else sb
            if v < best:
                best = v
            t = 0
            while t < k:
                idx[t] += 1
                if idx[t] < offsets[t + 1] - offsets[t]:
                    break
                idx[t] = 0
                t += 1
            if t == k:
                break
        return best


def min_of_max_over_products(alphas, betas, offsets) -> int:
    """``min over tuples of max(sum alpha, sum beta)`` for concatenated corner lists."""
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (alphas, betas, offsets)]
    if USE_NUMBA:
        return int(_minmax_numba(*args))
    return _minmax_numpy(*args)


# ---------------------------------------------------------------------------
# Definiteness grid scan
# ---------------------------------------------------------------------------


def _grid_numpy(Ms, Ns, ells):
    M, N1, N2, L = np.meshgrid(Ms, Ns, Ns, ells, indexing="ij")
    l2 = L * L
    trace_term = l2 * (N1 * N1 + N2 * N2) - (N1 + N2) * M
    det_term = M * N1 * N2 * (M - l2 * (N1 + N2))
    by_poly = (trace_term > 0) & (det_term > 0)
    a11 = N1 * (M - N1 * l2)
    a22 = N2 * (M - N2 * l2)
    a12 = -N1 * N2 * l2
    by_matrix = (a11 < 0) & (a11 * a22 - a12 * a12 > 0)
    return by_poly, by_matrix


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _grid_numba(Ms, Ns, ells):  # pragma: no cover - jitted
        shape = (Ms.size, Ns.size, Ns.size, ells.size)
        by_poly = np.zeros(shape, dtype=np.bool_)
        by_matrix = np.zeros(shape, dtype=np.bool_)
        for a in range(Ms.size):
            M = Ms[a]
            for b in range(Ns.size):
                N1 = Ns[b]
                for c in range(Ns.size):
                    N2 = Ns[c]
                    for d in range(ells.size):
                        l2 = ells[d] * ells[d]
                        tr = l2 * (N1 * N1 + N2 * N2) - (N1 + N2) * M
                        de = M * N1 * N2 * (M - l2 * (N1 + N2))
                        by_poly[a, b, c, d] = tr > 0 and de > 0
                        a11 = N1 * (M - N1 * l2)
                        a22 = N2 * (M - N2 * l2)
                        a12 = -N1 * N2 * l2
                        by_matrix[a, b, c, d] = a11 < 0 and a11 * a22 - a12 * a12 > 0
        return by_poly, by_matrix


def definiteness_grid(Ms, Ns, ells):
    """Evaluate both definiteness tests on the full product grid."""
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (Ms, Ns, ells)]
    if USE_NUMBA:
        return _grid_numba(*args)
    return _grid_numpy(*args)
