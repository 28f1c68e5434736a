"""Hot loops of the bracket-closure oracle, in numba and pure numpy flavours.

Both backends work on real coordinate vectors in the fixed su(N) basis order
(Cartan coefficients, then X(i,j), then Y(i,j), pairs lexicographic).  The
public names ``bracket_block`` and ``extend_orthonormal`` point at the numba
versions when numba is importable and not disabled through
``SUNCONTROL_DISABLE_NUMBA``; ``get_backend`` hands out either set explicitly.
"""
from __future__ import annotations

from types import SimpleNamespace

import numpy as np

from ._numba_compat import NUMBA_AVAILABLE, njit


def pair_indices(n_levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Row and column indices (0-based, i < j) in lexicographic order."""
    iu, ju = np.triu_indices(n_levels, k=1)
    return iu.astype(np.int64), ju.astype(np.int64)


# ---------------------------------------------------------------------------
# pure numpy
# ---------------------------------------------------------------------------

def coords_to_matrices(coords: np.ndarray, n_levels: int) -> np.ndarray:
    """Stack of su(N) matrices from a (k, N^2-1) coordinate array."""
    coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
    count = coords.shape[0]
    nc = n_levels - 1
    iu, ju = pair_indices(n_levels)
    npair = iu.size
    cart = np.zeros((count, n_levels + 1))
    cart[:, 1:n_levels] = coords[:, :nc]
    diag = cart[:, 1:] - cart[:, :-1]
    out = np.zeros((count, n_levels, n_levels), dtype=np.complex128)
    idx = np.arange(n_levels)
    out[:, idx, idx] = 1j * diag
    x = coords[:, nc:nc + npair]
    y = coords[:, nc + npair:]
    out[:, iu, ju] = x + 1j * y
    out[:, ju, iu] = -x + 1j * y
    return out


def matrices_to_coords(mats: np.ndarray) -> np.ndarray:
    """Project a stack of N x N matrices onto su(N) and return coordinates.

    The off-diagonal part is symmetrised and the diagonal made traceless, so
    the result is the Frobenius-orthogonal projection onto su(N); callers that
    care about non-su input check the reconstruction residual themselves.
    """
    mats = np.asarray(mats)
    if mats.ndim == 2:
        mats = mats[None]
    n_levels = mats.shape[-1]
    iu, ju = pair_indices(n_levels)
    upper = mats[:, iu, ju]
    lower = mats[:, ju, iu]
    x = 0.5 * (upper.real - lower.real)
    y = 0.5 * (upper.imag + lower.imag)
    h = np.diagonal(mats, axis1=1, axis2=2).imag
    h = h - h.mean(axis=1, keepdims=True)
    cart = np.cumsum(h, axis=1)[:, :-1]
    return np.concatenate([cart, x, y], axis=1)


def _bracket_block_numpy(U: np.ndarray, V: np.ndarray, n_levels: int) -> np.ndarray:
    um = coords_to_matrices(U, n_levels)
    vm = coords_to_matrices(V, n_levels)
    # for skew-Hermitian X, Y:  YX = (XY)^H, so [X, Y] = P - P^H with P = XY
    prod = um[:, None] @ vm[None, :]
    comm = prod - np.conj(np.swapaxes(prod, -1, -2))
    return matrices_to_coords(comm.reshape(-1, n_levels, n_levels))


def _extend_orthonormal_numpy(Q, k, W, rank_tol, floor):
    nmax = Q.shape[0]
    W = np.atleast_2d(np.asarray(W, dtype=np.float64))
    norm0 = np.linalg.norm(W, axis=1)
    R = W.copy()
    if k > 0:
        basis = Q[:k]
        for _ in range(2):
            R -= (R @ basis.T) @ basis
    res = np.linalg.norm(R, axis=1)
    # projecting onto later basis vectors only shrinks the residual further
    survivors = np.flatnonzero((norm0 > floor) & (res > rank_tol * norm0))
    accepted = []
    for r in survivors:
        if k >= nmax:
            break
        w = R[r]
        for _ in range(2):
            w = w - Q[:k].T @ (Q[:k] @ w)
        nw = np.linalg.norm(w)
        if nw > rank_tol * norm0[r]:
            Q[k] = w / nw
            k += 1
            accepted.append(r)
    return k, np.asarray(accepted, dtype=np.int64)


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------

@njit(cache=True)
def _fill_matrix(c, n_levels, iu, ju, out):
    nc = n_levels - 1
    npair = iu.shape[0]
    for a in range(n_levels):
        for b in range(n_levels):
            out[a, b] = 0.0
    prev = 0.0
    for k in range(n_levels):
        cur = c[k] if k < nc else 0.0
        out[k, k] = 1j * (cur - prev)
        prev = cur
    for p in range(npair):
        i = iu[p]
        j = ju[p]
        x = c[nc + p]
        y = c[nc + npair + p]
        out[i, j] = x + 1j * y
        out[j, i] = -x + 1j * y


@njit(cache=True)
def _bracket_block_numba(U, V, n_levels, iu, ju):
    p = U.shape[0]
    q = V.shape[0]
    n = U.shape[1]
    nc = n_levels - 1
    npair = iu.shape[0]
    um = np.empty((p, n_levels, n_levels), dtype=np.complex128)
    vm = np.empty((q, n_levels, n_levels), dtype=np.complex128)
    for a in range(p):
        _fill_matrix(U[a], n_levels, iu, ju, um[a])
    for b in range(q):
        _fill_matrix(V[b], n_levels, iu, ju, vm[b])
    W = np.empty((p * q, n))
    P = np.empty((n_levels, n_levels), dtype=np.complex128)
    for a in range(p):
        X = um[a]
        for b in range(q):
            Y = vm[b]
            for i in range(n_levels):
                for j in range(n_levels):
                    acc = 0.0j
                    for t in range(n_levels):
                        acc += X[i, t] * Y[t, j]
                    P[i, j] = acc
            row = a * q + b
            # [X, Y]_kk = 2i Im P_kk; cumulative sums give Cartan coefficients
            s = 0.0
            for kk in range(nc):
                s += 2.0 * P[kk, kk].imag
                W[row, kk] = s
            for pp in range(npair):
                i = iu[pp]
                j = ju[pp]
                W[row, nc + pp] = P[i, j].real - P[j, i].real
                W[row, nc + npair + pp] = P[i, j].imag + P[j, i].imag
    return W


@njit(cache=True)
def _extend_orthonormal_numba(Q, k, W, rank_tol, floor):
    nmax = Q.shape[0]
    n = Q.shape[1]
    accepted = np.empty(W.shape[0], dtype=np.int64)
    na = 0
    w = np.empty(n)
    for r in range(W.shape[0]):
        if k >= nmax:
            break
        norm0 = 0.0
        for t in range(n):
            w[t] = W[r, t]
            norm0 += w[t] * w[t]
        norm0 = np.sqrt(norm0)
        if norm0 <= floor:
            continue
        for _sweep in range(2):
            for s in range(k):
                dot = 0.0
                for t in range(n):
                    dot += Q[s, t] * w[t]
                for t in range(n):
                    w[t] -= dot * Q[s, t]
        res = 0.0
        for t in range(n):
            res += w[t] * w[t]
        res = np.sqrt(res)
        if res > rank_tol * norm0:
            for t in range(n):
                Q[k, t] = w[t] / res
            k += 1
            accepted[na] = r
            na += 1
    return k, accepted[:na]


def _bracket_block_numba_entry(U, V, n_levels):
    iu, ju = pair_indices(n_levels)
    U = np.ascontiguousarray(np.atleast_2d(U), dtype=np.float64)
    V = np.ascontiguousarray(np.atleast_2d(V), dtype=np.float64)
    return _bracket_block_numba(U, V, n_levels, iu, ju)


def _extend_orthonormal_numba_entry(Q, k, W, rank_tol, floor):
    W = np.ascontiguousarray(np.atleast_2d(W), dtype=np.float64)
    k, acc = _extend_orthonormal_numba(Q, int(k), W, float(rank_tol), float(floor))
    return int(k), acc


_BACKENDS = {
    "numpy": SimpleNamespace(
        name="numpy",
        bracket_block=_bracket_block_numpy,
        extend_orthonormal=_extend_orthonormal_numpy,
    ),
    "numba": SimpleNamespace(
        name="numba",
        bracket_block=_bracket_block_numba_entry,
        extend_orthonormal=_extend_orthonormal_numba_entry,
    ),
}

DEFAULT_BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


def get_backend(name: str | None = None) -> SimpleNamespace:
    """Return the kernel set called ``name`` (default: the active one)."""
    name = name or DEFAULT_BACKEND
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is unavailable or disabled")
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}") from None


_active = get_backend()
bracket_block = _active.bracket_block
extend_orthonormal = _active.extend_orthonormal
