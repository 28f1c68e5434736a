"""Derived brackets C = [A, B], D = [C, B] and the A-bracket matrix M.

With A = -i diag(E) and B = (b_ij), the diagonal of D comes out as

    D_kk = i * d_k,   d_k = 2 * sum_l (E_k - E_l) |b_kl|^2

so the reported real coefficients are d = Im diag(D) and ``DIAGONAL_PHASE``
records the constant i.  ``derive_brackets`` recomputes d from the energy
formula and refuses to continue if the two disagree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import commutator
from .errors import ConsistencyError, DegenerateInputError
from .roots import RootTable, build_root_table

DIAGONAL_PHASE = 1j
D_CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class DerivedBrackets:
    C: np.ndarray
    D: np.ndarray
    B0: np.ndarray
    B1: np.ndarray
    D0: np.ndarray
    D1: np.ndarray
    d: np.ndarray
    d_formula: np.ndarray
    Br: np.ndarray
    Bs: np.ndarray
    Cr: np.ndarray
    table: RootTable


@dataclass(frozen=True)
class AMatrix:
    """Rows: coordinates of ad_A^k B, k = 1..2m, along (E_1..E_m, E_-1..E_-m)."""

    pairs: tuple[tuple[int, int], ...]
    entries: np.ndarray

    @property
    def m(self) -> int:
        return len(self.pairs)


def split_diagonal(M) -> tuple[np.ndarray, np.ndarray]:
    M = np.asarray(M)
    diag = np.diag(np.diag(M))
    return diag, M - diag


def d_from_energies(energies, B) -> np.ndarray:
    """d_k = 2 E_k sum_l |b_kl|^2 - 2 sum_l E_l |b_kl|^2 (l != k)."""
    e = np.asarray(energies, dtype=np.float64)
    w = np.abs(np.asarray(B)) ** 2
    np.fill_diagonal(w, 0.0)
    return 2.0 * (e * w.sum(axis=1) - w @ e)


def _restrict(M, pairs) -> np.ndarray:
    out = np.zeros_like(M)
    for i, j in pairs:
        out[i, j] = M[i, j]
        out[j, i] = M[j, i]
    return out


def derive_brackets(sys) -> DerivedBrackets:
    A, B = sys.A, sys.B
    if np.any(np.abs(A - np.diag(np.diag(A))) > 0):
        raise DegenerateInputError("derive_brackets needs a diagonal drift")
    C = commutator(A, B)
    D = commutator(C, B)
    B0, B1 = split_diagonal(B)
    D0, D1 = split_diagonal(D)
    diag = np.diag(D) / DIAGONAL_PHASE
    d = diag.real.copy()
    d_formula = d_from_energies(sys.energies, B)
    scale = max(1.0, float(np.max(np.abs(D))))
    dev = float(np.max(np.abs(diag - d_formula)))
    if dev > D_CONSISTENCY_TOL * scale:
        raise ConsistencyError(f"diag([C,B]) disagrees with the energy formula for d_k by {dev:.3e}")
    table = build_root_table(sys, d0_coeffs=d)
    Br = B0 + _restrict(B, table.pairs(table.theta_plus_A))
    Bs = _restrict(B, table.pairs(table.omega_plus_A))
    Cr = _restrict(C, table.pairs(table.theta_plus_B))
    return DerivedBrackets(C, D, B0, B1, D0, D1, d, d_formula, Br, Bs, Cr, table)


def krylov_root_matrix(A, B, pairs) -> AMatrix:
    """Build M from actual iterated commutators [A, [A, ... B]]."""
    pairs = tuple((min(i, j), max(i, j)) for i, j in pairs)
    m = len(pairs)
    if m == 0:
        raise DegenerateInputError("M needs at least one touched root")
    rows = np.empty((2 * m, 2 * m), dtype=np.complex128)
    up = tuple(np.array(p) for p in zip(*pairs))
    down = (up[1], up[0])
    cur = np.asarray(B, dtype=np.complex128)
    for k in range(2 * m):
        cur = commutator(A, cur)
        rows[k, :m] = cur[up]
        rows[k, m:] = cur[down]
    return AMatrix(pairs, rows)


def build_M(sys, pairs=None) -> AMatrix:
    """M for the drift of ``sys`` over Gamma+ (or over explicit level pairs)."""
    if pairs is None:
        table = build_root_table(sys)
        pairs = table.pairs(table.gamma_plus)
    return krylov_root_matrix(sys.A, sys.B, pairs)


def det_M(M: AMatrix) -> complex:
    return complex(np.linalg.det(M.entries))


def det_M_log_ratio(M: AMatrix) -> float:
    """log(|det M| / prod of row norms); -inf when M is singular."""
    norms = np.linalg.norm(M.entries, axis=1)
    if np.any(norms == 0):
        return -np.inf
    sign, logabs = np.linalg.slogdet(M.entries)
    if sign == 0:
        return -np.inf
    return float(logabs - np.sum(np.log(norms)))


def det_M_nonzero(sys, tol: float = 1e-8, pairs=None) -> bool:
    """|det M| above ``tol`` relative to the product of its row norms."""
    return det_M_log_ratio(build_M(sys, pairs)) > np.log(tol)


def effective_diagonal_roots(source: str, derived: DerivedBrackets) -> np.ndarray:
    """Root values at B0 or D0: coefficient at i minus coefficient at j, per root."""
    if source == "B0":
        return derived.table.values_at_B0
    if source == "D0":
        return derived.table.values_at_D0
    raise ValueError(f"source must be 'B0' or 'D0', got {source!r}")
