"""Positive roots alpha_ij = E_j - E_i and the regularity tests built on them.

Root values at a diagonal element are compared by magnitude: alpha and -alpha
are both roots, so a value v colliding with -w is as bad as colliding with w.
For the drift, with sorted energies, every value is already nonnegative.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .graph import build_graph

ROOT_TOL = 1e-9


@dataclass(frozen=True)
class Root:
    i: int
    j: int
    value_at_drift: float


def compute_roots(energies) -> list[Root]:
    """All N(N-1)/2 positive roots, lexicographic in (i, j)."""
    e = np.asarray(energies, dtype=np.float64)
    n = e.size
    return [Root(i, j, float(e[j] - e[i])) for i in range(n) for j in range(i + 1, n)]


def diagonal_root_values(coeffs) -> np.ndarray:
    """c_i - c_j for every pair i < j, lexicographic."""
    c = np.asarray(coeffs, dtype=np.float64)
    iu, ju = np.triu_indices(c.size, k=1)
    return c[iu] - c[ju]


def scaled_tol(tol: float, coeffs) -> float:
    c = np.asarray(coeffs, dtype=np.float64)
    spread = float(c.max() - c.min()) if c.size else 0.0
    return tol * max(1.0, spread)


def find_collision(values, tol: float):
    """First obstruction to regularity, or None.

    Returns ``("zero", k)`` for a vanishing value or ``("equal", k, l)`` for two
    values of equal magnitude (positions into ``values``).
    """
    a = np.abs(np.asarray(values, dtype=np.float64))
    for k in range(a.size):
        if a[k] <= tol:
            return ("zero", k)
    order = np.argsort(a, kind="stable")
    gaps = np.diff(a[order])
    hit = np.flatnonzero(gaps <= tol)
    if hit.size:
        k = int(hit[0])
        return ("equal", int(order[k]), int(order[k + 1]))
    return None


def is_regular(values, tol: float = ROOT_TOL) -> bool:
    """Every value nonzero and no two values equal in magnitude."""
    if len(values) == 0:
        raise ValueError("is_regular needs at least one value")
    return find_collision(values, tol) is None


def regular_subset(values, candidates, tol: float) -> list[int]:
    """Positions in ``candidates`` whose value is nonzero and unique over all ``values``."""
    a = np.abs(np.asarray(values, dtype=np.float64))
    keep = []
    for k in candidates:
        if a[k] <= tol:
            continue
        others = np.delete(a, k)
        if others.size and np.min(np.abs(others - a[k])) <= tol:
            continue
        keep.append(k)
    return keep


@dataclass(frozen=True)
class RootTable:
    """Root values of one control system together with the derived index sets.

    Index sets hold positions into ``roots`` (equivalently into the value
    arrays), not level pairs; ``pairs`` converts.
    """

    n_levels: int
    roots: tuple[Root, ...]
    values_at_drift: np.ndarray
    values_at_B0: np.ndarray
    values_at_D0: np.ndarray | None
    gamma_plus: tuple[int, ...]
    theta_plus_A: tuple[int, ...]
    omega_plus_A: tuple[int, ...]
    theta_plus_B: tuple[int, ...]
    drift_tol: float
    b0_tol: float
    d0_tol: float | None

    def pairs(self, positions) -> list[tuple[int, int]]:
        return [(self.roots[k].i, self.roots[k].j) for k in positions]

    def position(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        n = self.n_levels
        return i * n - i * (i + 1) // 2 + (j - i - 1)


def make_root_table(energies, gamma_plus_pairs, b0_coeffs=None, d0_coeffs=None,
                    tol: float = ROOT_TOL) -> RootTable:
    """Assemble a RootTable from raw data (energies sorted ascending)."""
    e = np.asarray(energies, dtype=np.float64)
    n = e.size
    roots = tuple(compute_roots(e))
    drift = np.array([r.value_at_drift for r in roots])
    b0 = np.zeros(n) if b0_coeffs is None else np.asarray(b0_coeffs, dtype=np.float64)
    b0_values = diagonal_root_values(b0)
    drift_tol = scaled_tol(tol, e)
    b0_tol = scaled_tol(tol, b0)
    index = {(r.i, r.j): k for k, r in enumerate(roots)}
    gamma = tuple(sorted(index[(min(i, j), max(i, j))] for i, j in gamma_plus_pairs))
    theta_a = tuple(regular_subset(drift, gamma, drift_tol))
    omega_a = tuple(k for k in gamma if k not in theta_a)
    theta_b = tuple(regular_subset(b0_values, gamma, b0_tol))
    if d0_coeffs is None:
        d0_values, d0_tol = None, None
    else:
        d0 = np.asarray(d0_coeffs, dtype=np.float64)
        d0_values, d0_tol = diagonal_root_values(d0), scaled_tol(tol, d0)
    return RootTable(n, roots, drift, b0_values, d0_values, gamma, theta_a, omega_a, theta_b,
                     drift_tol, b0_tol, d0_tol)


def b0_coefficients(sys) -> np.ndarray:
    """Real c with B_0 = i diag(c)."""
    return np.diag(sys.B).imag.copy()


def build_root_table(sys, d0_coeffs=None) -> RootTable:
    g = build_graph(sys.B, sys.edge_threshold)
    return make_root_table(sys.energies, g.edges, b0_coefficients(sys), d0_coeffs,
                           sys.tolerances.root_eq)


def is_B_regular(table: RootTable) -> bool:
    """Drift values over Gamma+ nonzero and pairwise distinct."""
    if not table.gamma_plus:
        raise DegenerateInputError("B has no off-diagonal part: Gamma+ is empty")
    return is_regular(table.values_at_drift[list(table.gamma_plus)], table.drift_tol)


def split_regular(table: RootTable) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(Theta+_A, Omega+_A): Gamma+ split by uniqueness of the drift value over all roots."""
    return table.theta_plus_A, table.omega_plus_A
