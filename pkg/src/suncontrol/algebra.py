"""Numerical su(N): Weyl basis, commutators, coordinates, Killing form.

Elements of su(N) are plain complex ``(N, N)`` numpy arrays.  Coordinates are
real vectors of length N^2-1 in the order

    iH_1 .. iH_{N-1},  X(1,2), X(1,3), .., X(N-1,N),  Y(1,2), .., Y(N-1,N)

with iH_k = i(E_kk - E_{k+1,k+1}), X(i,j) = E_ij - E_ji, Y(i,j) = i(E_ij + E_ji).
Indices are 0-based in code and 1-based in anything printed for humans.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DimensionError, ValidationError

SU_TOL = 1e-10

CARTAN = "CARTAN"
X_KIND = "X"
Y_KIND = "Y"


@dataclass(frozen=True)
class BasisElement:
    kind: str
    i: int
    j: int
    matrix: np.ndarray

    @property
    def label(self) -> str:
        if self.kind == CARTAN:
            return f"iH{self.i + 1}"
        return f"{self.kind}{self.i + 1}{self.j + 1}"


def su_dimension(n_levels: int) -> int:
    return n_levels * n_levels - 1


def check_levels(n_levels: int) -> int:
    if int(n_levels) != n_levels or n_levels < 2:
        raise DimensionError(f"number of levels must be an integer >= 2, got {n_levels!r}")
    return int(n_levels)


def elementary(i: int, j: int, n_levels: int) -> np.ndarray:
    """E_ij: 1 in slot (i, j), zero elsewhere."""
    m = np.zeros((n_levels, n_levels), dtype=np.complex128)
    m[i, j] = 1.0
    return m


def x_matrix(i: int, j: int, n_levels: int) -> np.ndarray:
    """X_ij = E_ij - E_ji for any index pair (so X_ji = -X_ij, X_ii = 0)."""
    return elementary(i, j, n_levels) - elementary(j, i, n_levels)


def y_matrix(i: int, j: int, n_levels: int) -> np.ndarray:
    """Y_ij = i(E_ij + E_ji) for any index pair (so Y_ji = Y_ij)."""
    return 1j * (elementary(i, j, n_levels) + elementary(j, i, n_levels))


def cartan_matrix(k: int, n_levels: int) -> np.ndarray:
    """iH_k = i(E_kk - E_{k+1,k+1})."""
    return 1j * (elementary(k, k, n_levels) - elementary(k + 1, k + 1, n_levels))


@lru_cache(maxsize=None)
def _weyl_basis(n_levels: int) -> tuple[BasisElement, ...]:
    elems = []
    for k in range(n_levels - 1):
        elems.append(BasisElement(CARTAN, k, k + 1, cartan_matrix(k, n_levels)))
    iu, ju = kernels.pair_indices(n_levels)
    for i, j in zip(iu, ju):
        elems.append(BasisElement(X_KIND, int(i), int(j), x_matrix(i, j, n_levels)))
    for i, j in zip(iu, ju):
        elems.append(BasisElement(Y_KIND, int(i), int(j), y_matrix(i, j, n_levels)))
    for e in elems:
        e.matrix.setflags(write=False)
    return tuple(elems)


def weyl_basis(n_levels: int) -> list[BasisElement]:
    """Ordered Weyl basis of su(N): Cartan part first, then X and Y blocks."""
    return list(_weyl_basis(check_levels(n_levels)))


@lru_cache(maxsize=None)
def basis_stack(n_levels: int) -> np.ndarray:
    stack = np.array([e.matrix for e in _weyl_basis(check_levels(n_levels))])
    stack.setflags(write=False)
    return stack


def coordinate_index(kind: str, i: int, j: int, n_levels: int) -> int:
    """Slot of a basis element inside a coordinate vector."""
    if kind == CARTAN:
        return i
    if i > j:
        i, j = j, i
    npair = n_levels * (n_levels - 1) // 2
    # lexicographic rank of (i, j) among pairs i < j
    rank = i * n_levels - i * (i + 1) // 2 + (j - i - 1)
    offset = n_levels - 1 + (0 if kind == X_KIND else npair)
    return offset + rank


def _as_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    check_levels(M.shape[0])
    return M


def su_violation(M) -> float:
    """Largest deviation from skew-Hermitian tracelessness, in entry units."""
    M = np.asarray(M, dtype=np.complex128)
    skew = np.max(np.abs(M + M.conj().T)) if M.size else 0.0
    trace = abs(np.trace(M)) / M.shape[0]
    return float(max(skew, trace))


def validate_su(M, tol: float = SU_TOL) -> np.ndarray:
    """Return ``M`` as a complex array, raising if it is not in su(N)."""
    M = _as_square(M)
    scale = float(np.max(np.abs(M))) if M.size else 0.0
    if su_violation(M) > tol * scale:
        bad = np.argwhere(np.abs(M + M.conj().T) > tol * scale)
        where = f" at entry ({bad[0][0] + 1},{bad[0][1] + 1})" if bad.size else " (nonzero trace)"
        raise ValidationError(f"matrix is not traceless skew-Hermitian{where}")
    return M


def commutator(X, Y) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    if X.shape != Y.shape:
        raise DimensionError(f"commutator of mismatched shapes {X.shape} and {Y.shape}")
    return X @ Y - Y @ X


def reconstruct(coords, n_levels: int | None = None) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.float64)
    if n_levels is None:
        n_levels = int(round(np.sqrt(coords.shape[-1] + 1)))
    if coords.shape[-1] != su_dimension(n_levels):
        raise DimensionError(f"{coords.shape[-1]} coordinates do not fit su({n_levels})")
    out = kernels.coords_to_matrices(coords, n_levels)
    return out[0] if coords.ndim == 1 else out


def decompose(M, tol: float = SU_TOL) -> np.ndarray:
    """Real coordinates of ``M`` in the Weyl basis.

    Raises ValidationError when ``M`` is not skew-Hermitian traceless, or when
    the reconstruction misses ``M`` by more than ``tol`` relative to its size.
    """
    M = validate_su(M, tol)
    coords = kernels.matrices_to_coords(M)[0]
    residual = np.max(np.abs(reconstruct(coords, M.shape[0]) - M))
    scale = max(float(np.max(np.abs(M))), 1.0)
    if residual > tol * scale:
        raise ValidationError(f"reconstruction residual {residual:.3e} exceeds tolerance")
    return coords


def adjoint_matrix(X) -> np.ndarray:
    """Matrix of ad_X in the Weyl basis; column k = decompose([X, basis[k]])."""
    X = validate_su(X)
    n_levels = X.shape[0]
    cx = kernels.matrices_to_coords(X)
    basis = np.eye(su_dimension(n_levels))
    return kernels.bracket_block(cx, basis, n_levels).T


def killing_form(X, Y) -> float:
    """trace(ad_X ad_Y), computed from the adjoint matrices."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise DimensionError(f"Killing form of mismatched shapes {X.shape} and {Y.shape}")
    return float(np.trace(adjoint_matrix(X) @ adjoint_matrix(Y)))
