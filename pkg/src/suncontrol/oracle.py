"""Brute-force Lie algebra rank condition.

The span of the generators is closed under commutators generation by
generation: every direction found in generation g-1 is bracketed against the
whole current basis.  Work happens on real coordinate vectors, so all rank
decisions are real-valued.  Once nothing new turns up, one full pairwise round
over the final basis confirms that the span is closed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .algebra import SU_TOL, su_dimension, validate_su, x_matrix, y_matrix
from .errors import ClosureNotConverged, DimensionError

RANK_TOL = 1e-8


@dataclass(frozen=True)
class BracketClosure:
    n_levels: int
    dimension: int
    basis: np.ndarray
    depth: int
    log: list = field(default_factory=list)

    @property
    def is_full(self) -> bool:
        return self.dimension == su_dimension(self.n_levels)


def closure_of_subspaces(generators, rank_tol: float = RANK_TOL, max_generations: int | None = None,
                         backend: str | None = None, n_levels: int | None = None) -> BracketClosure:
    """Dimension of the Lie algebra generated by ``generators`` (su(N) matrices).

    ``log`` holds one entry per basis vector: ``("gen", k)`` for the k-th
    generator or ``(generation, a, b)`` when it came from [basis[a], basis[b]].
    """
    kern = kernels.get_backend(backend)
    mats = [np.asarray(g, dtype=np.complex128) for g in generators]
    if not mats:
        if n_levels is None:
            raise DimensionError("an empty generator list needs n_levels")
        return BracketClosure(n_levels, 0, np.zeros((0, su_dimension(n_levels))), 0)
    n_levels = mats[0].shape[0]
    for g in mats:
        if g.shape != (n_levels, n_levels):
            raise DimensionError("generators must share one shape")
        validate_su(g, SU_TOL)
    coords = kernels.matrices_to_coords(np.array(mats))
    return closure_of_coords(coords, n_levels, rank_tol, max_generations, kern)


def closure_of_coords(coords, n_levels: int, rank_tol: float = RANK_TOL,
                      max_generations: int | None = None, kern=None) -> BracketClosure:
    kern = kern or kernels.get_backend()
    n = su_dimension(n_levels)
    if max_generations is None:
        max_generations = n_levels * n_levels
    coords = np.atleast_2d(np.asarray(coords, dtype=np.float64)).reshape(-1, n)
    Q = np.zeros((n, n))
    scale = float(np.max(np.linalg.norm(coords, axis=1))) if coords.size else 0.0
    k, acc = kern.extend_orthonormal(Q, 0, coords, rank_tol, rank_tol * scale)
    log = [("gen", int(r)) for r in acc]
    new = np.arange(k)
    depth = 0
    verified = False
    while k < n:
        if new.size == 0:
            if verified:
                break
            # full pairwise confirmation round
            verified = True
            W = kern.bracket_block(Q[:k], Q[:k], n_levels)
            k0 = k
            k, acc = kern.extend_orthonormal(Q, k, W, rank_tol, rank_tol)
            log.extend(("verify", int(r) // k0, int(r) % k0) for r in acc)
            new = np.arange(k0, k)
            continue
        if depth >= max_generations:
            raise ClosureNotConverged(
                f"closure still growing after {max_generations} generations (dimension {k})", k)
        depth += 1
        k0 = k
        # orthonormal inputs: brackets are O(1), so rank_tol doubles as the noise floor
        W = kern.bracket_block(Q[new], Q[:k0], n_levels)
        k, acc = kern.extend_orthonormal(Q, k, W, rank_tol, rank_tol)
        log.extend((depth, int(new[r // k0]), int(r % k0)) for r in acc)
        new = np.arange(k0, k)
    return BracketClosure(n_levels, int(k), Q[:k].copy(), depth, log)


def lie_closure(sys, rank_tol: float | None = None, max_generations: int | None = None,
                backend: str | None = None) -> BracketClosure:
    """Closure of span{A, B} for a control system."""
    tol = sys.tolerances.rank if rank_tol is None else rank_tol
    return closure_of_subspaces([sys.A, sys.B], tol, max_generations, backend)


def root_space_generators(pairs, n_levels: int) -> list[np.ndarray]:
    """X_ij and Y_ij for each level pair: the real root spaces f_ij."""
    gens = []
    for i, j in pairs:
        gens.append(x_matrix(i, j, n_levels))
        gens.append(y_matrix(i, j, n_levels))
    return gens
