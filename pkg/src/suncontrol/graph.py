"""Transition graph of a coupling matrix and P-irreducibility."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

EDGE_TOL = 1e-10


@dataclass(frozen=True)
class TransitionGraph:
    n_nodes: int
    edges: frozenset

    @classmethod
    def from_edges(cls, n_nodes: int, edges) -> "TransitionGraph":
        clean = set()
        for i, j in edges:
            if i == j:
                continue
            clean.add((min(i, j), max(i, j)))
        return cls(n_nodes, frozenset(clean))

    def components(self) -> list[list[int]]:
        """Connected components as sorted node lists, ordered by first node."""
        if not self.edges:
            return [[k] for k in range(self.n_nodes)]
        rows, cols = zip(*self.edges)
        adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.n_nodes, self.n_nodes))
        _, labels = connected_components(adj, directed=False)
        groups: dict[int, list[int]] = {}
        for node, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(node)
        return sorted(groups.values(), key=lambda g: g[0])

    def edge_list_text(self) -> str:
        return "\n".join(f"{i + 1} {j + 1}" for i, j in sorted(self.edges))


def build_graph(B, threshold: float | None = None) -> TransitionGraph:
    """Edges (i, j), i < j, wherever |B_ij| exceeds the threshold."""
    B = np.asarray(B)
    if threshold is None:
        threshold = EDGE_TOL * max(1.0, float(np.max(np.abs(B))))
    mask = np.abs(B) > threshold
    np.fill_diagonal(mask, False)
    mask = mask | mask.T
    iu, ju = np.nonzero(np.triu(mask, 1))
    return TransitionGraph(B.shape[0], frozenset(zip(iu.tolist(), ju.tolist())))


def is_connected(g: TransitionGraph) -> bool:
    return len(g.components()) == 1


def is_p_irreducible(B, threshold: float | None = None) -> bool:
    """No permutation brings B to block upper-triangular form.

    For Hermitian or skew-Hermitian B this is connectivity of its graph.
    """
    return is_connected(build_graph(B, threshold))


def fundamental_coverage(gamma_plus, n_levels: int) -> bool:
    """True iff every nearest-neighbour pair (k, k+1) is touched."""
    touched = {(min(i, j), max(i, j)) for i, j in gamma_plus}
    return all((k, k + 1) in touched for k in range(n_levels - 1))
