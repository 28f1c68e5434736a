import itertools

import numpy as np

from conftest import coupling_from_pairs, random_su
from suncontrol.algebra import cartan_matrix
from suncontrol.graph import (
    TransitionGraph,
    build_graph,
    fundamental_coverage,
    is_connected,
    is_p_irreducible,
)


def _block_upper_witness(B):
    """Exhaustive search for P with P^T B P block upper triangular."""
    n = B.shape[0]
    nz = np.abs(B) > 1e-12
    for perm in itertools.permutations(range(n)):
        M = nz[np.ix_(perm, perm)]
        for k in range(1, n):
            if not M[k:, :k].any():
                return perm, k
    return None


def test_build_graph_examples():
    assert build_graph(cartan_matrix(0, 3)).edges == frozenset()
    path = build_graph(1j * coupling_from_pairs(4, [(0, 1), (1, 2), (2, 3)]))
    assert path.edges == {(0, 1), (1, 2), (2, 3)}
    assert path.edge_list_text() == "1 2\n2 3\n3 4"
    blocks = build_graph(1j * coupling_from_pairs(4, [(0, 1), (2, 3)]))
    assert blocks.components() == [[0, 1], [2, 3]]


def test_threshold_ignores_noise():
    H = coupling_from_pairs(3, [(0, 1), (1, 2)])
    H[0, 2] = H[2, 0] = 1e-13
    assert build_graph(1j * H).edges == {(0, 1), (1, 2)}


def test_is_connected_examples():
    assert is_connected(TransitionGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    assert not is_connected(TransitionGraph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_connected(TransitionGraph.from_edges(5, [(0, j) for j in range(1, 5)]))
    assert not is_connected(TransitionGraph.from_edges(3, []))
    # loops are dropped
    assert TransitionGraph.from_edges(3, [(1, 1), (2, 0)]).edges == {(0, 2)}


def test_p_irreducibility_examples(rng):
    tri = 1j * coupling_from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    assert is_p_irreducible(tri)
    assert _block_upper_witness(tri) is None
    blocks = 1j * coupling_from_pairs(4, [(0, 1), (2, 3)])
    assert not is_p_irreducible(blocks)
    assert _block_upper_witness(blocks) is not None
    B = random_su(5, rng)
    P = np.eye(5)[rng.permutation(5)]
    assert is_p_irreducible(B) and is_p_irreducible(P.T @ B @ P)


def test_p_irreducible_iff_no_witness_exhaustive(rng):
    for n in range(2, 7):
        pairs = list(itertools.combinations(range(n), 2))
        trials = 40 if n < 6 else 10
        for _ in range(trials):
            chosen = [p for p in pairs if rng.random() < 0.35]
            B = 1j * coupling_from_pairs(n, chosen, rng.uniform(0.5, 1.5, size=len(chosen)))
            assert is_p_irreducible(B) == (_block_upper_witness(B) is None)


def test_permutation_and_diagonal_invariance(rng):
    for _ in range(100):
        n = int(rng.integers(2, 8))
        pairs = list(itertools.combinations(range(n), 2))
        chosen = [p for p in pairs if rng.random() < 0.4]
        B = 1j * coupling_from_pairs(n, chosen, rng.uniform(0.5, 1.5, size=len(chosen)))
        P = np.eye(n)[rng.permutation(n)]
        ref = is_p_irreducible(B)
        assert is_p_irreducible(P.T @ B @ P) == ref
        D = np.diag(1j * rng.normal(size=n))
        assert is_p_irreducible(B + D) == ref


def test_fundamental_coverage_examples():
    assert fundamental_coverage({(0, 1), (1, 2), (2, 3), (0, 3)}, 4)
    assert not fundamental_coverage(set(), 3)
    gamma = {(0, 2), (1, 2)}
    assert not fundamental_coverage(gamma, 3)
    assert is_connected(TransitionGraph.from_edges(3, gamma))


def test_coverage_implies_connected(rng):
    for _ in range(300):
        n = int(rng.integers(2, 8))
        pairs = list(itertools.combinations(range(n), 2))
        gamma = {p for p in pairs if rng.random() < 0.5}
        if fundamental_coverage(gamma, n):
            assert is_connected(TransitionGraph.from_edges(n, gamma))
