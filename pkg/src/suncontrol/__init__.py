"""Controllability of N-level quantum systems from the root structure of su(N)."""
__version__ = "0.1.0"

from .algebra import (
    adjoint_matrix,
    commutator,
    decompose,
    killing_form,
    reconstruct,
    weyl_basis,
)
from .brackets import build_M, derive_brackets, det_M_nonzero
from .criteria import evaluate
from .graph import build_graph, fundamental_coverage, is_connected, is_p_irreducible
from .oracle import closure_of_subspaces, lie_closure
from .roots import build_root_table, compute_roots, is_B_regular, is_regular, split_regular
from .system import ControlSystem, Tolerances

__all__ = [
    "ControlSystem",
    "Tolerances",
    "adjoint_matrix",
    "build_M",
    "build_graph",
    "build_root_table",
    "closure_of_subspaces",
    "commutator",
    "compute_roots",
    "decompose",
    "derive_brackets",
    "det_M_nonzero",
    "evaluate",
    "fundamental_coverage",
    "is_B_regular",
    "is_connected",
    "is_p_irreducible",
    "is_regular",
    "killing_form",
    "lie_closure",
    "reconstruct",
    "split_regular",
    "weyl_basis",
]
