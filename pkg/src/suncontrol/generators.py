"""Random control systems for the batch study.

Generators take ``(n_levels, rng)`` and return a ControlSystem.  Couplings
use magnitudes in [0.2, 1.2] so that a present edge is never numerically
marginal; resonant generators build exact gap equalities before the mean
shift.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError
from .system import ControlSystem, Tolerances

GEN_NAMES = ("generic", "resonant", "equispaced", "dipole", "block")


def _coupling_entry(rng, real_only: bool) -> complex:
    mag = rng.uniform(0.2, 1.2)
    if real_only:
        return mag * rng.choice([-1.0, 1.0])
    return mag * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))


def _hermitian(n, pairs, rng, real_only=False, diag_prob=0.5) -> np.ndarray:
    H = np.zeros((n, n), dtype=np.complex128)
    for i, j in pairs:
        H[i, j] = _coupling_entry(rng, real_only)
        H[j, i] = np.conj(H[i, j])
    if rng.random() < diag_prob:
        if rng.random() < 0.5:
            H[np.diag_indices(n)] = rng.uniform(-1.0, 1.0, n)
        else:
            # small integers make exact coincidences among diagonal roots likely
            H[np.diag_indices(n)] = rng.integers(-2, 3, n)
    return H


def _random_pairs(n, rng, p_edge) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p_edge]


def _energies_from_gaps(gaps) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(gaps)])


def generic(n, rng) -> ControlSystem:
    e = np.sort(rng.uniform(-1.0, 1.0, n))
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return ControlSystem.from_hamiltonians(e, 0.5 * (g + g.conj().T), label="generic")


def resonant(n, rng, k: int = 2) -> ControlSystem:
    k = max(2, min(k, n - 1)) if n > 2 else 1
    gaps = rng.uniform(0.2, 1.0, n - 1)
    where = rng.choice(n - 1, size=k, replace=False)
    gaps[where] = rng.uniform(0.2, 1.0)
    pairs = _random_pairs(n, rng, rng.uniform(0.3, 0.9))
    H = _hermitian(n, pairs, rng, real_only=rng.random() < 0.3)
    return ControlSystem.from_hamiltonians(_energies_from_gaps(gaps), H, label=f"resonant:{k}")


def equispaced(n, rng) -> ControlSystem:
    mu = rng.uniform(0.2, 1.0)
    pairs = _random_pairs(n, rng, rng.uniform(0.3, 0.9))
    H = _hermitian(n, pairs, rng, real_only=rng.random() < 0.3)
    return ControlSystem.from_hamiltonians(mu * np.arange(n), H, label="equispaced")


def dipole(n, rng) -> ControlSystem:
    mu = rng.uniform(0.2, 1.0)
    pairs = [(i, i + 1) for i in range(n - 1)]
    H = np.zeros((n, n), dtype=np.complex128)
    style = rng.integers(3)
    equal = rng.random() < 0.3
    base = rng.uniform(0.2, 1.2)
    for i, j in pairs:
        mag = base if equal else rng.uniform(0.2, 1.2)
        if style == 0:
            val = 1j * mag * rng.choice([-1.0, 1.0])
        elif style == 1:
            val = mag * rng.choice([-1.0, 1.0])
        else:
            val = mag * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        H[i, j], H[j, i] = val, np.conj(val)
    if rng.random() < 0.3:
        H[np.diag_indices(n)] = rng.uniform(-1.0, 1.0, n)
    return ControlSystem.from_hamiltonians(mu * np.arange(n), H, label="dipole")


def block(n, rng, p: int = 2) -> ControlSystem:
    p = max(2, min(p, n))
    labels = np.concatenate([np.arange(p), rng.integers(p, size=n - p)])
    rng.shuffle(labels)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if labels[i] == labels[j] and rng.random() < 0.8]
    e = np.sort(rng.uniform(-1.0, 1.0, n))
    H = _hermitian(n, pairs, rng)
    return ControlSystem.from_hamiltonians(e, H, label=f"block:{p}")


def parse_gen_spec(spec: str):
    """'generic', 'resonant:3', 'block:2', ... -> callable(n, rng)."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name not in GEN_NAMES:
        raise InputError(f"unknown generator {spec!r}; choose from {', '.join(GEN_NAMES)}")
    if arg:
        try:
            k = int(arg)
        except ValueError:
            raise InputError(f"generator argument must be an integer, got {arg!r}") from None
    if name == "resonant":
        kk = k if arg else 2
        return lambda n, rng: resonant(n, rng, kk)
    if name == "block":
        pp = k if arg else 2
        return lambda n, rng: block(n, rng, pp)
    if arg:
        raise InputError(f"generator {name!r} takes no argument")
    return {"generic": generic, "equispaced": equispaced, "dipole": dipole}[name]


def system_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent per-system streams, stable under changes of ``count``."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def with_tolerances(sys: ControlSystem, tolerances: Tolerances) -> ControlSystem:
    return ControlSystem.from_hamiltonians(sys.energies, sys.coupling, tolerances, sys.label)
