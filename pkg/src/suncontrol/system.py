"""The bilinear control system dX/dt = (A + u B) X on SU(N)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import SU_TOL, check_levels
from .errors import DimensionError, ValidationError


@dataclass(frozen=True)
class Tolerances:
    root_eq: float = 1e-9
    edge: float = 1e-10
    rank: float = 1e-8
    su: float = SU_TOL

    def as_dict(self) -> dict:
        return {"root_eq": self.root_eq, "edge": self.edge, "rank": self.rank, "su": self.su}


@dataclass(frozen=True)
class ControlSystem:
    """Drift A = -i diag(energies) and control B = -i coupling.

    Built through :meth:`from_hamiltonians`, which sorts the levels by energy
    (relabelling the coupling accordingly), removes the mean energy and the
    trace of the coupling.  Neither shift changes the generated algebra.
    """

    energies: np.ndarray
    coupling: np.ndarray
    tolerances: Tolerances = field(default_factory=Tolerances)
    level_order: tuple[int, ...] = ()
    label: str | None = None

    @classmethod
    def from_hamiltonians(cls, energies, coupling, tolerances: Tolerances | None = None,
                          label: str | None = None) -> "ControlSystem":
        tolerances = tolerances or Tolerances()
        energies = np.asarray(energies, dtype=np.float64).ravel()
        coupling = np.asarray(coupling, dtype=np.complex128)
        n = energies.size
        check_levels(n)
        if coupling.shape != (n, n):
            raise DimensionError(f"coupling has shape {coupling.shape}, expected ({n}, {n}) from {n} energies")
        if not np.all(np.isfinite(energies)) or not np.all(np.isfinite(coupling)):
            raise ValidationError("energies and coupling must be finite")
        scale = max(float(np.max(np.abs(coupling))), 1.0)
        herm = np.abs(coupling - coupling.conj().T)
        if np.max(herm) > tolerances.su * scale:
            i, j = np.unravel_index(np.argmax(herm), herm.shape)
            raise ValidationError(
                f"coupling is not Hermitian: entry ({i + 1},{j + 1}) is not the conjugate of ({j + 1},{i + 1})"
            )
        coupling = 0.5 * (coupling + coupling.conj().T)
        order = np.argsort(energies, kind="stable")
        energies = energies[order]
        coupling = coupling[np.ix_(order, order)]
        energies = energies - energies.mean()
        coupling = coupling - (np.trace(coupling).real / n) * np.eye(n)
        energies.setflags(write=False)
        coupling.setflags(write=False)
        return cls(energies, coupling, tolerances, tuple(int(k) for k in order), label)

    @property
    def n_levels(self) -> int:
        return self.energies.size

    @property
    def A(self) -> np.ndarray:
        return np.diag(-1j * self.energies)

    @property
    def B(self) -> np.ndarray:
        return -1j * self.coupling

    @property
    def spread(self) -> float:
        return float(self.energies[-1] - self.energies[0])

    @property
    def root_scale(self) -> float:
        """Scale for deciding that two transition frequencies coincide."""
        return self.tolerances.root_eq * max(1.0, self.spread)

    @property
    def is_degenerate(self) -> bool:
        return bool(np.any(np.diff(self.energies) <= self.root_scale))

    @property
    def edge_threshold(self) -> float:
        return self.tolerances.edge * max(1.0, float(np.max(np.abs(self.B))))
