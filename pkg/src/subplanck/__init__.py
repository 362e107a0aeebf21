"""Superposed compass states: Wigner functions, displacement overlaps and sub-Planck sensitivity."""

from .overlap import gamma_approx, gamma_exact
from .sensitivity import asymptotic_isotropy_table, sensitivity_sweep
from .states import (CoherentComponent, Displacement, DomainError, StateSpec, make_cat, make_coherent,
                     make_n_compass)
from .wigner import PhasePoint, wigner_exact, wigner_grid

__version__ = "0.1.0"

__all__ = [
    "CoherentComponent", "Displacement", "DomainError", "PhasePoint", "StateSpec",
    "asymptotic_isotropy_table", "gamma_approx", "gamma_exact", "make_cat", "make_coherent",
    "make_n_compass", "sensitivity_sweep", "wigner_exact", "wigner_grid",
]
