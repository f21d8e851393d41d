"""Numerical tolerances shared by every module.

All thresholds live in one frozen record so that a caller can tighten or
loosen them in one place (``dataclasses.replace(DEFAULT_TOLERANCES, ...)``).
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # symmetric / Hermitian input checks, relative to max |A_ij|
    symmetry: float = 1e-12
    # Jacobi stops when the off-diagonal Frobenius norm drops below this
    # fraction of the initial Frobenius norm
    jacobi_offdiag: float = 1e-12
    jacobi_max_sweeps: int = 100
    # density matrix validation
    trace: float = 1e-10
    positivity: float = 1e-10
    hermiticity: float = 1e-12
    # orthonormality of measurement kets
    orthonormality: float = 1e-10
    # probability vectors of classical-quantum constructions
    probability: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()
