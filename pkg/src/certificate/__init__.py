"""Canonical forms, energy discriminants and stability certificates."""

from src.certificate.canonical import canonicalize_general, to_canonical
from src.certificate.certify import (
    certify,
    certify_scheme,
    energy_discriminant,
    forward_euler_bounds,
    phi_matrix,
    printed_phi_rk4_5stage,
    step_bounds,
)
from src.certificate.eigen import jacobi_eigenvalues, smallest_eigenvalue

__all__ = [
    "canonicalize_general",
    "certify",
    "certify_scheme",
    "energy_discriminant",
    "forward_euler_bounds",
    "jacobi_eigenvalues",
    "phi_matrix",
    "printed_phi_rk4_5stage",
    "smallest_eigenvalue",
    "step_bounds",
    "to_canonical",
]
