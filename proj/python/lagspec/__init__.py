"""Approximation constants, Lagrange-type spectra and cusp geometry."""

from ._core import (
    DomainError,
    approx_constant,
    brute_force_constant,
    c_I_estimate,
    c_prime_estimate,
    duality,
    duality_inverse,
    excursion_limsup,
    geodesic_height,
    horoball_penetration,
    markov_value,
    run_cli,
    spectrum,
)

__all__ = [
    "DomainError",
    "approx_constant",
    "brute_force_constant",
    "c_I_estimate",
    "c_prime_estimate",
    "duality",
    "duality_inverse",
    "excursion_limsup",
    "geodesic_height",
    "horoball_penetration",
    "markov_value",
    "run_cli",
    "spectrum",
]
