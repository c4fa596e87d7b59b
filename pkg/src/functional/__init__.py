"""Norms, energy and derivatives on the grid-function space."""
from src.functional.energy import (
    EnergyBreakdown,
    Phi,
    Psi,
    energy,
    energy_batch,
    energy_value,
    modular_phi,
    norm_minus,
    norm_plus,
    sup_norm,
)
from src.functional.gradient import (
    banded_to_dense,
    directional_derivative,
    flux,
    grad_I,
    jacobian_banded,
    link_stiffness,
    pairing,
    residual,
)
from src.functional.stiffness import (
    Condensation,
    characteristic_displacement,
    condense,
    condensed_jacobian,
    force_scale,
    scaled_residual,
    stiffness_metric,
)

__all__ = [
    "EnergyBreakdown",
    "Phi",
    "Psi",
    "energy",
    "energy_batch",
    "energy_value",
    "modular_phi",
    "norm_minus",
    "norm_plus",
    "sup_norm",
    "banded_to_dense",
    "directional_derivative",
    "flux",
    "grad_I",
    "jacobian_banded",
    "link_stiffness",
    "pairing",
    "residual",
    "Condensation",
    "characteristic_displacement",
    "condense",
    "condensed_jacobian",
    "force_scale",
    "scaled_residual",
    "stiffness_metric",
]
