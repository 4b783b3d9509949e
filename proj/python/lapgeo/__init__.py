"""Laplace maps and transformations of sampled immersions."""
from ._lapgeo import (
    Immersion,
    LapgeoError,
    catalogue,
    generate,
    read_csv,
    spherical_2type_invariants,
)

__all__ = [
    "Immersion",
    "LapgeoError",
    "catalogue",
    "generate",
    "read_csv",
    "spherical_2type_invariants",
]
