"""Cheeger constants, Robin eigenvalues and torsion on convex polygons, and hexagonal honeycomb asymptotics."""

from .cheeger import cheeger_closed_form, cheeger_oracle, gamma, hex_constants, phi, zeta
from .geometry import ConvexPolygon, Direction, RoundedBody, area, perimeter, rectangle, regular_ngon, unit_square
from .robin1d import eig_interval, torsion_interval

__all__ = [
    "ConvexPolygon",
    "Direction",
    "RoundedBody",
    "area",
    "cheeger_closed_form",
    "cheeger_oracle",
    "eig_interval",
    "gamma",
    "hex_constants",
    "perimeter",
    "phi",
    "rectangle",
    "regular_ngon",
    "torsion_interval",
    "unit_square",
    "zeta",
]
