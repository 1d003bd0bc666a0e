"""Exact computations with cut systems and multisection diagrams of 4-manifolds."""

from .compression import (
    CutSystem,
    homological_standardness,
    slide_system,
    standard_double_diagram,
    validate_cut_system,
)
from .curves import Gluing, Piece, TracedMulticurve, reconstruct_surface, surger
from .fileformat import DiagramParseError, parse_diagram_file, serialize_diagram
from .handles import ChainComplex, build_xn, homology
from .linalg import AbelianGroup, IntMatrix, cokernel, smith_normal_form
from .multisection import (
    MultisectionDiagram,
    build_standard_multisection,
    euler_characteristic_of_X,
    first_homology_of_X,
    validate_diagram,
    xn_diagram,
)
from .surface import CurveClass, Surface, SurfaceCollection, intersection_pairing

__all__ = [
    "AbelianGroup",
    "ChainComplex",
    "CurveClass",
    "CutSystem",
    "DiagramParseError",
    "Gluing",
    "IntMatrix",
    "MultisectionDiagram",
    "Piece",
    "Surface",
    "SurfaceCollection",
    "TracedMulticurve",
    "build_standard_multisection",
    "build_xn",
    "cokernel",
    "euler_characteristic_of_X",
    "first_homology_of_X",
    "homological_standardness",
    "homology",
    "intersection_pairing",
    "parse_diagram_file",
    "reconstruct_surface",
    "serialize_diagram",
    "slide_system",
    "smith_normal_form",
    "standard_double_diagram",
    "surger",
    "validate_cut_system",
    "validate_diagram",
    "xn_diagram",
]
