"""Fano horospherical varieties through reflexive polytopes and colored fans.

Everything is exact rational arithmetic: reflexivity and smoothness
criteria, anticanonical degrees, Picard numbers, very-ampleness of the
anticanonical divisor, and complete enumeration (ranks one and two) of
the reflexive polytopes of a horospherical homogeneous space.
"""

from .cones import Cone, hilbert_basis
from .enumeration import classify_classes, enumerate_reflexive
from .fano import (
    BoundCheck,
    FanoReport,
    build_report,
    degree,
    finiteness_bound,
    is_locally_factorial,
    is_q_factorial,
    is_q_reflexive,
    is_reflexive,
    is_smooth,
    is_very_ample,
    verify_bounds,
)
from .fans import (
    ColoredCone,
    ColoredFan,
    DivisorData,
    NotCartier,
    anticanonical_divisor,
    cartier_data,
    face_fan_from_polytope,
    is_ample,
    is_complete,
    picard_number,
    section_polytope,
    validate_fan,
)
from .polytopes import Polytope
from .roots import RootSystem, Weight, horospherical_fundamental_weights
from .spaces import HoroSpace, build_space, toric_space

__all__ = [
    "BoundCheck",
    "ColoredCone",
    "ColoredFan",
    "Cone",
    "DivisorData",
    "FanoReport",
    "HoroSpace",
    "NotCartier",
    "Polytope",
    "RootSystem",
    "Weight",
    "anticanonical_divisor",
    "build_report",
    "build_space",
    "cartier_data",
    "classify_classes",
    "degree",
    "enumerate_reflexive",
    "face_fan_from_polytope",
    "finiteness_bound",
    "hilbert_basis",
    "horospherical_fundamental_weights",
    "is_ample",
    "is_complete",
    "is_locally_factorial",
    "is_q_factorial",
    "is_q_reflexive",
    "is_reflexive",
    "is_smooth",
    "is_very_ample",
    "picard_number",
    "section_polytope",
    "toric_space",
    "validate_fan",
    "verify_bounds",
]
