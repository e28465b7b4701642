"""Threshold colorings of near-far labeled graphs."""

from .errors import (
    ConstructionBugError, FamilyError, GraphFileError, ParameterError,
    PreconditionError, ProofGapError, StructuralError, SweepLimitError, TTCError,
)
from .graphs import Graph, SquareRef, build_family, cartesian_product, squares_of
from .labeling import NearFarLabeling
from .petersen import detect_structures, petersen_color
from .prism import prism_color
from .solver import (
    ImpossibilityCertificate, check_certificate, find_coloring, k4_certificate,
    minimal_pair_frontier, moebius_certificate, total_check,
)
from .threshold import (
    ParamPair, ThresholdColoring, common_upper_bound, embed_coloring, pair_leq,
    scale_coloring, translate_coloring, verify,
)
from .zigzag import ZigzagInstance, check_conditions, fan_color, ladder_color, zigzag_color

__all__ = [
    "ConstructionBugError", "FamilyError", "GraphFileError", "ParameterError",
    "PreconditionError", "ProofGapError", "StructuralError", "SweepLimitError", "TTCError",
    "Graph", "SquareRef", "build_family", "cartesian_product", "squares_of",
    "NearFarLabeling", "detect_structures", "petersen_color", "prism_color",
    "ImpossibilityCertificate", "check_certificate", "find_coloring", "k4_certificate",
    "minimal_pair_frontier", "moebius_certificate", "total_check",
    "ParamPair", "ThresholdColoring", "common_upper_bound", "embed_coloring", "pair_leq",
    "scale_coloring", "translate_coloring", "verify",
    "ZigzagInstance", "check_conditions", "fan_color", "ladder_color", "zigzag_color",
]
