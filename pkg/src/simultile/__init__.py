"""Exact simultaneous tilings of the line and the integers by two progressions."""
from .numeric import SQRT, ComplexField, FieldNum, cnum, fnum, parse_number, session_d
from .sets import ElementarySet, Interval, arc, decompose_below, fiber_count, measure, project
from .stepfn import (CirclePiecewiseFn, Piece, PiecewiseFn, TilingCertificate, convolution_tiler,
                     project_fn, verify_tiling)
from .dsarray import DSArray, SupportPattern, min_support_exhaustive, nw_minimal, pattern_feasible
from .ztiling import (ZFunction, crt_lift, fold_mod, support_integral, verify_ztiling,
                     z_convolution_tiler, z_min_support_search)
from .construct import (fn_interval_system, fn_tiler, place_injective, thm_a25_truncated,
                        thm_a26_truncated, thm_a31_truncated)
from .graph import (component_analysis, degree_profile, induce_cell_graph, iterate_removal,
                    leaves_removal_step)

__all__ = [
    "SQRT", "ComplexField", "FieldNum", "cnum", "fnum", "parse_number", "session_d",
    "ElementarySet", "Interval", "arc", "decompose_below", "fiber_count", "measure", "project",
    "CirclePiecewiseFn", "Piece", "PiecewiseFn", "TilingCertificate", "convolution_tiler",
    "project_fn", "verify_tiling", "DSArray", "SupportPattern", "min_support_exhaustive",
    "nw_minimal", "pattern_feasible", "ZFunction", "crt_lift", "fold_mod", "support_integral",
    "verify_ztiling", "z_convolution_tiler", "z_min_support_search", "fn_interval_system",
    "fn_tiler", "place_injective", "thm_a25_truncated", "thm_a26_truncated", "thm_a31_truncated",
    "component_analysis", "degree_profile", "induce_cell_graph", "iterate_removal",
    "leaves_removal_step",
]

__version__ = "0.1.0"
