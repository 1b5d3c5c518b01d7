"""Deterministic pure-state entanglement conversion under PPT operations."""
from .spectra import (SchmidtVector, f_value, majorizes, parse_vector, ppt_monotone_report,
                      renyi_entropy, tensor)
from .ppt_sdp import bounds, build_reduced, solve, solve_full_oracle
from .closed_form import c_star, delta, rank1_dual_point, swap_improves, t1_value
from .feasibility import MaxEnt, TransformQuery, Verdict, decide, explain
from .catalysis import (CatalysisQuery, locc_catalysis_screen, minimal_catalyst_rank,
                        ppt_catalysis_conjecture_screen, ppt_maxent_catalysis_possible)
from .lab import conjecture_sweep, emit_region_csv, emit_region_svg, region_sample

__all__ = [
    "SchmidtVector", "parse_vector", "renyi_entropy", "f_value", "majorizes",
    "ppt_monotone_report", "tensor", "build_reduced", "solve", "bounds", "solve_full_oracle",
    "c_star", "t1_value", "delta", "rank1_dual_point", "swap_improves", "MaxEnt",
    "TransformQuery", "Verdict", "decide", "explain", "CatalysisQuery",
    "ppt_maxent_catalysis_possible", "minimal_catalyst_rank", "locc_catalysis_screen",
    "ppt_catalysis_conjecture_screen", "conjecture_sweep", "region_sample",
    "emit_region_csv", "emit_region_svg",
]
