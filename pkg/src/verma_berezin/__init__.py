"""Exact band-operator calculus on the lowest-weight Verma module V_h."""

from .berezin import (CheckResult, check_berezin_relations, gen_D, gen_F,
                      gen_F_reversed, gen_sl2, run_berezin_suite)
from .conformal import CapExceeded, gen_L, witt_bracket_defect, witt_defect
from .defects import DefectReport, hs_report, op_norm_bound
from .operators import (BandOperator, GuardViolation, OperatorError, PoleInDomain,
                        Weight, WeightMismatch, adjoint, apply, commutator, compose,
                        identity, make_band, projector, truncate, zero)
from .quantize import (Symbol, VField, derivation_defect, hbar_scaling, op_quantize,
                       product_defect)
from .ratfunc import RatFunc
from .scalar import GaussianRational

__all__ = [
    "BandOperator", "CapExceeded", "CheckResult", "DefectReport", "GaussianRational",
    "GuardViolation", "OperatorError", "PoleInDomain", "RatFunc", "Symbol", "VField",
    "Weight", "WeightMismatch", "adjoint", "apply", "check_berezin_relations",
    "commutator", "compose", "derivation_defect", "gen_D", "gen_F", "gen_F_reversed",
    "gen_L", "gen_sl2", "hbar_scaling", "hs_report", "identity", "make_band",
    "op_norm_bound", "op_quantize", "product_defect", "projector", "run_berezin_suite",
    "truncate", "witt_bracket_defect", "witt_defect", "zero",
]
