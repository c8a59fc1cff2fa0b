"""Workbench for tropical (min-plus) weighted automata.

Core objects: :class:`~minplus.wfa.Wfa` and its configurations and runs;
the baseline-augmented machine of :mod:`minplus.augmented`; stable-cycle
stabilisation into cactus letters (:mod:`minplus.cactus`); charge and
potential analyses (:mod:`minplus.analysis`); rigid-interval structures
(:mod:`minplus.sri`) and the zoom loop (:mod:`minplus.zoom`); the bounds
calculator (:mod:`minplus.bounds`); and gap-bounded determinisation with
an exact equivalence check (:mod:`minplus.determinise`).
"""

from .weights import INF, MAX_WEIGHT, MIN_WEIGHT, Weight, WeightOverflow
from .wfa import (
    Configuration,
    GapWitness,
    RunStep,
    RunTrace,
    UntrimmedError,
    Wfa,
    eval_word,
    find_gap_witness,
    is_seamless,
    maxeff,
    minimal_run,
    mwt,
    trim,
    wfa_from_json,
    wfa_to_json,
    xconf,
)
from .letters import Letter, Spine
from .augmented import AugState, AugWfa, augment, encode_run
from .cactus import (
    Cycle,
    is_stable_cycle,
    min_slope_cycle,
    shift_to_stable,
    stabilisation_constant,
    stabilise,
    unfold,
    validate_bounded_letter,
)
from .analysis import charge, check_witness, construct_high_potential, potential
from .sri import check_sri, check_sri_verbose, classify, bud, degenerate_shorten
from .zoom import ZoomThresholds, zoom_step
from .bounds import BoundsValue, evaluate, length_function, main_bound
from .determinise import (
    DetWfa,
    check_equiv,
    decide_at_gap,
    determinize,
    export_wfa,
)

__all__ = [
    "INF", "MAX_WEIGHT", "MIN_WEIGHT", "Weight", "WeightOverflow",
    "Configuration", "GapWitness", "RunStep", "RunTrace", "UntrimmedError",
    "Wfa", "eval_word", "find_gap_witness", "is_seamless", "maxeff",
    "minimal_run", "mwt", "trim", "wfa_from_json", "wfa_to_json", "xconf",
    "Letter", "Spine",
    "AugState", "AugWfa", "augment", "encode_run",
    "Cycle", "is_stable_cycle", "min_slope_cycle", "shift_to_stable",
    "stabilisation_constant", "stabilise", "unfold", "validate_bounded_letter",
    "charge", "check_witness", "construct_high_potential", "potential",
    "check_sri", "check_sri_verbose", "classify", "bud", "degenerate_shorten",
    "ZoomThresholds", "zoom_step",
    "BoundsValue", "evaluate", "length_function", "main_bound",
    "DetWfa", "check_equiv", "decide_at_gap", "determinize", "export_wfa",
]

__version__ = "0.1.0"
