"""Restriction-sensitive choice analysis.

Reveal reaction relations and similarity types from finite choice data,
check the behavioral axioms, synthesize and certify two-order choice
structures, compare welfare criteria, rank menus by satisfied freedoms,
and simulate the media-attention and cultural-transmission applications.
"""

from .axioms import (
    AxiomVerdict,
    AxiomViolationError,
    TSMSpec,
    check_all,
    check_exp,
    check_iia,
    check_ir,
    check_nrs,
    check_spr,
    tsm_choice,
)
from .core import (
    ChoiceFunction,
    ChoiceModelError,
    GroundSet,
    LinearOrder,
    TypePartition,
    choice_from_order,
    enumerate_choice_functions,
    enumerate_menus,
    parse_choice_function,
    serialize_choice_function,
)
from .normative import (
    FreedomModel,
    MenuPreference,
    bernheim_rangel_pstar,
    check_menu_axioms,
    freedom_count,
    freedom_model,
    freedom_ranking,
    is_richer,
    masatlioglu_pr,
    welfare_improving,
    welfare_report,
)
from .revealed import (
    BinaryRelation,
    RevealedReport,
    reveal,
    reveal_binary,
    reveal_reaction,
    similarity_classes,
)
from .structure import (
    RSStructure,
    SinglePeakedCertificate,
    SynthesisTrace,
    certify_single_peaked,
    consideration_set,
    evaluate,
    minimal_structure,
    synthesize_rs,
)

__version__ = "0.1.0"
