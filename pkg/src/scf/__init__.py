"""Exact decision procedures and witnesses for strong fusion control in compact classical groups."""

__version__ = "0.1.0"

from scf.circle import (
    CongruenceWitness,
    WeightSequence,
    decide_scf_circle,
    negation_symmetric,
    normalize_weights,
    verify_witness_circle,
)
from scf.so3 import (
    So3Witness,
    SpinSequence,
    decide_scf_so3,
    expand_profile,
    image_element,
    search_open_question,
    verify_witness_so3,
)
from scf.sympair import (
    PairFamily,
    SignedPermGroupSpec,
    build_witness_so_sum,
    classify_pair,
    equal_rank_witness,
    verify_pair_witness,
)
from scf.torus import (
    CanonicalForm,
    EmbeddingRule,
    Family,
    GroupTag,
    TorusElement,
    canonical_form,
    conjugate_in,
    fusion_elementwise,
    weyl_orbit,
)
from scf.verdict import Fails, Holds

__all__ = [name for name in dir() if not name.startswith("_")]
