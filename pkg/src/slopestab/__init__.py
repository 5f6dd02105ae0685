"""Exact slope-stability data for representations of quivers with relations.

The package computes, entirely in exact rational arithmetic: slope
comparisons on Grothendieck classes, integer characters matching a slope's
verdicts, stability verdicts for concrete representations over prime fields,
Harder-Narasimhan and stable-factor filtrations, S-equivalence, and
desk-scale moduli-set inventories.
"""

from .errors import DomainError, FormatError, GuardError, SlopestabError
from .fields import GF, QQ, FieldSpec, PrimeField, RationalField, field_from_tag
from .ktheory import (
    Character,
    K0Class,
    RCharacter,
    SimpleLabelSet,
    SlopeData,
    SlopeValue,
    Verdict,
    character_from_slope,
    character_verdict,
    class_box,
    compare_slopes,
    integerize_character,
    k0_verdict,
    pull_back_slope,
    seesaw_verify,
    slope_value,
)
from .ordered import (
    OrderedSpace,
    OrderedVector,
    Ordering,
    axiom_check_scaling,
    lex_compare,
    lex_sign,
    separation_margin,
)
from .quiver import (
    Algebra,
    Arrow,
    Path,
    Quiver,
    Relation,
    RelationSet,
    algebra_basis,
    relabel_algebra,
    trivial_path,
)
from .reps import (
    Morphism,
    Representation,
    dimension_vector,
    direct_sum,
    direct_sum_all,
    hom_space,
    indecomposable_projective,
    is_isomorphic,
    loewy_structure,
    reduce_mod,
    relabel_representation,
    relation_failures,
    representation,
    simple_representation,
    validate_representation,
    zero_representation,
)
from .stability import (
    HNFiltration,
    StableFactorData,
    SubrepFamily,
    classify_stability,
    enumerate_subrep_classes,
    hn_filtration,
    max_destabilizer,
    s_equivalent,
    stable_factor_filtration,
)
from .moduli import (
    ModuliSet,
    SClass,
    enumerate_reps_up_to_iso,
    krull_schmidt_moduli,
    moduli_set,
)
from .catalog import (
    CatalogEntry,
    ExactSequence,
    VermaSystem,
    WeightData,
    find_stability_certificate,
    jordan_holder_slope,
    poset_algebra,
    sl2_block,
    sl2_slope,
    sl3_data,
    slope_from_weights,
)

__version__ = "0.1.0"
