"""Exact analysis of Nash-blowup minor ideals of affine toric surfaces.

Pipeline: validate a planar semigroup generator set, compute the defining
binomial ideal exactly, enumerate the candidate minor ideals of its
Jacobian, decompose their zero loci into torus-orbit closures, and compare
against the singular locus.
"""

from .algebra import (
    Binomial,
    Monomial,
    Polynomial,
    TermOrder,
    binomial_str,
    compare,
    degrevlex_order,
    derivative,
    determinant,
    evaluate,
    lex_order,
    monomial_str,
    oriented_binomial,
    polynomial_str,
)
from .errors import (
    ConeNotStrictlyConvex,
    ConeNotTwoDimensional,
    EmptyEdge,
    EmptyIdeal,
    InvalidGeneratorSet,
    InvariantViolation,
    LatticeNotFull,
    LengthMismatch,
    NonMonomialResidue,
    NotARelation,
    NotMinimal,
    NotSameEdge,
    NotSquare,
    RankDeficient,
    SigmaDimensionError,
    TheoremViolation,
    TooFewGenerators,
    ToricNashError,
    TorusSingular,
    UnboundedSearch,
    WitnessNotFound,
)
from .ideal import (
    GroebnerBasis,
    LatticeBasis,
    ToricIdeal,
    buchberger,
    edge_relation,
    ideal_member,
    lattice_kernel,
    minimal_generators,
    normal_form,
    same_ideal,
    saturate_all,
    saturate_variable,
    toric_ideal,
)
from .nash import (
    DifferenceMatrix,
    NashReport,
    OrbitSet,
    SingularLocus,
    TheoremVerdict,
    classify_ci,
    difference_matrix,
    dim1_selector,
    minor_monomial_formula,
    minor_symbolic,
    nash_ideal,
    nash_ideal_classes,
    rank,
    search_all_subsets,
    singular_locus,
    subset_minors,
    verify_dichotomy,
    zero_locus,
)
from .semigroup import (
    ConeClassification,
    GeneratorSet,
    LatticePoint,
    ValidatedSemigroup,
    check_generates_Z2,
    classify_generators,
    compute_cone_rays,
    generator_set,
    semigroup_membership,
    validate,
)

__version__ = "0.1.0"
