"""Twisted group algebras, generalized twisted doubles and dual pairs.

Exact computational algebra for finite groups: 2-cocycles valued in roots of
unity, the twisted group algebra C^alpha[G] and its center, the crossed
product A_alpha(G, S) built from a right G-set, induction between stabilizer
subalgebras and orbit blocks, and dual-pair decompositions of projective
group actions against the commutant of the double.
"""

from .cocycles import (
    Coboundary,
    SetCoboundary,
    SetCocycle,
    TwoCocycle,
    alpha_regular_classes,
    apply_coboundary,
    bilinear_cocycle,
    induced_set_cocycle,
    is_alpha_regular,
    is_normal_cocycle,
    klein_nontrivial_cocycle,
    normalize_cocycle,
    random_coboundary,
    random_set_coboundary,
    restrict,
    set_cocycle_from_scalar,
    solve_coboundary,
    trivial_cocycle,
    trivial_set_cocycle,
    validate_cocycle,
)
from .cyclotomic import CycScalar, RootOfUnity, cyclotomic_polynomial, euler_phi
from .double import (
    BlockDecomposition,
    DoubleElement,
    GeneralizedDouble,
    center_by_kernel,
    cohomologous_iso,
    decompose_blocks,
    double_center_basis,
    double_identity,
    double_multiply,
    stabilizer_subalgebra_iso,
)
from .dual_pair import (
    DualPairReport,
    NotProjectiveError,
    ProjectiveAction,
    StableFamily,
    build_set_cocycle,
    commutant,
    double_action,
    dual_pair_decompose,
    extract_cocycle,
    family_from_action,
    induced_family,
    pauli_action,
    psi_isomorphism,
    regular_action,
    twist_family,
)
from .groups import (
    ConjugacyClass,
    CosetTransversal,
    FiniteGroup,
    RightGSet,
    abelian_group,
    centralizer,
    conjugacy_classes,
    cyclic_group,
    dihedral_group,
    direct_product,
    gset_from_rows,
    klein_four_group,
    left_transversal,
    orbit_stabilizer,
    quaternion_group,
    regular_gset,
    subgroup_group,
    symmetric_group,
    trivial_group,
    trivial_gset,
)
from .modules import (
    IllConditionedError,
    MatrixModule,
    SimpleModuleReport,
    check_module,
    classify_double_simples,
    classify_simples,
    find_isomorphism,
    induce,
    induce_restrict_witness,
    is_simple,
    regular_module,
    restrict_by_idempotent,
    restrict_induce_witness,
)
from .twisted_algebra import (
    AlgebraElement,
    TwistedGroupAlgebra,
    basis_inverse,
    center_basis,
    is_semisimple,
    regular_representation,
    tga_multiply,
)

__version__ = "0.1.0"
