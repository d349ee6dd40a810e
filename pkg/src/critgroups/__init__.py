"""Exact critical groups of finite multigraphs and the decomposition of
graphs with harmonic dihedral symmetry into quotient critical groups."""

from .abelian import FinAbGroup, GroupHom, cokernel, direct_sum, is_isomorphic, image_order, kernel_of_hom
from .actions import (
    DihedralAction,
    LabelingImpossibleError,
    NonHarmonicError,
    OrbitLabeling,
    OrbitSizeError,
    classify_dihedral_orbits,
    generate_group,
    is_harmonic,
    orbits,
    stabilizer,
)
from .decomposition import (
    DecompositionContext,
    DecompositionReport,
    divisors_mod_pullback_sums,
    laplacian_mod_symmetric_firings,
    pair_sum_conditions,
    pullback_conditions,
    pullback_subgroup,
    run_all_checks,
    split_pair_sum,
    split_triple_sum,
    triple_sum_conditions,
)
from .divisors import (
    CriticalGroupData,
    Divisor,
    FiringScript,
    apply_firing,
    critical_group,
    is_principal,
    quotient_by_subgroup,
    subgroup_generated,
)
from .intmatrix import (
    IntMatrix,
    hermite_normal_form,
    integer_kernel,
    lattice_contains,
    smith_normal_form,
)
from .multigraph import (
    DisconnectedGraphError,
    Multigraph,
    adjacency_matrix,
    laplacian,
    reduced_laplacian,
    spanning_tree_count,
)
from .quotients import QuotientResult, is_pullback, pullback, quotient_graph, tree_reduce
