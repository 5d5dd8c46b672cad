"""Tie-breaking refinements of social choice correspondences under symmetry.

Modules:

* :mod:`tiebreak.perms` - permutations, cycle types, enumerated groups.
* :mod:`tiebreak.relations` - relations, orders, automorphisms, extensions.
* :mod:`tiebreak.profiles` - profiles, the group action, orbits, regularity.
* :mod:`tiebreak.rules` - Borda, Copeland, Minimax, Kemeny and the checkers.
* :mod:`tiebreak.refine` - refinement builders, counters and existence gates.
* :mod:`tiebreak.cli` - the ``tiebreak`` command.
"""

from .errors import *  # noqa: F401,F403
from .perms import (
    Partition,
    Perm,
    PermGroup,
    compose,
    cycle_type,
    generate,
    is_conjugate,
    order_reversing,
    symmetric_group,
    trivial_group,
    type_number,
)
from .profiles import (
    GroupElement,
    OrbitTable,
    Profile,
    ProfileSpace,
    SymmetryGroup,
    act,
    is_regular,
    orbit_decomposition,
    psi_for_profile,
    stabilizer,
)
from .refine import (
    ChoicePolicy,
    GateVerdict,
    RefinementCount,
    ResoluteFunction,
    build_consistent_refinement,
    build_symmetric_refinement,
    count_consistent_refinements,
    count_symmetric_refinements,
    existence_gate,
    preset_president,
    qc4_construct,
    s_correspondence,
    social_method_check,
    split_committee_options,
    t_set_contains,
    uk_correspondence,
)
from .relations import (
    LinearOrder,
    Relation,
    RelationFlags,
    aut_group,
    classify,
    indifference_partition,
    k_max_sets,
    linear_extensions,
    order_aut_stats,
    transform,
)
from .rules import (
    Correspondence,
    check_consistent,
    check_symmetric,
    evaluate_spc,
    induce_kscc,
    named_group,
    spc_table,
)

__version__ = "0.1.0"
