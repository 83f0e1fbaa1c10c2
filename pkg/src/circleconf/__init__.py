"""Configuration spaces of disjoint circles in the plane: nesting trees, fixed
configurations, braided tree automorphism groups, motions and their monodromy."""

from .baut import (
    BautElement, aut_order, baut_equal, baut_identity, baut_inverse, baut_multiply, generator,
    is_pure_element, pbaut_factors, pi_to_aut, star_embed, structure_description,
)
from .braid import (
    BraidWord, GarsideNormalForm, braids_equal, handle_reduce, in_block_subgroup, is_pure, normal_form,
    permutation_braid, permutation_of,
)
from .canonical import kappa_of_tree
from .errors import CircleConfError
from .forest import (
    LabeledTree, Node, TypePartition, format_tree, labeled_trees_isomorphic, ordered_code, parse_tree,
    tree_of_configuration, trees_isomorphic, type_partition, unordered_canonical_code,
)
from .geometry import Circle, LabeledConfiguration, Nesting, circles_disjoint, nesting_relation
from .motion import CrossingEvent, MotionPath, crossing_events, monodromy, validate_path
from .perm import Permutation, compose
from .planner import make_generator_loop, plan_between, plan_to_canonical, reference_identification

__all__ = [name for name in dir() if not name.startswith("_")]
