"""Support tau-tilting posets of bound quiver algebras via two-term silting mutation."""
from .algebra import (BasedAlgebra, build_algebra, condition1_check, g_sets, min_factor,
                      opposite, quotient, quotient_by_vertices, idempotent_subalgebra,
                      arrow_condition, qstar_of_algebra)
from .complexes import TwoTermComplex, hom_k_basis, hom_shift1_vanishes, minimize, cone
from .errors import *  # noqa: F401,F403
from .families import FamilySpec, FixtureSpec, family_algebra, fixture_poset, leaf_loop_policy
from .fields import QQ, PrimeField, RationalField, field_from_spec
from .isomorphism import (automorphism_group, find_isomorphism, is_anti_isomorphic,
                          is_isomorphic, poset_isomorphisms)
from .poset import (FinitePoset, atoms_coatoms, boolean_lattice, kappa, realizability_obstruction,
                    stmax, stmin, sttilt_filter, upsilon)
from .quiver import Presentation, Quiver, parse_relation
from .reconstruction import (QuiverSketch, condition2_check, equiv_check, pair_top_element,
                             qstar_from_poset, supports_from_poset, theta_membership)
from .silting import (LabeledSttiltPoset, MutationEngine, SiltingObject, enumerate_sttilt,
                      is_presilting, is_silting, left_mutation, order_by_hom)

__version__ = "0.1.0"
