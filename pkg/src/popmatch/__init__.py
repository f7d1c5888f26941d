"""Round-synchronous algorithms for popular matchings and stable marriage.

The package solves three families of problems:

* popular matchings under one-sided preference lists: existence, verification,
  maximum cardinality, and optimality over switching-graph moves;
* the equivalence between maximum-cardinality bipartite matchings and popular
  matchings once every neighbor shares one rank;
* stable marriage: proposal rounds, reduced lists, exposed rotations, and the
  lattice walked one elimination at a time.

Hot kernels run under numba when available; set ``POPMATCH_NUMBA=0`` to force
the pure-numpy backend, or build an :class:`Engine` with ``mode="seq"`` for
the scalar reference path.
"""

from .acm import HallCertificate, applicant_complete, peel_rounds
from .model import (BipartiteGraph, InvariantError, Matching, ParseError,
                    PrefInstance, gen_random, parse_bipartite, parse_instance,
                    parse_matching, serialize_bipartite, serialize_instance,
                    serialize_matching, validate_matching)
from .optimal import (CRITERIA, fair_order_key, fair_weights, matching_weight,
                      max_cardinality, optimal_popular, profile_of,
                      rank_maximal_weights, rank_order_key)
from .oracles import (CapExceeded, brute_force_popular, enumerate_matchings,
                      enumerate_popular, enumerate_stable)
from .popular import (PopularityReport, complete_to_last_resorts, is_popular,
                      solve_popular)
from .reduction import ReducedGraph, reduce_instance
from .rounds import Engine, RoundStats
from .stable import (Rotation, StableInstance, StableMatching, all_stable,
                     dominates, eliminate, exposed_rotations,
                     find_blocking_pair, gale_shapley,
                     immediate_dominance_check, is_stable, next_stable,
                     parse_stable_instance, parse_stable_matching,
                     reduced_lists, serialize_stable_instance,
                     serialize_stable_matching)
from .switching import (SwitchingGraph, SwitchMove, apply_move, apply_moves,
                        build_switching_graph, component_moves, find_cycles,
                        margin, moves_by_component, popular_matchings_from)
from .ties import (EquivalenceReport, build_ties_instance, check_equivalence,
                   maximum_matching)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "CRITERIA", "CapExceeded", "Engine",
    "EquivalenceReport", "HallCertificate", "InvariantError", "Matching",
    "ParseError", "PopularityReport", "PrefInstance", "ReducedGraph",
    "Rotation", "RoundStats", "StableInstance", "StableMatching",
    "SwitchMove", "SwitchingGraph", "all_stable", "applicant_complete",
    "apply_move", "apply_moves", "brute_force_popular",
    "build_switching_graph", "build_ties_instance", "check_equivalence",
    "complete_to_last_resorts", "component_moves", "dominates", "eliminate",
    "enumerate_matchings", "enumerate_popular", "enumerate_stable",
    "exposed_rotations", "fair_order_key", "fair_weights",
    "find_blocking_pair", "find_cycles", "gale_shapley", "gen_random",
    "immediate_dominance_check", "is_popular", "is_stable", "margin",
    "matching_weight", "max_cardinality", "maximum_matching",
    "moves_by_component", "next_stable", "optimal_popular", "parse_bipartite",
    "parse_instance", "parse_matching", "parse_stable_instance",
    "parse_stable_matching", "peel_rounds", "popular_matchings_from",
    "profile_of", "rank_maximal_weights", "rank_order_key", "reduce_instance",
    "reduced_lists", "serialize_bipartite", "serialize_instance",
    "serialize_matching", "serialize_stable_instance",
    "serialize_stable_matching", "solve_popular", "validate_matching",
]
