"""Optimal popular matchings selected move-by-move.

Popular matchings are reachable from any one of them by choosing, per
switching-graph component, at most one move; the components are disjoint, so
a criterion that adds over applicants is optimized by picking the best move
in every component independently.  Supported criteria: maximum cardinality,
maximum or minimum total weight, rank-maximal, and fair.

A matching's profile is the tuple (x_1, ..., x_{n2}, x_{n2+1}) counting
applicants matched at each rank, with last resorts in the final slot no
matter how long the list is.  Rank-maximal compares profiles front-to-back,
more first; fair compares back-to-front, fewer first.  Both are plain
lexicographic orders, so move deltas compare the same way profiles do.
"""

from __future__ import annotations

from collections.abc import Callable

from .model import Matching, PrefInstance
from .reduction import reduce_instance
from .rounds import Engine
from .switching import (SwitchMove, apply_moves, build_switching_graph,
                        margin, moves_by_component)

CRITERIA = ("max-weight", "min-weight", "rank-maximal", "fair")


def profile_of(m: Matching, inst: PrefInstance) -> tuple[int, ...]:
    """Per-rank assignment counts; unmatched applicants count as last resort."""
    counts = [0] * (inst.num_posts + 1)
    for a in range(1, inst.num_applicants + 1):
        p = m.post_of(a)
        slot = inst.profile_slot(a, p) if p is not None else inst.num_posts + 1
        counts[slot - 1] += 1
    return tuple(counts)


def rank_order_key(profile) -> tuple[int, ...]:
    """Key under which max() picks the rank-maximal-best profile."""
    return tuple(profile)


def fair_order_key(profile) -> tuple[int, ...]:
    """Key under which max() picks the fair-best profile."""
    return tuple(-x for x in reversed(profile))


def rank_maximal_weights(inst: PrefInstance) -> dict[tuple[int, int], int]:
    """Weights whose maximization yields a rank-maximal matching: a rank-k
    pair weighs n1^(n2-k+1), last-resort pairs weigh 0.  Exact big integers;
    the solver compares profile deltas instead, these exist for cross-checks.
    """
    n1, n2 = inst.num_applicants, inst.num_posts
    out: dict[tuple[int, int], int] = {}
    for a in range(1, n1 + 1):
        for p in inst.listed_posts(a):
            out[a, p] = 0 if inst.is_last_resort(p) else \
                n1 ** (n2 - inst.rank_of(a, p) + 1)
    return out


def fair_weights(inst: PrefInstance) -> dict[tuple[int, int], int]:
    """Weights whose minimization yields a fair matching: n1^k for a rank-k
    pair, with last resorts at k = n2 + 1."""
    n1 = inst.num_applicants
    out: dict[tuple[int, int], int] = {}
    for a in range(1, n1 + 1):
        for p in inst.listed_posts(a):
            out[a, p] = n1 ** inst.profile_slot(a, p)
    return out


def _weight_fn(weights) -> Callable[[int, int], int]:
    if callable(weights):
        return weights

    def look(a: int, p: int) -> int:
        try:
            return weights[a, p]
        except KeyError:
            raise ValueError(f"no weight given for pair (a{a}, p{p})") from None

    return look


def matching_weight(m: Matching, inst: PrefInstance, weights) -> int:
    wfn = _weight_fn(weights)
    return sum(wfn(a, p) for a, p in m.pairs)


def _move_delta(move: SwitchMove, inst: PrefInstance) -> tuple[int, ...]:
    """Profile change caused by applying the move."""
    delta = [0] * (inst.num_posts + 1)
    for a, frm, to in move.edges:
        delta[inst.profile_slot(a, to) - 1] += 1
        delta[inst.profile_slot(a, frm) - 1] -= 1
    return tuple(delta)


def _select_moves(sg_moves: dict[int, list[SwitchMove]], gain, zero) -> list[SwitchMove]:
    """Per component, the strictly-improving move with the largest gain;
    ties keep no move, then the smallest source post."""
    chosen = []
    for comp in sorted(sg_moves):
        best = None
        best_gain = zero
        for move in sorted(sg_moves[comp], key=lambda mv: mv.source):
            g = gain(move)
            if g > best_gain:
                best, best_gain = move, g
        if best is not None:
            chosen.append(best)
    return chosen


def max_cardinality(inst: PrefInstance, m: Matching,
                    engine: Engine | None = None) -> Matching:
    """A maximum-cardinality popular matching, from the popular matching m:
    apply each cycle with positive margin and, per tree component, the
    largest-positive-margin switching path."""
    engine = engine or Engine()
    sg = build_switching_graph(reduce_instance(inst, engine), m, engine)
    chosen = _select_moves(moves_by_component(sg, engine),
                           lambda mv: margin(mv, inst), 0)
    return apply_moves(m, chosen)


def optimal_popular(inst: PrefInstance, m: Matching, criterion: str,
                    weights=None, engine: Engine | None = None) -> Matching:
    """The best popular matching under the criterion, from the popular
    matching m.  Weight criteria need weights, a dict keyed by (applicant,
    post) or a callable; rank-maximal and fair derive deltas from ranks."""
    engine = engine or Engine()
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}")
    sg = build_switching_graph(reduce_instance(inst, engine), m, engine)
    by_comp = moves_by_component(sg, engine)

    if criterion in ("max-weight", "min-weight"):
        if weights is None:
            raise ValueError(f"criterion {criterion} needs weights")
        wfn = _weight_fn(weights)
        sign = 1 if criterion == "max-weight" else -1

        def gain(move: SwitchMove):
            return sign * sum(wfn(a, to) - wfn(a, frm)
                              for a, frm, to in move.edges)

        zero = 0
    elif criterion == "rank-maximal":
        def gain(move: SwitchMove):
            return rank_order_key(_move_delta(move, inst))

        zero = (0,) * (inst.num_posts + 1)
    else:  # fair
        def gain(move: SwitchMove):
            return fair_order_key(_move_delta(move, inst))

        zero = (0,) * (inst.num_posts + 1)

    return apply_moves(m, _select_moves(by_comp, gain, zero))
