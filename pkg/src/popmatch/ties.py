"""Popularity as maximum matching: the rank-1 tie construction.

A bipartite graph becomes a preference instance by making each left vertex
an applicant whose list is a single tie group holding all its neighbors;
no last resorts are added.  In such an instance the vote margin between two
matchings is exactly their size difference, so the popular matchings are
exactly the maximum-cardinality matchings.  check_equivalence verifies both
facts exhaustively on a concrete graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracles
from .model import BipartiteGraph, Matching, PrefInstance


def build_ties_instance(g: BipartiteGraph) -> PrefInstance:
    """The rank-1 instance of g; rejects left vertices with no neighbors."""
    lists = []
    for u in range(1, g.num_left + 1):
        neigh = g.neighbors(u)
        if not neigh:
            raise ValueError(f"left vertex {u} has no neighbors; every "
                             "applicant needs a non-empty list")
        lists.append([neigh])
    return PrefInstance.from_lists(lists, g.num_right, ties=True, augment=False)


def maximum_matching(g: BipartiteGraph) -> Matching:
    """A maximum matching by augmenting-path search, deterministic: left
    vertices are processed ascending and neighbors tried in sorted order."""
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in g.neighbors(u):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(1, g.num_left + 1):
        augment(u, set())
    pairs = sorted((u, v) for v, u in match_right.items())
    return Matching(tuple(pairs), g.num_right)


@dataclass(frozen=True)
class EquivalenceReport:
    """Exhaustive comparison of popular and maximum matchings of one graph."""

    num_matchings: int
    popular: tuple[Matching, ...]
    maximum: tuple[Matching, ...]
    sets_equal: bool
    margin_identity: bool  # vote margin == size difference, on all pairs

    def __bool__(self) -> bool:
        return self.sets_equal and self.margin_identity

    @property
    def counterexamples(self) -> tuple[Matching, ...]:
        sym = set(self.popular) ^ set(self.maximum)
        return tuple(sorted(sym, key=lambda m: m.pairs))


def check_equivalence(g: BipartiteGraph, cap: int = 200_000) -> EquivalenceReport:
    """Enumerate every matching of g and compare the popular set (direct
    vote counting, no applicant-completion) with the maximum-size set."""
    inst = build_ties_instance(g)
    matchings = oracles.enumerate_matchings(inst, complete=False, cap=cap)
    d = oracles.vote_margin_matrix(inst, matchings)
    sizes = np.array([m.size for m in matchings], dtype=np.int32)
    popular = [m for m, beaten in zip(matchings, (d > 0).any(axis=0)) if not beaten]
    maximum = [m for m, s in zip(matchings, sizes) if s == sizes.max()]
    identity = bool((d == sizes[:, None] - sizes[None, :]).all())
    return EquivalenceReport(
        num_matchings=len(matchings),
        popular=tuple(sorted(popular, key=lambda m: m.pairs)),
        maximum=tuple(sorted(maximum, key=lambda m: m.pairs)),
        sets_equal=set(popular) == set(maximum),
        margin_identity=identity,
    )
