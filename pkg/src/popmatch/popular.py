"""Popular matchings for strict one-sided preference lists.

A matching M (with unmatched applicants read as taking their last resort)
is popular iff every f-post is matched in M and every applicant is matched
to their f-post or s-post.  Solving is: reduce, match everyone inside the
reduced graph, then promote one applicant onto each still-unmatched f-post.
"""

from __future__ import annotations

from dataclasses import dataclass

from .acm import HallCertificate, applicant_complete
from .model import InvariantError, Matching, PrefInstance, validate_matching
from .reduction import ReducedGraph, reduce_instance
from .rounds import Engine


@dataclass(frozen=True)
class PopularityReport:
    """Outcome of the popularity characterization check.

    unmatched_f_posts lists f-posts no applicant holds; off_choice lists
    (applicant, post) pairs where the post is neither f(a) nor s(a).
    """

    popular: bool
    unmatched_f_posts: tuple[int, ...]
    off_choice: tuple[tuple[int, int], ...]

    def __bool__(self) -> bool:
        return self.popular


def complete_to_last_resorts(m: Matching, inst: PrefInstance) -> Matching:
    """Match every unmatched applicant to their private last resort."""
    assignment = dict(m.pairs)
    for a in range(1, inst.num_applicants + 1):
        if a not in assignment:
            assignment[a] = inst.last_resort(a)
    return Matching.from_dict(assignment, inst.num_posts)


def promote_unmatched_fposts(m: Matching, g: ReducedGraph,
                             engine: Engine | None = None) -> Matching:
    """Move, for each unmatched f-post p, the smallest applicant of
    f^{-1}(p) currently on their s-post up to p.  One round; the moves are
    disjoint because the f^{-1} classes partition the applicants."""
    engine = engine or Engine()
    unmatched = sorted(g.f_posts - m.matched_posts)

    def pick(p: int) -> tuple[int, int]:
        for a in g.f_inverse(p):
            if m.post_of(a) == g.s[a - 1]:
                return a, p
        raise InvariantError(f"unmatched f-post p{p} has no promotable applicant")

    moves = engine.par_map(unmatched, pick, phase="promote")
    assignment = dict(m.pairs)
    for a, p in moves:
        del assignment[a]
    for a, p in moves:
        assignment[a] = p
    return Matching.from_dict(assignment, m.num_real_posts)


def solve_popular(inst: PrefInstance,
                  engine: Engine | None = None) -> Matching | None:
    """A popular matching of a strict instance, or None when none exists."""
    engine = engine or Engine()
    g = reduce_instance(inst, engine)
    res = applicant_complete(g, engine)
    if isinstance(res, HallCertificate):
        return None
    return promote_unmatched_fposts(res, g, engine)


def is_popular(m: Matching, inst: PrefInstance,
               engine: Engine | None = None) -> PopularityReport:
    """Characterization check of popularity; unmatched applicants are first
    completed onto their last resorts."""
    engine = engine or Engine()
    g = reduce_instance(inst, engine)
    full = complete_to_last_resorts(m, inst)
    validate_matching(full, inst)
    unmatched_f = tuple(sorted(g.f_posts - full.matched_posts))
    off = tuple((a, p) for a, p in full.pairs if p not in g.edges_of(a))
    return PopularityReport(not unmatched_f and not off, unmatched_f, off)
