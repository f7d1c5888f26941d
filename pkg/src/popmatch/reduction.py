"""Reduction of a strict instance to each applicant's first and second choices.

f(a) is a's top-ranked post.  A post is an f-post if it is someone's f(a);
s(a) is the highest-ranked post on a's list that is not an f-post.  Because
lists end with a private last resort, s(a) always exists and differs from
f(a).  The reduced graph keeps exactly the edges (a, f(a)) and (a, s(a)),
so every applicant has degree 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .model import InvariantError, PrefInstance
from .rounds import Engine


class NotStrictError(ValueError):
    """The operation needs strict lists; instances with ties are rejected."""


@dataclass(frozen=True)
class ReducedGraph:
    """First/second-choice graph of a strict augmented instance."""

    num_applicants: int
    num_real_posts: int
    f: tuple[int, ...]
    s: tuple[int, ...]

    @cached_property
    def f_posts(self) -> frozenset[int]:
        return frozenset(self.f)

    @cached_property
    def s_posts(self) -> frozenset[int]:
        return frozenset(self.s)

    @cached_property
    def posts(self) -> tuple[int, ...]:
        """All post vertices of the reduced graph, ascending."""
        return tuple(sorted(self.f_posts | self.s_posts))

    @property
    def num_vertices(self) -> int:
        return self.num_applicants + len(self.posts)

    def edges_of(self, a: int) -> tuple[int, int]:
        return self.f[a - 1], self.s[a - 1]

    @cached_property
    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {p: 0 for p in self.posts}
        for a in range(1, self.num_applicants + 1):
            deg[self.f[a - 1]] += 1
            deg[self.s[a - 1]] += 1
        return deg

    def f_inverse(self, p: int) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.num_applicants + 1)
                     if self.f[a - 1] == p)


def reduce_instance(inst: PrefInstance, engine: Engine | None = None) -> ReducedGraph:
    """Build the reduced graph in three rounds: mark first choices, drop
    lower-ranked edges at f-posts, then take each applicant's best survivor."""
    if not inst.augmented:
        raise ValueError("reduction needs an instance with last-resort posts")
    if not inst.strict:
        raise NotStrictError("reduction requires strict preference lists")
    engine = engine or Engine()
    applicants = range(1, inst.num_applicants + 1)

    firsts = engine.par_map(
        applicants, lambda a: inst.rank_groups(a)[0][0], phase="reduce")
    f_posts = frozenset(firsts)

    # survivors after deleting non-top edges into f-posts
    survivors = engine.par_map(
        applicants,
        lambda a: tuple(p for k, p in enumerate(inst.listed_posts(a))
                        if k == 0 or p not in f_posts),
        phase="reduce")

    def best_non_f(row: tuple[int, ...]) -> int:
        for p in row:
            if p not in f_posts:
                return p
        raise InvariantError("no non-f post survived; last resorts are never f-posts")

    seconds = engine.par_map(survivors, best_non_f, phase="reduce")
    return ReducedGraph(inst.num_applicants, inst.num_posts,
                        tuple(firsts), tuple(seconds))
