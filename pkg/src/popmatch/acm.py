"""Applicant-complete matching in the reduced graph.

The reduced graph gives every applicant degree exactly 2, so matching all
applicants reduces to peeling: while some post has degree 1, every maximal
path of degree-2 vertices anchored at such a post is matched along its even
edges and deleted, all paths in the same round.  The number of peel rounds
is at most ceil(log2 n) + 1 for n vertices.  What survives (after dropping
isolated posts) either violates Hall's condition or is a disjoint union of
even cycles, where alternate edges complete the matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import InvariantError, Matching
from .reduction import ReducedGraph
from .rounds import Engine


@dataclass(frozen=True)
class HallCertificate:
    """A witness that no applicant-complete matching exists: the peeled
    residual has more applicants than posts."""

    applicants: tuple[int, ...]
    posts: tuple[int, ...]


@dataclass(frozen=True)
class Deg2Path:
    """A maximal degree-2 path v0..v_{k+1}, anchored at the degree-1 post v0.

    posts holds v0, v2, ... and applicants v1, v3, ...; the final post is
    the only vertex of degree != 2.  Pairs (posts[i], applicants[i]) are the
    edges at even distance from v0, the ones the peel matches.
    """

    posts: tuple[int, ...]
    applicants: tuple[int, ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        out: list[str] = []
        for i, p in enumerate(self.posts):
            out.append(f"p{p}")
            if i < len(self.applicants):
                out.append(f"a{self.applicants[i]}")
        return tuple(out)

    @property
    def matched_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, p) for p, a in zip(self.posts[:-1], self.applicants))


class PeelState:
    """Mutable state of the peel loop over a reduced graph."""

    def __init__(self, g: ReducedGraph, engine: Engine) -> None:
        self.g = g
        self.engine = engine
        self.num_posts_total = g.num_real_posts + g.num_applicants
        self.fs = np.array([g.edges_of(a) for a in range(1, g.num_applicants + 1)],
                           dtype=np.int64).reshape(g.num_applicants, 2)
        self.alive_a = np.ones(g.num_applicants, dtype=bool)
        self.alive_p = np.zeros(self.num_posts_total + 1, dtype=bool)
        for p in g.posts:
            self.alive_p[p] = True
        self.matched: list[tuple[int, int]] = []
        self.rounds = 0

    def post_degrees(self) -> np.ndarray:
        """Degree of every post among edges of alive applicants."""
        flat = self.fs[self.alive_a].ravel()
        return np.bincount(flat, minlength=self.num_posts_total + 1)

    def alive_applicants(self) -> tuple[int, ...]:
        return tuple(int(i) + 1 for i in np.flatnonzero(self.alive_a))

    def alive_posts(self) -> tuple[int, ...]:
        return tuple(int(p) for p in np.flatnonzero(self.alive_p))


def find_maximal_deg2_paths(state: PeelState) -> list[Deg2Path]:
    """All maximal degree-2 paths anchored at a degree-1 post, one per path.

    Directed edges (applicant, slot) chain through degree-2 posts; pointer
    doubling finds each chain's terminal edge and length.  A path whose both
    endpoints have degree 1 is reported once, anchored at the smaller post
    id.  Pure cycles have no degree-1 anchor and are not returned.
    """
    deg = state.post_degrees()
    idx = np.flatnonzero(state.alive_a)
    m = len(idx)
    if m == 0:
        return []
    heads = state.fs[idx]            # head post of directed edge 2t+slot
    flat = heads.ravel()
    ne = 2 * m

    order = np.argsort(flat, kind="stable")
    sorted_heads = flat[order]
    starts = np.flatnonzero(np.r_[True, sorted_heads[1:] != sorted_heads[:-1]])
    run_lens = np.diff(np.r_[starts, ne])

    # chain successor: through a degree-2 head, continue out of the other
    # incidence's applicant on its other slot
    partner = np.full(ne, -1, dtype=np.int64)
    two = starts[run_lens == 2]
    partner[order[two]] = order[two + 1]
    partner[order[two + 1]] = order[two]
    succ = np.full(ne, -1, dtype=np.int64)
    mask = deg[flat] == 2
    succ[mask] = partner[mask] ^ 1

    reach, dist = state.engine.successor_double(succ, phase="acm.paths")

    paths: list[Deg2Path] = []
    for start in starts[run_lens == 1]:
        v0 = int(sorted_heads[start])
        e1 = int(order[start]) ^ 1
        e_term = int(reach[e1])
        if e_term < 0:
            raise InvariantError("a degree-1 anchored chain failed to terminate")
        end_post = int(flat[e_term])
        if deg[end_post] == 1 and end_post < v0:
            continue  # the other endpoint anchors this path
        posts = [v0]
        apps = []
        e = e1
        while True:
            apps.append(int(idx[e // 2]) + 1)
            posts.append(int(flat[e]))
            nxt = int(succ[e])
            if nxt < 0:
                break
            e = nxt
        if len(apps) != int(dist[e1]) + 1:
            raise InvariantError("doubling distance disagrees with the chain walk")
        paths.append(Deg2Path(tuple(posts), tuple(apps)))
    return paths


def cycle_perfect_matching(edges_by_applicant: dict[int, tuple[int, int]],
                           f_of: dict[int, int]) -> list[tuple[int, int]]:
    """Perfect matching of a 2-regular bipartite residual.

    Each cycle is matched by the alternating edge set through the smallest
    applicant's f-edge (falling back to its other edge if f_of points
    elsewhere).  Raises ValueError if the graph is not 2-regular with
    equally many posts and applicants.
    """
    post_inc: dict[int, list[int]] = {}
    for a, (p, q) in edges_by_applicant.items():
        if p == q:
            raise ValueError(f"applicant {a} has a repeated edge")
        post_inc.setdefault(p, []).append(a)
        post_inc.setdefault(q, []).append(a)
    if any(len(inc) != 2 for inc in post_inc.values()):
        raise ValueError("residual is not 2-regular")
    if len(post_inc) != len(edges_by_applicant):
        raise ValueError("residual post and applicant counts differ")

    pairs: list[tuple[int, int]] = []
    visited: set[int] = set()
    for a0 in sorted(edges_by_applicant):
        if a0 in visited:
            continue
        p0 = f_of.get(a0)
        if p0 not in edges_by_applicant[a0]:
            p0 = edges_by_applicant[a0][0]
        a, p = a0, p0
        while True:
            pairs.append((a, p))
            visited.add(a)
            x, y = post_inc[p]
            a = y if x == a else x
            if a == a0:
                break
            e0, e1 = edges_by_applicant[a]
            p = e1 if e0 == p else e0
    return pairs


def applicant_complete(g: ReducedGraph,
                       engine: Engine | None = None) -> Matching | HallCertificate:
    """Match every applicant within the reduced graph, or certify failure."""
    engine = engine or Engine()
    state = PeelState(g, engine)
    while True:
        paths = find_maximal_deg2_paths(state)
        if not paths:
            break
        for path in paths:
            state.matched.extend(path.matched_pairs)
            for a in path.applicants:
                state.alive_a[a - 1] = False
            for p in path.posts[:-1]:
                state.alive_p[p] = False
        state.rounds += 1
        engine.stats.bump("acm.peel", 1, 2 * int(state.alive_a.sum()))

    deg = state.post_degrees()
    isolated = state.alive_p & (deg == 0)
    state.alive_p &= ~isolated
    engine.stats.bump("acm.cleanup", 1, int(isolated.sum()))

    res_a = state.alive_applicants()
    res_p = state.alive_posts()
    if len(res_p) < len(res_a):
        return HallCertificate(res_a, res_p)
    if len(res_p) > len(res_a):
        raise InvariantError("peeled residual has more posts than applicants")

    if res_a:
        if any(deg[p] != 2 for p in res_p):
            raise InvariantError("peeled residual is not 2-regular")
        edges = {a: g.edges_of(a) for a in res_a}
        f_of = {a: g.f[a - 1] for a in res_a}
        cycle_pairs = cycle_perfect_matching(edges, f_of)
        state.matched.extend(cycle_pairs)
        engine.stats.bump("acm.cycle", 1, len(cycle_pairs))

    m = Matching(tuple(sorted(state.matched)), g.num_real_posts)
    if not m.is_applicant_complete(g.num_applicants):
        raise InvariantError("constructed matching is not applicant-complete")
    return m


def peel_rounds(g: ReducedGraph, engine: Engine | None = None) -> int:
    """Number of peel-loop iterations applicant_complete uses on g."""
    engine = engine or Engine()
    before = engine.stats.rounds("acm.peel")
    applicant_complete(g, engine)
    return engine.stats.rounds("acm.peel") - before
