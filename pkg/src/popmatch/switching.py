"""Switching graphs: the move structure on a popular matching.

The switching graph of a popular matching M has one vertex per post of the
reduced graph and, for every applicant a, an edge from M(a) to a's other
reduced post, labeled a.  Out-degrees are at most 1 (a pseudoforest), sinks
are exactly the unmatched posts, and every component contains either a
single sink or a single cycle.  Applying a switching cycle, or one
switching path per tree component, yields exactly the other popular
matchings.  The same pseudoforest machinery serves the rotation digraph of
stable matchings, whose vertices are men.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .model import InvariantError, Matching, PrefInstance
from .reduction import ReducedGraph, reduce_instance
from .rounds import Engine


@dataclass(eq=False)
class Pseudoforest:
    """A functional digraph with out-degree at most 1."""

    vertices: tuple[int, ...]
    succ: dict[int, int]


@dataclass(eq=False)
class SwitchingGraph(Pseudoforest):
    label: dict[int, int] = field(default_factory=dict)
    component: dict[int, int] = field(default_factory=dict)
    sinks: frozenset[int] = frozenset()
    f_posts: frozenset[int] = frozenset()
    s_posts: frozenset[int] = frozenset()
    num_real_posts: int = 0

    def components(self) -> list[int]:
        return sorted(set(self.component.values()))

    def component_vertices(self, comp: int) -> list[int]:
        return [v for v in self.vertices if self.component[v] == comp]

    def component_kind(self, comp: int) -> str:
        """"tree" when the component drains into a sink, else "cycle"."""
        has_sink = any(v in self.sinks for v in self.component_vertices(comp))
        return "tree" if has_sink else "cycle"


@dataclass(frozen=True)
class SwitchMove:
    """A set of applicant moves applied together: each applicant switches
    from its current reduced post to its other one."""

    kind: str  # "cycle" or "path"
    edges: tuple[tuple[int, int, int], ...]  # (applicant, from_post, to_post)

    @property
    def source(self) -> int:
        """Path start, or the smallest post on a cycle; used for tie-breaks."""
        if self.kind == "path":
            return self.edges[0][1]
        return min(e[1] for e in self.edges)


def build_switching_graph(g: ReducedGraph, m: Matching,
                          engine: Engine | None = None) -> SwitchingGraph:
    """Switching graph of a popular matching m over the reduced graph g."""
    engine = engine or Engine()
    if not m.is_applicant_complete(g.num_applicants) \
            or (g.f_posts - m.matched_posts) \
            or any(p not in g.edges_of(a) for a, p in m.pairs):
        raise ValueError("matching is not popular; no switching graph exists")

    applicants = range(1, g.num_applicants + 1)

    def edge_of(a: int) -> tuple[int, int, int]:
        f, s = g.edges_of(a)
        src = m.post_of(a)
        return a, src, s if src == f else f

    rows = engine.par_map(applicants, edge_of, phase="switching.build")
    succ: dict[int, int] = {}
    label: dict[int, int] = {}
    for a, src, dst in rows:
        if src in succ:
            raise InvariantError(f"post p{src} would get out-degree 2")
        succ[src] = dst
        label[src] = a

    vertices = g.posts
    sinks = frozenset(v for v in vertices if v not in succ)
    if not sinks <= g.s_posts:
        raise InvariantError("a sink is not an s-post")

    n = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    adj = np.zeros((n, n), dtype=bool)
    for src, dst in succ.items():
        adj[index[src], index[dst]] = True
        adj[index[dst], index[src]] = True
    closure = engine.bool_closure(adj, phase="switching.components")
    varr = np.array(vertices)
    component = {v: int(varr[closure[index[v]]].min()) for v in vertices}

    return SwitchingGraph(vertices, succ, label, component, sinks,
                          g.f_posts, g.s_posts, g.num_real_posts)


def _canonical_cycle(start_set: set[int], succ: dict[int, int]) -> tuple[int, ...]:
    start = min(start_set)
    out = [start]
    v = succ[start]
    while v != start:
        out.append(v)
        v = succ[v]
    return tuple(out)


def _cycles_by_walk(pf: Pseudoforest) -> set[tuple[int, ...]]:
    """Sequential cycle detection with visitation marks."""
    color: dict[int, int] = {v: 0 for v in pf.vertices}  # 0 new, 1 active, 2 done
    cycles: set[tuple[int, ...]] = set()
    for v0 in pf.vertices:
        if color[v0]:
            continue
        path: list[int] = []
        v = v0
        while True:
            if color[v] == 1:
                cut = path.index(v)
                cycles.add(_canonical_cycle(set(path[cut:]), pf.succ))
                break
            if color[v] == 2 or v not in pf.succ:
                color[v] = 2
                break
            color[v] = 1
            path.append(v)
            v = pf.succ[v]
        for u in path:
            color[u] = 2
    return cycles


def find_cycles(pf: Pseudoforest, engine: Engine | None = None) -> list[tuple[int, ...]]:
    """All cycles, each listed from its smallest vertex in edge direction.

    Computed via the reachability closure (mutual reachability marks cycle
    vertices) and cross-checked against a sequential successor walk.
    """
    engine = engine or Engine()
    n = len(pf.vertices)
    index = {v: i for i, v in enumerate(pf.vertices)}
    adj = np.zeros((n, n), dtype=bool)
    for src, dst in pf.succ.items():
        adj[index[src], index[dst]] = True
    closure = engine.bool_closure(adj, phase="switching.cycles")
    mutual = closure & closure.T & ~np.eye(n, dtype=bool)
    # a vertex is on a cycle iff it reaches itself by >= 1 edge: either a
    # distinct mutually-reachable partner exists or it carries a self-loop
    on_cycle = [v for v in pf.vertices
                if mutual[index[v]].any() or adj[index[v], index[v]]]

    cycles: set[tuple[int, ...]] = set()
    remaining = set(on_cycle)
    while remaining:
        cyc = _canonical_cycle(remaining, pf.succ)
        cycles.add(cyc)
        remaining -= set(cyc)

    if cycles != _cycles_by_walk(pf):
        raise InvariantError("closure and walk disagree on the cycle set")
    return sorted(cycles)


def cycle_move(sg: SwitchingGraph, cycle: tuple[int, ...]) -> SwitchMove:
    edges = []
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        if sg.succ.get(v) != w:
            raise ValueError("not a cycle of this switching graph")
        edges.append((sg.label[v], v, w))
    return SwitchMove("cycle", tuple(edges))


def find_switching_paths(sg: SwitchingGraph, comp: int,
                         engine: Engine | None = None) -> list[SwitchMove]:
    """Switching paths of a tree component: one per non-sink s-post vertex.

    For each candidate q the edge sink -> q is added and the cycle this
    creates is read off; dropping the added edge leaves the q-to-sink path.
    Candidates are traced in one round, each on its own copy.
    """
    engine = engine or Engine()
    members = sg.component_vertices(comp)
    comp_sinks = [v for v in members if v in sg.sinks]
    if len(comp_sinks) != 1:
        raise ValueError("switching paths exist only in tree components")
    sink = comp_sinks[0]
    candidates = sorted(v for v in members if v in sg.s_posts and v != sink)

    def trace(q: int) -> tuple[int, ...]:
        succ = dict(sg.succ)
        succ[sink] = q  # close the unique cycle through q
        seq = [q]
        v = succ[q]
        while v != q:
            seq.append(v)
            v = succ[v]
        if seq[-1] != sink:
            raise InvariantError("created cycle does not pass the sink")
        return tuple(seq)

    paths = engine.par_map(candidates, trace, phase="switching.paths")
    return [SwitchMove("path", tuple((sg.label[seq[i]], seq[i], seq[i + 1])
                                     for i in range(len(seq) - 1)))
            for seq in paths]


def moves_by_component(sg: SwitchingGraph,
                       engine: Engine | None = None) -> dict[int, list[SwitchMove]]:
    """Every component's moves: its cycle, or all its switching paths."""
    engine = engine or Engine()
    out: dict[int, list[SwitchMove]] = {comp: [] for comp in sg.components()}
    for cyc in find_cycles(sg, engine):
        out[sg.component[cyc[0]]].append(cycle_move(sg, cyc))
    for comp, moves in out.items():
        if len(moves) > 1:
            raise InvariantError("component with more than one cycle")
        if not moves:
            out[comp] = find_switching_paths(sg, comp, engine)
    return out


def component_moves(sg: SwitchingGraph, comp: int,
                    engine: Engine | None = None) -> list[SwitchMove]:
    """All single moves available in one component."""
    return moves_by_component(sg, engine)[comp]


def margin(move: SwitchMove, inst: PrefInstance) -> int:
    """Size change applying the move: real to-posts minus real from-posts."""
    delta = 0
    for _, frm, to in move.edges:
        delta += (0 if inst.is_last_resort(to) else 1)
        delta -= (0 if inst.is_last_resort(frm) else 1)
    return delta


def apply_move(m: Matching, move: SwitchMove) -> Matching:
    """The matching after every applicant on the move switches posts."""
    assignment = dict(m.pairs)
    for a, frm, _ in move.edges:
        if assignment.get(a) != frm:
            raise ValueError(f"stale move: a{a} is not matched to p{frm}")
    for a, _, _ in move.edges:
        del assignment[a]
    for a, _, to in move.edges:
        assignment[a] = to
    return Matching.from_dict(assignment, m.num_real_posts)


def apply_moves(m: Matching, moves) -> Matching:
    for move in moves:
        m = apply_move(m, move)
    return m


def popular_matchings_from(inst: PrefInstance, m: Matching,
                           engine: Engine | None = None,
                           limit: int = 1_000_000) -> list[Matching]:
    """Every popular matching, generated as all per-component move choices
    (at most one move per component) applied to m."""
    engine = engine or Engine()
    g = reduce_instance(inst, engine)
    sg = build_switching_graph(g, m, engine)
    by_comp = moves_by_component(sg, engine)
    option_sets = []
    total = 1
    for comp in sg.components():
        options: list[SwitchMove | None] = [None]
        options.extend(by_comp[comp])
        option_sets.append(options)
        total *= len(options)
        if total > limit:
            raise ValueError(f"more than {limit} move selections")
    out = set()
    for selection in itertools.product(*option_sets):
        out.add(apply_moves(m, [mv for mv in selection if mv is not None]))
    return sorted(out, key=lambda mm: mm.pairs)
