"""Stable marriage: deferred acceptance, reduced lists, and rotations.

An instance has n men and n women with complete strict lists on both sides.
Given a stable matching M, deleting every pair (m, w) where w prefers her
partner to m leaves each man's reduced list starting at his partner; the
second entry s_M(m), when it exists, defines the successor edge
m -> partner(s_M(m)) of the rotation digraph H_M.  The cycles of H_M are
exactly the rotations exposed in M, and eliminating one (each man on the
cycle moves to the next pair's woman) yields a stable matching immediately
below M in the dominance order.  The woman-optimal matching is the only one
exposing no rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .model import (InvariantError, ParseError, _parse_id, _significant_lines,
                    _tokens)
from .rounds import Engine
from .switching import Pseudoforest, find_cycles


@dataclass(frozen=True)
class StableInstance:
    """Complete strict two-sided preferences; men[i-1] lists man i's women
    best-first, women[j-1] lists woman j's men best-first."""

    n: int
    men: tuple[tuple[int, ...], ...]
    women: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        full = tuple(range(1, self.n + 1))
        for side, rows in (("man", self.men), ("woman", self.women)):
            if len(rows) != self.n:
                raise ValueError(f"need one list per {side}")
            for i, row in enumerate(rows, start=1):
                if tuple(sorted(row)) != full:
                    raise ValueError(f"{side} {i}'s list is not a "
                                     f"permutation of 1..{self.n}")

    @cached_property
    def men_rank(self) -> tuple[tuple[int, ...], ...]:
        """men_rank[m-1][w-1] is woman w's 1-based rank on man m's list."""
        return tuple(_inverse_row(row) for row in self.men)

    @cached_property
    def women_rank(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_inverse_row(row) for row in self.women)

    def man_rank(self, m: int, w: int) -> int:
        return self.men_rank[m - 1][w - 1]

    def woman_rank(self, w: int, m: int) -> int:
        return self.women_rank[w - 1][m - 1]


def _inverse_row(row: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(row)
    for pos, x in enumerate(row, start=1):
        inv[x - 1] = pos
    return tuple(inv)


@dataclass(frozen=True)
class StableMatching:
    """A perfect matching; wives[i-1] is the woman matched to man i."""

    wives: tuple[int, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.wives)) != tuple(range(1, len(self.wives) + 1)):
            raise ValueError("wives must form a permutation")

    @cached_property
    def husbands(self) -> tuple[int, ...]:
        return _inverse_row(self.wives)

    def wife_of(self, m: int) -> int:
        return self.wives[m - 1]

    def husband_of(self, w: int) -> int:
        return self.husbands[w - 1]

    @property
    def n(self) -> int:
        return len(self.wives)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((m, w) for m, w in enumerate(self.wives, start=1))


@dataclass(frozen=True)
class Rotation:
    """An ordered cyclic pair list ((m_0,w_0),...,(m_{k-1},w_{k-1})), k >= 2;
    eliminating it matches each m_i to w_{i+1 mod k}."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.pairs) < 2:
            raise ValueError("a rotation has at least two pairs")

    def __len__(self) -> int:
        return len(self.pairs)


def parse_stable_instance(text: str) -> StableInstance:
    """Parse: line 1 is n, then n men's and n women's permutation lines."""
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    hline, hbody = lines[0]
    htoks = list(_tokens(hbody))
    if len(htoks) != 1 or not htoks[0][0].isdigit():
        raise ParseError("header must be a single count n", hline)
    n = int(htoks[0][0])
    body = lines[1:]
    if len(body) != 2 * n:
        where = body[2 * n][0] if len(body) > 2 * n else lines[-1][0] + 1
        raise ParseError(f"expected {2 * n} permutation lines, got {len(body)}",
                         where)
    rows = []
    for lnum, lbody in body:
        toks = list(_tokens(lbody))
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", lnum,
                             toks[0][1] if toks else None)
        row = []
        seen: set[int] = set()
        for tok, col in toks:
            if not tok.isdigit():
                raise ParseError(f"expected an id, got {tok!r}", lnum, col)
            x = int(tok)
            if not 1 <= x <= n:
                raise ParseError(f"id {x} out of range 1..{n}", lnum, col,
                                 kind="id-range")
            if x in seen:
                raise ParseError(f"duplicate id {x}", lnum, col,
                                 kind="duplicate-pair")
            seen.add(x)
            row.append(x)
        rows.append(tuple(row))
    return StableInstance(n, tuple(rows[:n]), tuple(rows[n:]))


def serialize_stable_instance(inst: StableInstance) -> str:
    out = [str(inst.n)]
    out.extend(" ".join(map(str, row)) for row in inst.men + inst.women)
    return "\n".join(out) + "\n"


def parse_stable_matching(text: str, inst: StableInstance) -> StableMatching:
    """Parse "m<i> w<j>" lines; the matching must be perfect."""
    wives = [0] * inst.n
    used: set[int] = set()
    last = 1
    for lnum, lbody in _significant_lines(text):
        last = lnum
        toks = list(_tokens(lbody))
        if len(toks) != 2:
            raise ParseError("expected 'm<i> w<j>'", lnum, toks[0][1])
        m = _parse_id(toks[0][0], "m", lnum, toks[0][1])
        w = _parse_id(toks[1][0], "w", lnum, toks[1][1])
        if not (1 <= m <= inst.n and 1 <= w <= inst.n):
            raise ParseError(f"pair (m{m}, w{w}) out of range", lnum,
                             toks[0][1], kind="id-range")
        if wives[m - 1]:
            raise ParseError(f"man m{m} listed twice", lnum, toks[0][1],
                             kind="duplicate-pair")
        if w in used:
            raise ParseError(f"woman w{w} listed twice", lnum, toks[1][1],
                             kind="duplicate-pair")
        wives[m - 1] = w
        used.add(w)
    if 0 in wives:
        missing = wives.index(0) + 1
        raise ParseError(f"man m{missing} is unmatched; the matching must "
                         "be perfect", last)
    return StableMatching(tuple(wives))


def serialize_stable_matching(m: StableMatching) -> str:
    out = [f"m{i} w{w}" for i, w in enumerate(m.wives, start=1)]
    return "\n".join(out) + ("\n" if out else "")


def find_blocking_pair(inst: StableInstance,
                       m: StableMatching) -> tuple[int, int] | None:
    """The lexicographically smallest (man, woman) blocking pair, if any."""
    for man in range(1, inst.n + 1):
        limit = inst.man_rank(man, m.wife_of(man))
        for w in range(1, inst.n + 1):
            if inst.man_rank(man, w) < limit and \
                    inst.woman_rank(w, man) < inst.woman_rank(w, m.husband_of(w)):
                return man, w
    return None


def is_stable(inst: StableInstance, m: StableMatching) -> bool:
    return find_blocking_pair(inst, m) is None


def gale_shapley(inst: StableInstance,
                 engine: Engine | None = None) -> StableMatching:
    """The man-optimal stable matching, by round-synchronous deferred
    acceptance: every free man proposes at once, every woman keeps the best
    suitor she has seen."""
    engine = engine or Engine()
    n = inst.n
    eng = [0] * (n + 1)     # man -> woman currently holding him
    holder = [0] * (n + 1)  # woman -> man she holds
    nxt = [0] * (n + 1)     # next index into each man's list
    while True:
        free = [m for m in range(1, n + 1) if eng[m] == 0 and nxt[m] < n]
        if not free:
            break
        props = engine.par_map(free, lambda m: inst.men[m - 1][nxt[m]],
                               phase="stable.propose")
        by_woman: dict[int, list[int]] = {}
        for m, w in zip(free, props):
            nxt[m] += 1
            by_woman.setdefault(w, []).append(m)
        for w in sorted(by_woman):
            suitors = by_woman[w]
            if holder[w]:
                suitors.append(holder[w])
            best = min(suitors, key=lambda m: inst.woman_rank(w, m))
            if holder[w] and holder[w] != best:
                eng[holder[w]] = 0
            holder[w] = best
            eng[best] = w
    if 0 in eng[1:]:
        raise InvariantError("deferred acceptance left a man unmatched")
    return StableMatching(tuple(eng[1:]))


def reduced_lists(inst: StableInstance, m: StableMatching,
                  engine: Engine | None = None) -> tuple[tuple[int, ...], ...]:
    """Per-man reduced lists under m: drop (man, w) whenever w prefers her
    partner, then compact by prefix sums.  Requires m stable, which makes
    each man's own partner the first surviving entry."""
    engine = engine or Engine()
    bp = find_blocking_pair(inst, m)
    if bp is not None:
        raise ValueError(f"matching is not stable: blocking pair "
                         f"(m{bp[0]}, w{bp[1]})")
    n = inst.n
    flat = [(man, w) for man in range(1, n + 1) for w in inst.men[man - 1]]

    def keep(pair: tuple[int, int]) -> int:
        man, w = pair
        return int(inst.woman_rank(w, man) <= inst.woman_rank(w, m.husband_of(w)))

    mask = engine.par_map(flat, keep, phase="stable.reduce")
    sums = engine.prefix_sum(mask, phase="stable.reduce")
    packed = [0] * (int(sums[-1]) if n else 0)
    for j, kept in enumerate(mask):
        if kept:
            packed[int(sums[j]) - 1] = flat[j][1]
    lists = []
    for i in range(n):
        base = int(sums[i * n - 1]) if i else 0
        count = int(sums[(i + 1) * n - 1]) - base
        lists.append(tuple(packed[base:base + count]))
    for man in range(1, n + 1):
        if lists[man - 1][0] != m.wife_of(man):
            raise InvariantError(f"m{man}'s reduced list does not start at "
                                 "his partner")
    return tuple(lists)


def build_h(inst: StableInstance, m: StableMatching,
            engine: Engine | None = None) -> Pseudoforest:
    """The rotation digraph H_M over all men; man -> partner of his second
    reduced-list entry, edges only where that entry exists."""
    engine = engine or Engine()
    lists = reduced_lists(inst, m, engine)
    men = range(1, inst.n + 1)

    def succ_of(man: int) -> int | None:
        row = lists[man - 1]
        return m.husband_of(row[1]) if len(row) >= 2 else None

    rows = engine.par_map(men, succ_of, phase="stable.h")
    succ = {man: s for man, s in zip(men, rows) if s is not None}
    return Pseudoforest(tuple(men), succ)


def is_rotation(inst: StableInstance, m: StableMatching,
                pairs: tuple[tuple[int, int], ...]) -> bool:
    """The rotation predicate, checked directly from the preference lists:
    each (m_i, w_i) is matched, m_i prefers w_i to w_{i+1}, w_{i+1} prefers
    m_i to her partner m_{i+1}, and w_{i+1} is the first woman below w_i on
    m_i's list who prefers m_i to her partner."""
    k = len(pairs)
    if k < 2 or len({mi for mi, _ in pairs}) != k:
        return False
    for i, (mi, wi) in enumerate(pairs):
        if m.wife_of(mi) != wi:
            return False
        mj, wj = pairs[(i + 1) % k]
        if not inst.man_rank(mi, wi) < inst.man_rank(mi, wj):
            return False
        if not inst.woman_rank(wj, mi) < inst.woman_rank(wj, mj):
            return False
        for w in inst.men[mi - 1][inst.man_rank(mi, wi):]:
            if inst.woman_rank(w, mi) < inst.woman_rank(w, m.husband_of(w)):
                if w != wj:
                    return False
                break
        else:
            return False
    return True


def exposed_rotations(inst: StableInstance, m: StableMatching,
                      engine: Engine | None = None) -> list[Rotation]:
    """The rotations exposed in m: the cycles of H_M, each listed from its
    smallest man and re-validated against the rotation predicate."""
    engine = engine or Engine()
    h = build_h(inst, m, engine)
    out = []
    for cycle in find_cycles(h, engine):
        rot = Rotation(tuple((mi, m.wife_of(mi)) for mi in cycle))
        if not is_rotation(inst, m, rot.pairs):
            raise InvariantError(f"H_M cycle {cycle} is not a rotation")
        out.append(rot)
    return out


def eliminate(inst: StableInstance, m: StableMatching,
              rot: Rotation) -> StableMatching:
    """The matching after eliminating rot: m_i moves to w_{i+1}."""
    for mi, wi in rot.pairs:
        if m.wife_of(mi) != wi:
            raise ValueError(f"stale rotation: m{mi} is not matched to w{wi}")
    wives = list(m.wives)
    k = len(rot.pairs)
    for i, (mi, _) in enumerate(rot.pairs):
        wives[mi - 1] = rot.pairs[(i + 1) % k][1]
    out = StableMatching(tuple(wives))
    bp = find_blocking_pair(inst, out)
    if bp is not None:
        raise InvariantError(f"elimination produced blocking pair "
                             f"(m{bp[0]}, w{bp[1]})")
    return out


def next_stable(inst: StableInstance, m: StableMatching,
                engine: Engine | None = None
                ) -> list[tuple[Rotation, StableMatching]]:
    """One (rotation, matching) per rotation exposed in m, eliminations
    applied in one round.  Empty exactly when m is woman-optimal."""
    engine = engine or Engine()
    rots = exposed_rotations(inst, m, engine)
    results = engine.par_map(rots, lambda r: eliminate(inst, m, r),
                             phase="stable.eliminate")
    return list(zip(rots, results))


def dominates(inst: StableInstance, m1: StableMatching,
              m2: StableMatching) -> bool:
    """True iff every man weakly prefers his m1-partner to his m2-partner."""
    return all(inst.man_rank(man, m1.wife_of(man))
               <= inst.man_rank(man, m2.wife_of(man))
               for man in range(1, inst.n + 1))


def immediate_dominance_check(inst: StableInstance, m: StableMatching,
                              m_next: StableMatching) -> bool:
    """True iff m strictly dominates m_next with no stable matching strictly
    between them.  Checked against the exhaustive stable set."""
    from .oracles import enumerate_stable
    if find_blocking_pair(inst, m) or find_blocking_pair(inst, m_next):
        raise ValueError("both matchings must be stable")
    if m == m_next or not dominates(inst, m, m_next):
        return False
    for other in enumerate_stable(inst):
        if other not in (m, m_next) and dominates(inst, m, other) \
                and dominates(inst, other, m_next):
            return False
    return True


def all_stable(inst: StableInstance,
               engine: Engine | None = None) -> list[StableMatching]:
    """Every stable matching, by breadth-first rotation elimination from
    the man-optimal matching; sorted canonically."""
    engine = engine or Engine()
    start = gale_shapley(inst, engine)
    seen = {start}
    frontier = [start]
    while frontier:
        new: list[StableMatching] = []
        for mm in frontier:
            for _, res in next_stable(inst, mm, engine):
                if res not in seen:
                    seen.add(res)
                    new.append(res)
        frontier = new
    return sorted(seen, key=lambda s: s.wives)
