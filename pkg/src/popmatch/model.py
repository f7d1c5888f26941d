"""Preference instances, matchings, and bipartite graphs.

Ids are 1-based throughout.  An applicant instance with A applicants and P
real posts carries one synthetic last-resort post per applicant, appended as
the final rank group of their list; the last resort of applicant i has id
P + i and prints as "L".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property


class ParseError(ValueError):
    """Rejected input text, with 1-based location and an error kind.

    Kinds: "syntax", "duplicate-post", "empty-list", "id-range",
    "duplicate-edge", "duplicate-pair".
    """

    def __init__(self, message: str, line: int, column: int | None = None,
                 kind: str = "syntax") -> None:
        loc = f"line {line}"
        if column is not None:
            loc += f", column {column}"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column
        self.kind = kind


class InvariantError(RuntimeError):
    """An internal structural invariant failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class PrefInstance:
    """One-sided preference lists over posts, grouped by rank.

    groups[a-1] is applicant a's ordered tuple of rank groups, each a sorted
    tuple of distinct post ids.  When augmented is true the final group is
    the singleton last resort (num_posts + a,).
    """

    num_applicants: int
    num_posts: int
    groups: tuple[tuple[tuple[int, ...], ...], ...]
    augmented: bool = True

    def __post_init__(self) -> None:
        if self.num_applicants < 0 or self.num_posts < 0:
            raise ValueError("negative instance dimensions")
        if len(self.groups) != self.num_applicants:
            raise ValueError("one group sequence required per applicant")
        for a, gs in enumerate(self.groups, start=1):
            if not gs or (self.augmented and len(gs) < 2):
                raise ValueError(f"applicant a{a} has an empty preference list")
            seen: set[int] = set()
            real = gs[:-1] if self.augmented else gs
            for g in real:
                if not g:
                    raise ValueError(f"applicant a{a} has an empty rank group")
                for p in g:
                    if not 1 <= p <= self.num_posts:
                        raise ValueError(f"post id p{p} out of range on a{a}'s list")
                    if p in seen:
                        raise ValueError(f"post p{p} repeated on a{a}'s list")
                    seen.add(p)
            if self.augmented and gs[-1] != (self.num_posts + a,):
                raise ValueError(f"applicant a{a} lacks a final last-resort group")

    @classmethod
    def from_lists(cls, lists, num_posts: int, ties: bool = False,
                   augment: bool = True) -> "PrefInstance":
        """Build from per-applicant lists: post ids when ties is false,
        rank groups of post ids when ties is true."""
        groups = []
        for a, entries in enumerate(lists, start=1):
            gs = [tuple(sorted(g)) for g in entries] if ties \
                else [(p,) for p in entries]
            if augment:
                gs.append((num_posts + a,))
            groups.append(tuple(gs))
        return cls(len(groups), num_posts, tuple(groups), augmented=augment)

    @property
    def strict(self) -> bool:
        return all(len(g) == 1 for gs in self.groups for g in gs)

    @property
    def total_posts(self) -> int:
        return self.num_posts + (self.num_applicants if self.augmented else 0)

    def is_last_resort(self, p: int) -> bool:
        return p > self.num_posts

    def last_resort(self, a: int) -> int:
        if not self.augmented:
            raise ValueError("instance has no last-resort posts")
        return self.num_posts + a

    def rank_groups(self, a: int) -> tuple[tuple[int, ...], ...]:
        return self.groups[a - 1]

    def listed_posts(self, a: int) -> tuple[int, ...]:
        return tuple(p for g in self.groups[a - 1] for p in g)

    def rank_of(self, a: int, p: int) -> int:
        """1-based rank group index of post p on a's list."""
        for k, g in enumerate(self.groups[a - 1], start=1):
            if p in g:
                return k
        raise KeyError(f"post p{p} is not on a{a}'s list")

    def profile_slot(self, a: int, p: int) -> int:
        """Profile position of the pair (a, p): the rank of a real post, and
        num_posts + 1 for a last resort regardless of list length."""
        if self.is_last_resort(p):
            if self.augmented and p != self.last_resort(a):
                raise KeyError(f"post p{p} is not on a{a}'s list")
            return self.num_posts + 1
        return self.rank_of(a, p)


@dataclass(frozen=True)
class Matching:
    """A partial one-to-one assignment of applicants to posts.

    pairs are (applicant, post), sorted by applicant.  size counts pairs
    whose post is not a last resort.
    """

    pairs: tuple[tuple[int, int], ...]
    num_real_posts: int

    def __post_init__(self) -> None:
        apps = [a for a, _ in self.pairs]
        posts = [p for _, p in self.pairs]
        if apps != sorted(set(apps)):
            raise ValueError("pairs must be sorted by applicant, one per applicant")
        if len(set(posts)) != len(posts):
            raise ValueError("a post appears twice in the matching")

    @classmethod
    def from_dict(cls, assignment: dict[int, int], num_real_posts: int) -> "Matching":
        return cls(tuple(sorted(assignment.items())), num_real_posts)

    @cached_property
    def _post_of(self) -> dict[int, int]:
        return dict(self.pairs)

    @cached_property
    def _applicant_of(self) -> dict[int, int]:
        return {p: a for a, p in self.pairs}

    def post_of(self, a: int) -> int | None:
        return self._post_of.get(a)

    def applicant_of(self, p: int) -> int | None:
        return self._applicant_of.get(p)

    @property
    def size(self) -> int:
        return sum(1 for _, p in self.pairs if p <= self.num_real_posts)

    @property
    def matched_posts(self) -> frozenset[int]:
        return frozenset(p for _, p in self.pairs)

    def is_applicant_complete(self, num_applicants: int) -> bool:
        return len(self.pairs) == num_applicants and \
            all(a == i for i, (a, _) in enumerate(self.pairs, start=1))


@dataclass(frozen=True)
class BipartiteGraph:
    """An undirected bipartite graph; edges are (left, right), 1-based."""

    num_left: int
    num_right: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if list(self.edges) != sorted(set(self.edges)):
            raise ValueError("edges must be sorted and distinct")
        for u, v in self.edges:
            if not (1 <= u <= self.num_left and 1 <= v <= self.num_right):
                raise ValueError(f"edge ({u}, {v}) out of range")

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(v for x, v in self.edges if x == u)


def _significant_lines(text: str):
    """Yield (line_number, content) with comments stripped and blanks skipped."""
    for num, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield num, body


def _tokens(line: str):
    """Yield (token, column) treating parentheses as their own tokens."""
    i = 0
    while i < len(line):
        c = line[i]
        if c.isspace():
            i += 1
            continue
        if c in "()":
            yield c, i + 1
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace() and line[j] not in "()":
            j += 1
        yield line[i:j], i + 1
        i = j


def _parse_int(tok: str, line: int, col: int, what: str) -> int:
    if not tok.isdigit():
        raise ParseError(f"expected {what}, got {tok!r}", line, col)
    return int(tok)


def _parse_id(tok: str, prefix: str, line: int, col: int) -> int:
    if not tok.startswith(prefix) or not tok[len(prefix):].isdigit():
        raise ParseError(f"expected {prefix}<id>, got {tok!r}", line, col)
    return int(tok[len(prefix):])


def parse_instance(text: str) -> PrefInstance:
    """Parse the preference-instance format and append last resorts.

    Line 1 is "<A> <P>"; an optional "(strict)" or "(ties)" annotation may
    follow; then one line per applicant: "a<i>: <group>..." where a group is
    "p<j>" or "( p<j> p<k> )".
    """
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    hline, hbody = lines[0]
    htoks = list(_tokens(hbody))
    if len(htoks) != 2:
        raise ParseError("header must be '<A> <P>'", hline, htoks[0][1] if htoks else 1)
    num_a = _parse_int(htoks[0][0], hline, htoks[0][1], "applicant count")
    num_p = _parse_int(htoks[1][0], hline, htoks[1][1], "post count")

    body = lines[1:]
    annotation = None
    if body:
        toks = [t for t, _ in _tokens(body[0][1])]
        if toks in (["(", "strict", ")"], ["(", "ties", ")"]):
            annotation = toks[1]
            body = body[1:]

    if len(body) != num_a:
        where = body[num_a][0] if len(body) > num_a else (lines[-1][0] + 1)
        raise ParseError(f"expected {num_a} applicant lines, got {len(body)}", where)

    groups: list[tuple[tuple[int, ...], ...]] = []
    for idx, (lnum, lbody) in enumerate(body, start=1):
        toks = list(_tokens(lbody))
        tag, tagcol = toks[0]
        if tag != f"a{idx}:":
            raise ParseError(f"expected 'a{idx}:', got {tag!r}", lnum, tagcol)
        gs: list[tuple[int, ...]] = []
        seen: set[int] = set()
        i = 1
        while i < len(toks):
            tok, col = toks[i]
            if tok == "(":
                members: list[int] = []
                i += 1
                while i < len(toks) and toks[i][0] != ")":
                    ptok, pcol = toks[i]
                    if ptok == "(":
                        raise ParseError("nested group", lnum, pcol)
                    members.append(_parse_post(ptok, num_p, lnum, pcol, seen))
                    i += 1
                if i == len(toks):
                    raise ParseError("unclosed group", lnum, col)
                if not members:
                    raise ParseError("empty rank group", lnum, col, kind="empty-list")
                gs.append(tuple(sorted(members)))
                i += 1
            elif tok == ")":
                raise ParseError("unmatched ')'", lnum, col)
            else:
                gs.append((_parse_post(tok, num_p, lnum, col, seen),))
                i += 1
        if not gs:
            raise ParseError(f"applicant a{idx} has an empty list", lnum,
                             kind="empty-list")
        gs.append((num_p + idx,))
        groups.append(tuple(gs))

    inst = PrefInstance(num_a, num_p, tuple(groups))
    if annotation == "strict" and not inst.strict:
        raise ParseError("instance declared (strict) but contains ties",
                         body[0][0] if body else hline)
    if annotation == "ties" and inst.strict:
        raise ParseError("instance declared (ties) but is strict",
                         body[0][0] if body else hline)
    return inst


def _parse_post(tok: str, num_p: int, line: int, col: int, seen: set[int]) -> int:
    p = _parse_id(tok, "p", line, col)
    if not 1 <= p <= num_p:
        raise ParseError(f"post id p{p} out of range 1..{num_p}", line, col,
                         kind="id-range")
    if p in seen:
        raise ParseError(f"duplicate post p{p}", line, col, kind="duplicate-post")
    seen.add(p)
    return p


def serialize_instance(inst: PrefInstance) -> str:
    """Render an instance in the parse_instance format (last resorts implicit)."""
    out = [f"{inst.num_applicants} {inst.num_posts}"]
    for a in range(1, inst.num_applicants + 1):
        gs = inst.rank_groups(a)
        if inst.augmented:
            gs = gs[:-1]
        parts = []
        for g in gs:
            if len(g) == 1:
                parts.append(f"p{g[0]}")
            else:
                parts.append("( " + " ".join(f"p{p}" for p in g) + " )")
        out.append(f"a{a}: " + " ".join(parts))
    return "\n".join(out) + "\n"


def parse_matching(text: str, inst: PrefInstance) -> Matching:
    """Parse matching lines "a<i> p<j>" or "a<i> L"; absent applicants are
    unmatched.  Every pair must be on the applicant's list."""
    assignment: dict[int, int] = {}
    used: set[int] = set()
    for lnum, lbody in _significant_lines(text):
        toks = list(_tokens(lbody))
        if len(toks) != 2:
            raise ParseError("expected 'a<i> p<j>' or 'a<i> L'", lnum, toks[0][1])
        a = _parse_id(toks[0][0], "a", lnum, toks[0][1])
        if not 1 <= a <= inst.num_applicants:
            raise ParseError(f"applicant id a{a} out of range", lnum, toks[0][1],
                             kind="id-range")
        if a in assignment:
            raise ParseError(f"applicant a{a} listed twice", lnum, toks[0][1],
                             kind="duplicate-pair")
        ptok, pcol = toks[1]
        if ptok == "L":
            if not inst.augmented:
                raise ParseError("instance has no last-resort posts", lnum, pcol)
            p = inst.last_resort(a)
        else:
            p = _parse_id(ptok, "p", lnum, pcol)
            if not 1 <= p <= inst.num_posts:
                raise ParseError(f"post id p{p} out of range 1..{inst.num_posts}"
                                 " (write L for a last resort)", lnum, pcol,
                                 kind="id-range")
            if p not in inst.listed_posts(a):
                raise ParseError(f"post p{p} is not on a{a}'s list", lnum, pcol,
                                 kind="id-range")
        if p in used:
            raise ParseError(f"post p{p} assigned twice", lnum, pcol,
                             kind="duplicate-pair")
        used.add(p)
        assignment[a] = p
    return Matching.from_dict(assignment, inst.num_posts)


def serialize_matching(m: Matching, inst: PrefInstance) -> str:
    """One line per matched applicant, in applicant order."""
    out = []
    for a, p in m.pairs:
        if p not in inst.listed_posts(a):
            raise ValueError(f"post p{p} is not on a{a}'s list")
        tok = "L" if inst.is_last_resort(p) else f"p{p}"
        out.append(f"a{a} {tok}")
    return "\n".join(out) + ("\n" if out else "")


def parse_bipartite(text: str) -> BipartiteGraph:
    """Parse "<L> <R>" then one "u v" line per edge."""
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    hline, hbody = lines[0]
    htoks = list(_tokens(hbody))
    if len(htoks) != 2:
        raise ParseError("header must be '<L> <R>'", hline)
    nl = _parse_int(htoks[0][0], hline, htoks[0][1], "left count")
    nr = _parse_int(htoks[1][0], hline, htoks[1][1], "right count")
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lnum, lbody in lines[1:]:
        toks = list(_tokens(lbody))
        if len(toks) != 2:
            raise ParseError("expected 'u v'", lnum)
        u = _parse_int(toks[0][0], lnum, toks[0][1], "left vertex")
        v = _parse_int(toks[1][0], lnum, toks[1][1], "right vertex")
        if not (1 <= u <= nl and 1 <= v <= nr):
            raise ParseError(f"edge ({u}, {v}) out of range", lnum, toks[0][1],
                             kind="id-range")
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u}, {v})", lnum, toks[0][1],
                             kind="duplicate-edge")
        seen.add((u, v))
        edges.append((u, v))
    return BipartiteGraph(nl, nr, tuple(sorted(edges)))


def serialize_bipartite(g: BipartiteGraph) -> str:
    out = [f"{g.num_left} {g.num_right}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def validate_matching(m: Matching, inst: PrefInstance) -> None:
    """Raise ValueError unless every pair of m lies on the instance's lists."""
    if m.num_real_posts != inst.num_posts:
        raise ValueError("matching and instance disagree on the post count")
    for a, p in m.pairs:
        if not 1 <= a <= inst.num_applicants:
            raise ValueError(f"applicant id a{a} out of range")
        if p not in inst.listed_posts(a):
            raise ValueError(f"post p{p} is not on a{a}'s list")


def gen_random(num_applicants: int, num_posts: int, seed: int,
               ties: bool = False, min_len: int = 1,
               max_len: int | None = None) -> PrefInstance:
    """Random instance, deterministic per seed.

    Each list length is uniform on [min_len, max_len] (capped at num_posts),
    posts are sampled without replacement, and ties split the drawn list
    into random contiguous rank groups.
    """
    if num_posts < 1 or num_applicants < 0:
        raise ValueError("need at least one post")
    if max_len is None:
        max_len = num_posts
    max_len = min(max_len, num_posts)
    if not 1 <= min_len <= max_len:
        raise ValueError("bad list length range")
    rng = random.Random(seed)
    lists = []
    for _ in range(num_applicants):
        length = rng.randint(min_len, max_len)
        posts = rng.sample(range(1, num_posts + 1), length)
        if ties:
            gs: list[list[int]] = [[posts[0]]]
            for p in posts[1:]:
                if rng.random() < 0.5:
                    gs.append([p])
                else:
                    gs[-1].append(p)
            lists.append(gs)
        else:
            lists.append(posts)
    return PrefInstance.from_lists(lists, num_posts, ties=ties)
