"""Exhaustive reference implementations, used as correctness anchors.

Everything here enumerates and compares by definition: popularity by direct
vote counting against every other matching, stability by checking every
perfect matching for blocking pairs.  Instances above the caps (8
applicants, 10 real posts, stable n of 8) raise CapExceeded instead of
silently truncating; last-resort posts are private to their applicant and
never collide, so they do not count against the post cap.

Enumeration is vectorized: matchings are grown applicant by applicant as
rows of a post matrix, with an integer bitmask per row tracking used real
posts, and vote comparisons run on the per-applicant rank ("slot") matrix.
"""

from __future__ import annotations

import itertools

import numpy as np

from .model import Matching, PrefInstance, validate_matching
from .stable import StableInstance, StableMatching

MAX_APPLICANTS = 8
MAX_REAL_POSTS = 10
MAX_STABLE_N = 8


class CapExceeded(RuntimeError):
    """The instance is too large for exhaustive search."""


def _check_caps(inst: PrefInstance) -> None:
    if inst.num_applicants > MAX_APPLICANTS:
        raise CapExceeded(f"{inst.num_applicants} applicants exceeds the "
                          f"brute-force cap of {MAX_APPLICANTS}")
    if inst.num_posts > MAX_REAL_POSTS:
        raise CapExceeded(f"{inst.num_posts} posts exceeds the brute-force "
                          f"cap of {MAX_REAL_POSTS}")


def _enumerate_assignments(inst: PrefInstance, complete: bool = True,
                           cap: int | None = None):
    """All matchings as two int16 matrices (posts, slots), one row each.

    Post 0 means unmatched (only when complete is false); slots are profile
    positions with num_posts + 1 for last resorts and for unmatched.
    """
    _check_caps(inst)
    sentinel = inst.num_posts + 1
    posts = np.zeros((1, 0), dtype=np.int16)
    slots = np.zeros((1, 0), dtype=np.int16)
    masks = np.zeros(1, dtype=np.int64)
    for a in range(1, inst.num_applicants + 1):
        opost, oslot, obit = [], [], []
        for p in inst.listed_posts(a):
            opost.append(p)
            oslot.append(inst.profile_slot(a, p))
            obit.append(1 << (p - 1) if p <= inst.num_posts else 0)
        if not complete:
            opost.append(0)
            oslot.append(sentinel)
            obit.append(0)
        opost = np.array(opost, dtype=np.int16)
        oslot = np.array(oslot, dtype=np.int16)
        obit = np.array(obit, dtype=np.int64)

        ok = (masks[:, None] & obit[None, :]) == 0
        rows, cols = np.nonzero(ok)
        masks = masks[rows] | obit[cols]
        posts = np.concatenate([posts[rows], opost[cols][:, None]], axis=1)
        slots = np.concatenate([slots[rows], oslot[cols][:, None]], axis=1)
        if cap is not None and len(masks) > cap:
            raise CapExceeded(f"more than {cap} matchings to enumerate")
    return posts, slots


def enumerate_matchings(inst: PrefInstance, complete: bool = True,
                        cap: int | None = None) -> list[Matching]:
    posts, _ = _enumerate_assignments(inst, complete, cap)
    out = []
    for row in posts:
        pairs = tuple((a, int(p)) for a, p in enumerate(row, start=1) if p)
        out.append(Matching(pairs, inst.num_posts))
    return out


def slot_vector(inst: PrefInstance, m: Matching) -> np.ndarray:
    """Per-applicant profile slot under m; unmatched counts as last resort."""
    sentinel = inst.num_posts + 1
    out = np.empty(inst.num_applicants, dtype=np.int16)
    for a in range(1, inst.num_applicants + 1):
        p = m.post_of(a)
        out[a - 1] = sentinel if p is None else inst.profile_slot(a, p)
    return out


def preference_counts(m1: Matching, m2: Matching,
                      inst: PrefInstance) -> tuple[int, int]:
    """(applicants preferring m1, applicants preferring m2)."""
    s1 = slot_vector(inst, m1)
    s2 = slot_vector(inst, m2)
    return int((s1 < s2).sum()), int((s2 < s1).sum())


def more_popular(m1: Matching, m2: Matching, inst: PrefInstance) -> bool:
    """True iff strictly more applicants prefer m1 to m2 than the reverse."""
    plus, minus = preference_counts(m1, m2, inst)
    return plus > minus


def vote_margin_matrix(inst: PrefInstance, matchings) -> np.ndarray:
    """D[j, i] = (votes for matching j over i) - (votes for i over j)."""
    if not matchings:
        return np.zeros((0, 0), dtype=np.int32)
    s = np.stack([slot_vector(inst, m) for m in matchings]).astype(np.int32)
    n, width = s.shape
    d = np.empty((n, n), dtype=np.int32)
    step = max(1, 4_000_000 // max(1, n * max(width, 1)))
    for lo in range(0, n, step):
        hi = min(lo + step, n)
        # sign(slot_i - slot_j) is +1 exactly when j serves the applicant better
        d[lo:hi] = np.sign(s[None, :, :] - s[lo:hi, None, :]).sum(axis=-1)
    return d


def _completed(inst: PrefInstance, m: Matching) -> Matching:
    if not inst.augmented:
        return m
    assignment = dict(m.pairs)
    for a in range(1, inst.num_applicants + 1):
        assignment.setdefault(a, inst.last_resort(a))
    return Matching.from_dict(assignment, inst.num_posts)


def brute_force_popular(inst: PrefInstance, m: Matching,
                        complete: bool = True) -> bool:
    """Popularity checked directly: no enumerated matching wins more votes.

    With complete set, only applicant-complete matchings are considered and
    m's unmatched applicants are first moved to their last resorts.
    """
    _check_caps(inst)
    validate_matching(m, inst)
    if complete:
        m = _completed(inst, m)
    sv = slot_vector(inst, m).astype(np.int32)
    _, slots = _enumerate_assignments(inst, complete)
    slots = slots.astype(np.int32)
    plus = (slots < sv).sum(axis=1)
    minus = (slots > sv).sum(axis=1)
    return not bool((plus > minus).any())


def _beaten_mask(slots: np.ndarray) -> np.ndarray:
    """Rows beaten by some other row in the vote-margin sense."""
    s = slots.astype(np.int32)
    n, width = s.shape
    beaten = np.zeros(n, dtype=bool)
    step = max(1, 4_000_000 // max(1, n * max(width, 1)))
    for lo in range(0, n, step):
        hi = min(lo + step, n)
        block = np.sign(s[None, :, :] - s[lo:hi, None, :]).sum(axis=-1)
        beaten |= (block > 0).any(axis=0)
    return beaten


def enumerate_popular(inst: PrefInstance, complete: bool = True) -> list[Matching]:
    """Every matching accepted by brute_force_popular, canonically sorted."""
    posts, slots = _enumerate_assignments(inst, complete)
    keep = ~_beaten_mask(slots)
    out = []
    for row in posts[keep]:
        pairs = tuple((a, int(p)) for a, p in enumerate(row, start=1) if p)
        out.append(Matching(pairs, inst.num_posts))
    return sorted(out, key=lambda m: m.pairs)


def enumerate_stable(inst: StableInstance) -> list[StableMatching]:
    """Every stable matching, by filtering all n! perfect matchings."""
    if inst.n > MAX_STABLE_N:
        raise CapExceeded(f"n = {inst.n} exceeds the brute-force cap of "
                          f"{MAX_STABLE_N}")
    n = inst.n
    if n == 0:
        return [StableMatching(())]
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int16)
    mr = np.array(inst.men_rank, dtype=np.int16)
    wr = np.array(inst.women_rank, dtype=np.int16)
    men = np.arange(n)
    rank_of_wife = mr[men[None, :], perms]
    husband = np.argsort(perms, axis=1).astype(np.int16)
    rank_of_husband = wr[men[None, :], husband]
    blocked = np.zeros(len(perms), dtype=bool)
    for m in range(n):
        for w in range(n):
            blocked |= (mr[m, w] < rank_of_wife[:, m]) & \
                       (wr[w, m] < rank_of_husband[:, w])
    return [StableMatching(tuple(int(w) + 1 for w in row))
            for row in perms[~blocked]]
