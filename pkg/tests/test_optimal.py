"""Profiles, orderings, and optimal popular matchings."""

import pytest

from popmatch import (CRITERIA, Matching, PrefInstance, fair_order_key,
                      fair_weights, gen_random, matching_weight,
                      max_cardinality, optimal_popular,
                      popular_matchings_from, profile_of,
                      rank_maximal_weights, rank_order_key, solve_popular)

BEST_PAIRS = ((1, 2), (2, 4), (3, 3), (4, 1), (5, 5), (6, 6), (7, 8), (8, 7))


def test_profile_counts_by_rank(onesided_inst, onesided_matching):
    assert profile_of(onesided_matching, onesided_inst) == (4, 0, 1, 2, 1, 0, 0, 0, 0, 0)
    # unmatched applicants land in the last slot
    empty = Matching((), 9)
    assert profile_of(empty, onesided_inst) == (0,) * 9 + (8,)


def test_order_keys():
    better = (3, 0, 1)
    worse = (2, 9, 9)
    assert rank_order_key(better) > rank_order_key(worse)
    # fair: fewer applicants in the worst slots wins
    assert fair_order_key((2, 1, 0)) > fair_order_key((3, 0, 1))
    assert fair_order_key((1, 2, 0)) > fair_order_key((0, 3, 0))
    assert max([(1, 1, 0), (2, 0, 0)], key=fair_order_key) == (2, 0, 0)


def test_onesided_max_cardinality_already_maximum(onesided_inst, engine):
    m = solve_popular(onesided_inst, engine)
    mx = max_cardinality(onesided_inst, m, engine)
    assert mx == m  # every move has margin 0, ties keep no move
    assert mx.size == 8


def test_onesided_rank_maximal_and_fair(onesided_inst, engine):
    m = solve_popular(onesided_inst, engine)
    rm = optimal_popular(onesided_inst, m, "rank-maximal", engine=engine)
    fr = optimal_popular(onesided_inst, m, "fair", engine=engine)
    assert rm.pairs == BEST_PAIRS
    assert fr.pairs == BEST_PAIRS
    assert profile_of(rm, onesided_inst) == (4, 1, 2, 1, 0, 0, 0, 0, 0, 0)


def test_optimal_agrees_with_enumeration(onesided_inst, engine):
    m = solve_popular(onesided_inst, engine)
    pops = popular_matchings_from(onesided_inst, m, engine)
    best_rm = max(rank_order_key(profile_of(p, onesided_inst)) for p in pops)
    best_fr = max(fair_order_key(profile_of(p, onesided_inst)) for p in pops)
    rm = optimal_popular(onesided_inst, m, "rank-maximal", engine=engine)
    fr = optimal_popular(onesided_inst, m, "fair", engine=engine)
    assert rank_order_key(profile_of(rm, onesided_inst)) == best_rm
    assert fair_order_key(profile_of(fr, onesided_inst)) == best_fr


def test_weight_criteria(onesided_inst, engine):
    m = solve_popular(onesided_inst, engine)
    pops = popular_matchings_from(onesided_inst, m, engine)
    w = rank_maximal_weights(onesided_inst)
    wmax = optimal_popular(onesided_inst, m, "max-weight", weights=w, engine=engine)
    assert matching_weight(wmax, onesided_inst, w) == \
        max(matching_weight(p, onesided_inst, w) for p in pops)
    wmin = optimal_popular(onesided_inst, m, "min-weight", weights=w, engine=engine)
    assert matching_weight(wmin, onesided_inst, w) == \
        min(matching_weight(p, onesided_inst, w) for p in pops)


def test_callable_weights(onesided_inst, engine):
    m = solve_popular(onesided_inst, engine)
    flat = optimal_popular(onesided_inst, m, "max-weight",
                           weights=lambda a, p: 1, engine=engine)
    assert flat == m  # constant weights improve nothing


def test_weight_errors(onesided_inst, engine):
    m = solve_popular(onesided_inst, engine)
    with pytest.raises(ValueError, match="needs weights"):
        optimal_popular(onesided_inst, m, "max-weight", engine=engine)
    with pytest.raises(ValueError, match="unknown criterion"):
        optimal_popular(onesided_inst, m, "shortest", engine=engine)
    with pytest.raises(ValueError, match="no weight"):
        optimal_popular(onesided_inst, m, "max-weight", weights={}, engine=engine)


def test_weight_tables_cover_all_pairs(onesided_inst):
    for table in (rank_maximal_weights(onesided_inst), fair_weights(onesided_inst)):
        for a in range(1, 9):
            for p in onesided_inst.listed_posts(a):
                assert (a, p) in table
    rw = rank_maximal_weights(onesided_inst)
    assert rw[1, 1] == 8 ** 9      # rank 1 of 9 posts, 8 applicants
    assert rw[1, onesided_inst.last_resort(1)] == 0
    fw = fair_weights(onesided_inst)
    assert fw[1, 1] == 8
    assert fw[1, onesided_inst.last_resort(1)] == 8 ** 10


def test_max_cardinality_grows_when_possible():
    # a2's path move brings unmatched p2 into use without hurting a1
    inst = PrefInstance.from_lists([(1,), (1, 2)], num_posts=2)
    m = Matching(((1, 3), (2, 1)), 2)  # a1 on its last resort
    assert m.size == 1
    mx = max_cardinality(inst, m)
    assert mx.size == 2
    assert mx.pairs == ((1, 1), (2, 2))


def test_max_cardinality_keeps_maximum_fixed():
    inst = PrefInstance.from_lists([(1,), (1, 2)], num_posts=2)
    m = Matching(((1, 1), (2, 2)), 2)
    assert max_cardinality(inst, m) == m


def test_criteria_constant():
    assert CRITERIA == ("max-weight", "min-weight", "rank-maximal", "fair")


def test_fair_is_maximum_cardinality_random(engine):
    checked = 0
    for seed in range(100):
        inst = gen_random(1 + seed % 7, 1 + seed % 5, seed=4000 + seed,
                          max_len=3)
        m = solve_popular(inst, engine)
        if m is None:
            continue
        fr = optimal_popular(inst, m, "fair", engine=engine)
        mx = max_cardinality(inst, m, engine)
        assert fr.size == mx.size
        checked += 1
    assert checked >= 50
