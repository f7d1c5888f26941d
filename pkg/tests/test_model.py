"""Instance and matching types, parsers, serializers, and the generator."""

import pytest

from popmatch import (BipartiteGraph, Matching, ParseError, PrefInstance,
                      gen_random, parse_bipartite, parse_instance,
                      parse_matching, serialize_bipartite, serialize_instance,
                      serialize_matching, validate_matching)


def test_from_lists_strict_appends_last_resorts():
    inst = PrefInstance.from_lists([(1, 2), (2,)], num_posts=2)
    assert inst.num_applicants == 2 and inst.num_posts == 2
    assert inst.rank_groups(1) == ((1,), (2,), (3,))
    assert inst.rank_groups(2) == ((2,), (4,))
    assert inst.strict and inst.augmented
    assert inst.total_posts == 4
    assert inst.last_resort(1) == 3 and inst.is_last_resort(3)
    assert not inst.is_last_resort(2)


def test_from_lists_ties():
    inst = PrefInstance.from_lists([[(2, 1)], [(1,), (2, 3)]], num_posts=3,
                                   ties=True)
    assert inst.rank_groups(1) == ((1, 2), (4,))
    assert inst.rank_groups(2) == ((1,), (2, 3), (5,))
    assert not inst.strict


def test_rank_of_and_profile_slot():
    inst = PrefInstance.from_lists([(3, 1), (2,)], num_posts=3)
    assert inst.rank_of(1, 3) == 1
    assert inst.rank_of(1, 1) == 2
    assert inst.rank_of(1, 4) == 3
    with pytest.raises(KeyError):
        inst.rank_of(1, 2)
    # last resorts always land in the final profile slot
    assert inst.profile_slot(1, 4) == 4
    assert inst.profile_slot(2, 5) == 4
    assert inst.profile_slot(2, 2) == 1
    with pytest.raises(KeyError):
        inst.profile_slot(1, 5)


def test_listed_posts_order():
    inst = PrefInstance.from_lists([(3, 1, 2)], num_posts=3)
    assert inst.listed_posts(1) == (3, 1, 2, 4)


def test_instance_rejects_duplicates_and_range():
    with pytest.raises(ValueError):
        PrefInstance.from_lists([(1, 1)], num_posts=2)
    with pytest.raises(ValueError):
        PrefInstance.from_lists([(5,)], num_posts=2)


def test_matching_invariants():
    m = Matching.from_dict({2: 5, 1: 1}, num_real_posts=3)
    assert m.pairs == ((1, 1), (2, 5))
    assert m.post_of(1) == 1 and m.post_of(3) is None
    assert m.applicant_of(5) == 2 and m.applicant_of(2) is None
    assert m.size == 1  # post 5 is a last resort for a 3-post instance
    assert m.matched_posts == frozenset({1, 5})
    assert m.is_applicant_complete(2)
    assert not m.is_applicant_complete(3)
    with pytest.raises(ValueError):
        Matching(((2, 1), (1, 2)), 2)  # unsorted
    with pytest.raises(ValueError):
        Matching(((1, 1), (2, 1)), 2)  # post reused


def test_parse_instance_golden(onesided_inst):
    assert onesided_inst.num_applicants == 8
    assert onesided_inst.num_posts == 9
    assert onesided_inst.strict
    assert onesided_inst.listed_posts(6) == (7, 6, 15)


def test_parse_instance_ties_and_comments():
    text = """
    # two applicants
    2 3  # trailing comment
    (ties)
    a1: ( p2 p1 ) p3
    a2: p3
    """
    inst = parse_instance(text)
    assert inst.rank_groups(1) == ((1, 2), (3,), (4,))
    assert inst.rank_groups(2) == ((3,), (5,))


def test_parse_instance_errors():
    with pytest.raises(ParseError) as ei:
        parse_instance("")
    assert ei.value.line == 1
    with pytest.raises(ParseError) as ei:
        parse_instance("1 2\na1: p1 p1\n")
    assert ei.value.kind == "duplicate-post"
    with pytest.raises(ParseError) as ei:
        parse_instance("1 2\na1: p9\n")
    assert ei.value.kind == "id-range"
    with pytest.raises(ParseError):
        parse_instance("2 2\na1: p1\n")  # missing applicant line
    with pytest.raises(ParseError):
        parse_instance("1 1\na2: p1\n")  # wrong tag
    with pytest.raises(ParseError):
        parse_instance("1 2\na1: ( p1 p2\n")  # unclosed group
    with pytest.raises(ParseError):
        parse_instance("1 2\n(ties)\na1: p1\n")  # declared ties but strict
    with pytest.raises(ParseError):
        parse_instance("1 2\n(strict)\na1: ( p1 p2 )\n")


def test_instance_round_trip(onesided_inst, onesided_text):
    assert parse_instance(serialize_instance(onesided_inst)) == onesided_inst


def test_parse_matching_and_last_resort(onesided_inst):
    m = parse_matching("a1 p4\na6 L\n", onesided_inst)
    assert m.pairs == ((1, 4), (6, 15))
    assert serialize_matching(m, onesided_inst) == "a1 p4\na6 L\n"


def test_parse_matching_errors(onesided_inst):
    with pytest.raises(ParseError) as ei:
        parse_matching("a1 p4\na1 p5\n", onesided_inst)
    assert ei.value.kind == "duplicate-pair"
    with pytest.raises(ParseError) as ei:
        parse_matching("a1 p4\na3 p4\n", onesided_inst)
    assert ei.value.kind == "duplicate-pair"
    with pytest.raises(ParseError) as ei:
        parse_matching("a1 p3\n", onesided_inst)  # p3 not on a1's list
    assert ei.value.kind == "id-range"
    with pytest.raises(ParseError):
        parse_matching("a99 p1\n", onesided_inst)
    with pytest.raises(ParseError):
        parse_matching("a1 p1 extra\n", onesided_inst)


def test_validate_matching(onesided_inst):
    good = Matching(((1, 1),), onesided_inst.num_posts)
    validate_matching(good, onesided_inst)
    with pytest.raises(ValueError):
        validate_matching(Matching(((1, 3),), onesided_inst.num_posts), onesided_inst)
    with pytest.raises(ValueError):
        validate_matching(Matching(((1, 1),), 4), onesided_inst)


def test_bipartite_parse_and_round_trip():
    g = parse_bipartite("2 3\n1 2\n1 1\n2 3\n")
    assert g.num_left == 2 and g.num_right == 3
    assert g.edges == ((1, 1), (1, 2), (2, 3))
    assert g.neighbors(1) == (1, 2)
    assert parse_bipartite(serialize_bipartite(g)) == g
    with pytest.raises(ParseError) as ei:
        parse_bipartite("2 2\n1 1\n1 1\n")
    assert ei.value.kind == "duplicate-edge"
    with pytest.raises(ParseError) as ei:
        parse_bipartite("2 2\n1 5\n")
    assert ei.value.kind == "id-range"
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, ((1, 1), (1, 1)))


def test_gen_random_deterministic_and_valid():
    a = gen_random(20, 10, seed=42, ties=True, min_len=2, max_len=6)
    b = gen_random(20, 10, seed=42, ties=True, min_len=2, max_len=6)
    assert a == b
    assert a.num_applicants == 20
    for i in range(1, 21):
        real = [p for p in a.listed_posts(i) if not a.is_last_resort(p)]
        assert 2 <= len(real) <= 6
        assert len(set(real)) == len(real)
    c = gen_random(20, 10, seed=43, ties=True, min_len=2, max_len=6)
    assert a != c


def test_gen_random_strict_flag():
    inst = gen_random(12, 6, seed=3)
    assert inst.strict
    with pytest.raises(ValueError):
        gen_random(2, 0, seed=1)
    with pytest.raises(ValueError):
        gen_random(2, 3, seed=1, min_len=5, max_len=2)
