import itertools
import math
import random

import pytest

from cycleint import config
from cycleint.intersect import (PermFamily,
                                build_intersection_graph, common_cycles,
                                is_family_t_cycle_intersecting, is_maximal,
                                is_stabilizer_of_points,
                                is_t_cycle_intersecting_pair, maximalize,
                                pointwise_agreements, stabilized_points)
from cycleint.perm import Permutation, all_permutations, conjugate, identity, rank


def stab(points, n):
    pts = set(points)
    return PermFamily(n, (p for p in all_permutations(n)
                          if pts <= set(p.fixed_points())))


def test_common_cycles_examples():
    s = Permutation([2, 3, 1, 5, 4])
    assert common_cycles(s, s) == s.cycles()
    assert common_cycles(Permutation([1, 2, 4, 3]),
                         Permutation([1, 2, 3, 4])) == ((1,), (2,))
    assert common_cycles(Permutation([2, 1, 3, 4]),
                         Permutation([1, 2, 4, 3])) == ()


def test_pair_predicate_examples():
    s = Permutation([2, 1, 3, 4, 5])
    assert is_t_cycle_intersecting_pair(s, s, len(s.cycles()))
    assert is_t_cycle_intersecting_pair(Permutation([1, 2, 4, 3]),
                                        Permutation([1, 2, 3, 4]), 2)
    assert not is_t_cycle_intersecting_pair(Permutation([2, 1, 3, 4]),
                                            Permutation([1, 2, 4, 3]), 1)
    with pytest.raises(ValueError):
        is_t_cycle_intersecting_pair(identity(3), identity(4), 1)


def test_family_predicate_examples():
    assert is_family_t_cycle_intersecting(stab({1, 2}, 5), 2)
    whole_s3 = PermFamily(3, all_permutations(3))
    assert not is_family_t_cycle_intersecting(whole_s3, 1)
    assert is_family_t_cycle_intersecting(PermFamily(3), 5)  # vacuous


def test_two_distinct_permutations_share_at_most_n_minus_two_cycles():
    # so any family with two or more members fails the predicate at t >= n-1
    for p, q in itertools.combinations(all_permutations(4), 2):
        assert len(common_cycles(p, q)) <= 2


def test_family_dedup_and_canonical_order():
    perms = [Permutation([2, 1, 3]), identity(3), Permutation([2, 1, 3])]
    fam = PermFamily(3, perms)
    assert len(fam) == 2
    assert [p.image for p in fam] == [(1, 2, 3), (2, 1, 3)]
    assert identity(3) in fam
    assert Permutation([3, 2, 1]) not in fam


def test_family_degree_mismatch():
    with pytest.raises(ValueError):
        PermFamily(3, [identity(4)])


def test_family_json_roundtrip():
    fam = stab({1, 2}, 4)
    data = fam.to_json_dict()
    assert data["n"] == 4
    assert PermFamily.from_json_dict(data) == fam


def test_family_from_images_accepts_cycle_strings():
    fam = PermFamily.from_images(4, [[1, 2, 3, 4], "(1 2)(3 4)"])
    assert Permutation([2, 1, 4, 3]) in fam


def test_family_json_errors_carry_location():
    with pytest.raises(ValueError, match=r"perms\[1\]"):
        PermFamily.from_images(3, [[1, 2, 3], [1, 1, 2]])
    with pytest.raises(ValueError, match="perms"):
        PermFamily.from_json_dict({"n": 3})


def test_graph_small_examples():
    g = build_intersection_graph(3, 1)
    assert g.size == 6
    assert g.degree(rank(identity(3))) == 3
    g42 = build_intersection_graph(4, 2)
    assert g42.degree(rank(identity(4))) == math.comb(4, 2)


def test_graph_matches_pair_predicate():
    for t in (1, 2):
        g = build_intersection_graph(3, t)
        perms = g.perms
        for u in range(g.size):
            for v in range(g.size):
                expected = (u != v and
                            is_t_cycle_intersecting_pair(perms[u], perms[v], t))
                assert g.has_edge(u, v) == expected


def test_graph_is_irreflexive_and_symmetric():
    g = build_intersection_graph(4, 1)
    for v in range(g.size):
        assert not g.has_edge(v, v)
    for u in range(g.size):
        for v in range(u + 1, g.size):
            assert g.has_edge(u, v) == g.has_edge(v, u)


def test_graph_cap_refused():
    with pytest.raises(ValueError, match="cap"):
        build_intersection_graph(8, 1)
    with pytest.raises(ValueError, match="cap"):
        build_intersection_graph(4, 1, cap=3)


def test_graph_cap_env_override(monkeypatch):
    monkeypatch.setenv(config.ENUMERATION_CAP_ENV, "3")
    with pytest.raises(ValueError, match="cap"):
        build_intersection_graph(4, 1)
    monkeypatch.setenv(config.ENUMERATION_CAP_ENV, "4")
    assert build_intersection_graph(4, 1).size == 24


def test_dimacs_export():
    g = build_intersection_graph(3, 1)
    lines = list(g.dimacs_lines())
    assert lines[0] == "p edge 6 3"
    assert len(lines) == 1 + 3
    for line in lines[1:]:
        _, u, v = line.split()
        assert g.has_edge(int(u), int(v))


def test_conjugation_is_graph_automorphism_exhaustive_n4():
    perms = list(all_permutations(4))
    pairs = list(itertools.combinations(perms, 2))
    for g in perms:
        for s, p in pairs:
            before = len(common_cycles(s, p))
            after = len(common_cycles(conjugate(s, g), conjugate(p, g)))
            assert before == after


def test_conjugation_is_graph_automorphism_random_n5():
    rng = random.Random(5)
    perms = list(all_permutations(5))
    for _ in range(300):
        g, s, p = (rng.choice(perms) for _ in range(3))
        assert (is_t_cycle_intersecting_pair(s, p, 2)
                == is_t_cycle_intersecting_pair(conjugate(s, g), conjugate(p, g), 2))


@pytest.mark.parametrize("n", range(2, 6))
def test_cycle_intersection_implies_pointwise_intersection(n):
    # shared cycles are pointwise agreements, so t common cycles force
    # agreement on at least t points
    perms = list(all_permutations(n))
    for s, p in itertools.combinations(perms, 2):
        assert pointwise_agreements(s, p) >= len(common_cycles(s, p))


def test_is_maximal_examples():
    assert is_maximal(stab({1, 2}, 5), 2)
    assert not is_maximal(PermFamily(5, [identity(5)]), 2)


def test_is_maximal_rejects_non_intersecting_family():
    whole = PermFamily(3, all_permutations(3))
    with pytest.raises(ValueError):
        is_maximal(whole, 1)
    with pytest.raises(ValueError):
        maximalize(whole, 1)


def test_maximalize_examples():
    fam = maximalize(PermFamily(5, [identity(5)]), 2)
    assert identity(5) in fam
    assert is_family_t_cycle_intersecting(fam, 2)
    assert is_maximal(fam, 2)
    # deterministic: same input, same output
    assert fam == maximalize(PermFamily(5, [identity(5)]), 2)


def test_maximalize_fixpoint_on_maximal_family():
    fam = stab({1, 2}, 5)
    assert maximalize(fam, 2) == fam


def test_stabilizer_recognition():
    assert is_stabilizer_of_points(stab({2, 4}, 5), 2)
    assert stabilized_points(stab({2, 4}, 5)) == (2, 4)
    assert not is_stabilizer_of_points(PermFamily(5, [identity(5)]), 2)
    assert not is_stabilizer_of_points(PermFamily(5), 2)
