import itertools
from fractions import Fraction

import numpy as np
import pytest

from paratwist import linalg
from paratwist.cones import build_chamber_complex, nef_cone
from paratwist.errors import InvariantViolation
from paratwist.normalizer import (
    action_matrix,
    chamber_permutation,
    chamber_permutations,
    equivariance_failures,
    fundamental_domain_check,
    integer_action,
    known_birational,
    quotient_reps,
    transform_cone,
    verify_count,
)
from paratwist.parabolics import apply_weyl, enumerate_S, levi_roots, parabolic_for_diagram
from paratwist.rootsys import build_root_system
from paratwist.verify import instances


def setup(family, rank, marked):
    rs = build_root_system(family, rank)
    p0 = parabolic_for_diagram(rs, marked)
    S = enumerate_S(rs, p0.levi_I, p0)
    return rs, p0, S, build_chamber_complex(S)


def brute_force_quotient_order(rs, levi_I):
    """|N_W(L0)/W(L0)| from the full Weyl group: distinct actions on M(L0)."""
    levi = levi_roots(rs, frozenset(levi_I))
    marked = [v for v in range(1, rs.rank + 1) if v not in levi_I]
    actions = set()
    for w in rs.weyl_group_elements():
        if {w(r) for r in levi} == levi:
            actions.add(action_matrix(rs, marked, w))
    return len(actions)


def test_quotient_reps_examples():
    rs, p0, S, _ = setup("D", 4, {3, 4})
    reps = quotient_reps(rs, p0.levi_I)
    assert len(reps) == 2 and reps[0].is_identity()
    assert reps[1].action_on_M == ((-1, 0), (0, -1))
    rs, p0, _, _ = setup("A", 2, {1, 2})
    assert len(quotient_reps(rs, p0.levi_I)) == 6
    rs, p0, _, _ = setup("A", 3, {1, 3})
    assert len(quotient_reps(rs, p0.levi_I)) == 2


@pytest.mark.parametrize("family,rank,levi", [
    ("A", 2, set()), ("A", 3, {2}), ("A", 3, {1}), ("B", 3, {1}), ("B", 3, {3}), ("C", 3, {2}),
    ("G", 2, {1}), ("D", 4, {1, 2}), ("D", 4, {2}), ("A", 4, {1, 4}), ("B", 4, {1, 2, 3}),
])
def test_quotient_order_matches_full_weyl_group(family, rank, levi):
    rs = build_root_system(family, rank)
    assert len(quotient_reps(rs, levi)) == brute_force_quotient_order(rs, levi)


def test_verify_count_examples():
    assert verify_count(build_root_system("D", 4), {1, 2}) == (6, 3, 2, True)
    assert verify_count(build_root_system("A", 2), set()) == (6, 1, 6, True)
    assert verify_count(build_root_system("B", 4), {1, 2, 3}) == (2, 1, 2, True)
    # three lines through the origin of a plane: six chambers, see the ledger
    assert verify_count(build_root_system("A", 3), {2}) == (6, 3, 2, True)


def test_reps_form_a_group():
    for family, rank, marked in [("A", 2, {1, 2}), ("A", 3, {1, 2, 3}), ("B", 3, {1, 3}), ("D", 4, {1, 3, 4})]:
        rs, p0, S, _ = setup(family, rank, marked)
        mats = {r.action_on_M for r in quotient_reps(rs, p0.levi_I, S)}
        for a, b in itertools.product(mats, repeat=2):
            product = tuple(tuple(row) for row in linalg.mat_mul(a, b))
            assert product in mats


def test_reps_normalize_levi_and_are_unimodular():
    for family, rank, marked in instances(3):
        rs, p0, S, _ = setup(family, rank, marked)
        levi = levi_roots(rs, p0.levi_I)
        for rep in quotient_reps(rs, p0.levi_I, S):
            assert {rep.element(r) for r in levi} == levi
            assert abs(round(np.linalg.det(integer_action(rep)))) == 1
            assert rep.act([1] * len(p0.marked)) == tuple(linalg.mat_vec(rep.action_on_M, [1] * len(p0.marked)))


def test_chamber_permutation_matches_apply_weyl():
    for family, rank, marked in [("D", 4, {3, 4}), ("A", 3, {1, 2, 3}), ("B", 3, {2, 3}), ("G", 2, {1, 2})]:
        rs, p0, S, cx = setup(family, rank, marked)
        reps = quotient_reps(rs, p0.levi_I, S)
        perms = chamber_permutations(cx, reps)
        for rep, perm in zip(reps, perms):
            assert sorted(perm.tolist()) == list(range(len(S)))
            assert perm.tolist() == [cx.index[apply_weyl(rep.element, p)] for p in S]
            assert chamber_permutation(cx, rep) == perm.tolist()


def test_equivariance_matches_exact_transform():
    rs, p0, S, cx = setup("B", 3, {1, 2, 3})
    reps = quotient_reps(rs, p0.levi_I, S)
    assert equivariance_failures(cx, reps) == []
    for rep in reps[:8]:
        for p in S:
            assert transform_cone(rep, nef_cone(p)).normal_set() == nef_cone(apply_weyl(rep.element, p)).normal_set()


def test_equivariance_detects_a_wrong_action():
    rs, p0, S, cx = setup("A", 3, {1, 3})
    reps = quotient_reps(rs, p0.levi_I, S)
    # pair the nontrivial chamber permutation with the identity action
    fake = [type(reps[1])(reps[1].element, reps[0].action_on_M)]
    assert equivariance_failures(cx, fake) != []


def test_integer_action_rejects_fractions():
    rs, p0, S, _ = setup("A", 2, {1, 2})
    rep = quotient_reps(rs, p0.levi_I, S)[0]
    bad = type(rep)(rep.element, ((Fraction(1, 2), 0), (0, 1)))
    with pytest.raises(InvariantViolation):
        integer_action(bad)


def test_fundamental_domain_examples():
    rs = build_root_system("A", 3)
    report = fundamental_domain_check(rs, {2}, birational=known_birational("A", 3, {1, 3}))
    assert report.birational is True and report.covers and report.disjoint and report.as_expected
    assert report.s1 == (0, 1, 2)
    rs = build_root_system("D", 4)
    report = fundamental_domain_check(rs, {1, 2}, birational=known_birational("D", 4, {3, 4}))
    assert report.birational is False and report.covers and not report.disjoint
    assert [ok for rep, ok in report.per_rep if not rep.is_identity()] == [False]
    assert report.as_expected
    rs = build_root_system("A", 2)
    report = fundamental_domain_check(rs, set(), birational=True)
    assert report.s1 == (0,) and report.covers and report.disjoint
    assert len(report.per_rep) == 6


def test_fundamental_domain_type_a_sweep():
    for family, rank, marked in instances(4, families=("A",)):
        rs = build_root_system(family, rank)
        levi = set(range(1, rank + 1)) - set(marked)
        report = fundamental_domain_check(rs, levi, birational=known_birational(family, rank, marked))
        assert report.as_expected, (rank, sorted(marked))


def test_known_birational_table():
    assert known_birational("A", 5, {2}) is True
    assert known_birational("D", 4, {3, 4}) is False
    assert known_birational("B", 4, {4}) is None
