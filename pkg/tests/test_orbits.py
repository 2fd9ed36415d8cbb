import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paratwist.errors import ConfigurationError, InvariantViolation
from paratwist.orbits import (
    CLASSICAL,
    FlagType,
    JordanType,
    codim2_neighbor,
    codim2_neighbors,
    collapse,
    dominates,
    flag_type_of,
    is_valid,
    orbit_dimension,
    partitions,
    richardson_jordan_type,
    transpose,
)
from paratwist.parabolics import enumerate_S, parabolic_for_diagram
from paratwist.rootsys import build_root_system
from paratwist.verify import instances


def flag(family, rank, marked):
    return flag_type_of(parabolic_for_diagram(build_root_system(family, rank), marked))


def brute_force_collapse(family, lam):
    """The maximum, in dominance order, of the valid partitions below lam."""
    below = [mu for mu in partitions(sum(lam)) if is_valid(family, mu) and dominates(lam, mu)]
    tops = [mu for mu in below if all(dominates(mu, nu) for nu in below)]
    assert len(tops) == 1
    return tops[0]


def nilpotent_centralizer_dim(parts):
    """dim of {y : xy = yx} for x in Jordan form, by numerical rank of ad x."""
    m = sum(parts)
    x = np.zeros((m, m))
    i = 0
    for p in parts:
        for j in range(p - 1):
            x[i + j, i + j + 1] = 1
        i += p
    eye = np.eye(m)
    ad = np.kron(x, eye) - np.kron(eye, x.T)
    return m * m - np.linalg.matrix_rank(ad)


def test_flag_type_examples():
    assert flag("B", 4, {4}).composition == (4, 1, 4)
    assert flag("C", 4, {1}).composition == (1, 6, 1)
    assert flag("A", 3, {1}).composition == (1, 3)
    assert flag("A", 5, {2, 4}).composition == (2, 2, 2)
    assert flag("C", 3, {3}).composition == (3, 3)
    # D: one fork tip is a maximal isotropic space, both tips give dimension n - 1
    assert flag("D", 4, {4}).composition == (4, 4)
    assert flag("D", 4, {3, 4}).composition == (3, 2, 3)
    assert flag("D", 5, {2, 5}).composition == (2, 3, 3, 2)
    with pytest.raises(ConfigurationError):
        flag("E", 6, {1})


def test_flag_type_validation():
    with pytest.raises(ConfigurationError):
        FlagType((1, 2), True)
    with pytest.raises(ConfigurationError):
        FlagType((0, 2), False)


def test_richardson_examples():
    assert richardson_jordan_type("B", FlagType((4, 1, 4), True)).parts == (3, 2, 2, 1, 1)
    assert richardson_jordan_type("C", FlagType((1, 6, 1), True)).parts == (2, 2, 1, 1, 1, 1)
    assert richardson_jordan_type("A", FlagType((1, 3), False)).parts == (2, 1, 1)
    with pytest.raises(ConfigurationError):
        richardson_jordan_type("E", FlagType((1, 3), False))


def test_orbit_dimension_examples():
    assert orbit_dimension("A", (2, 1, 1)) == 6
    assert len(parabolic_for_diagram(build_root_system("A", 3), {1}).nilradical) == 3
    # B4 marked {4}: both sides give 20, see the ledger
    assert orbit_dimension("B", (3, 2, 2, 1, 1)) == 20
    assert 2 * len(parabolic_for_diagram(build_root_system("B", 4), {4}).nilradical) == 20
    assert orbit_dimension("A", (1,) * 5) == 0
    with pytest.raises(ConfigurationError):
        orbit_dimension("C", (2, 1))


def test_regular_and_subregular_dimensions():
    # regular orbit: dim g - rank; subregular: two less
    for family, rank in [("A", 4), ("B", 3), ("C", 3), ("D", 4), ("B", 4)]:
        rs = build_root_system(family, rank)
        dim_g = len(rs.all_roots) + rank
        regular = richardson_jordan_type(family, flag(family, rank, range(1, rank + 1)))
        assert orbit_dimension(family, regular) == dim_g - rank
        below = codim2_neighbors(family, regular)
        assert len(below) == 1


def test_gl_dimension_matches_centralizer():
    for m in range(1, 8):
        for lam in partitions(m):
            assert orbit_dimension("A", lam) == m * m - nilpotent_centralizer_dim(lam)


def test_collapse_matches_brute_force():
    for family, sizes in (("B", range(1, 14, 2)), ("D", range(2, 14, 2)), ("C", range(2, 14, 2))):
        for m in sizes:
            for lam in partitions(m):
                got = collapse(family, lam)
                assert got == brute_force_collapse(family, lam)
                assert is_valid(family, got) and sum(got) == m
                assert collapse(family, got) == got


def test_collapse_closed_forms():
    for n in range(2, 13):
        for k in range(1, n + 1):
            if k % 2 == 0 and 3 * k > 2 * n + 1:
                assert collapse("B", transpose((k, 2 * n - 2 * k + 1, k))) == \
                    (3,) * (2 * n - 2 * k + 1) + (2,) * (3 * k - 2 * n - 2) + (1, 1)
            if n >= 3 and k % 2 == 1 and 3 * k <= 2 * n:
                assert collapse("C", transpose((k, 2 * n - 2 * k, k))) == \
                    (3,) * (k - 1) + (2, 2) + (1,) * (2 * n - 3 * k - 1)


def test_codim2_examples():
    # B at k = (2n + 2)/3, D at k = (2n + 1)/3, C at k = (2n - 1)/3
    assert codim2_neighbor("B", (3, 3, 3, 1, 1)) == (3, 3, 2, 2, 1)
    assert codim2_neighbor("D", (3, 3, 1, 1)) == (3, 2, 2, 1)
    assert codim2_neighbor("C", (3, 3, 2, 2)) == (3, 3, 2, 1, 1)
    assert codim2_neighbor("A", (1, 1, 1)) is None
    assert codim2_neighbor("B", (1,) * 7) is None


def test_codim2_ambiguity_raises():
    assert sorted(codim2_neighbors("A", (4, 2))) == [(3, 3), (4, 1, 1)]
    with pytest.raises(InvariantViolation):
        codim2_neighbor("A", (4, 2))


def test_jordan_type_validation():
    assert JordanType((2, 2), "D", 4).very_even
    assert not JordanType((3, 1), "D", 4).very_even
    assert str(JordanType((3, 2, 2, 1, 1), "B", 9)) == "3,2,2,1,1"
    with pytest.raises(ConfigurationError):
        JordanType((2, 1), "B", 3)
    with pytest.raises(ConfigurationError):
        JordanType((1, 2), "A", 3)
    with pytest.raises(ConfigurationError):
        JordanType((2, 1), "A", 4)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=8))
def test_transpose_involution_and_dominance(parts):
    lam = tuple(sorted(parts, reverse=True))
    assert transpose(transpose(lam)) == lam
    assert sum(transpose(lam)) == sum(lam)
    # transpose reverses dominance
    mu = collapse("C", lam) if sum(lam) % 2 == 0 else collapse("B", lam)
    assert dominates(lam, mu)
    assert dominates(transpose(mu), transpose(lam))


def test_dominance_is_downward_closed():
    for m in range(1, 9):
        ps = list(partitions(m))
        for lam in ps:
            below = {mu for mu in ps if dominates(lam, mu)}
            for mu in below:
                assert {nu for nu in ps if dominates(mu, nu)} <= below


def test_partitions_counts():
    assert [len(list(partitions(m))) for m in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_richardson_dimension_identity_rank_le_6():
    for family, rank, marked in instances(6, families=CLASSICAL):
        p0 = parabolic_for_diagram(build_root_system(family, rank), marked)
        lam = richardson_jordan_type(family, flag_type_of(p0))
        assert orbit_dimension(family, lam) == 2 * len(p0.nilradical), (family, rank, sorted(marked))


def test_richardson_type_constant_on_S():
    for family, rank, marked in [("D", 4, {3, 4}), ("B", 3, {1, 3}), ("C", 3, {2})]:
        rs = build_root_system(family, rank)
        p0 = parabolic_for_diagram(rs, marked)
        types = {richardson_jordan_type(family, flag_type_of(p)).parts for p in enumerate_S(rs, p0.levi_I, p0)}
        assert len(types) == 1
