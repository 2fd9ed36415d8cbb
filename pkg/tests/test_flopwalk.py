import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paratwist import flopwalk
from paratwist.cones import build_chamber_complex, embed, locate, nef_cone
from paratwist.diagrams import TwistKind
from paratwist.errors import ConfigurationError, InvariantViolation
from paratwist.flopwalk import (
    WalkTrace,
    central_fiber_summary,
    crossed_hyperplanes,
    defect,
    locate_agrees,
    movable_walk_property,
    random_interior_point,
    walk,
    walk_many,
)
from paratwist.parabolics import enumerate_S, opposite, parabolic_for_diagram
from paratwist.rootsys import CharacterVector, build_root_system
from paratwist.verify import instances, random_interior_points

CASES = [("D", 4, frozenset({3, 4})), ("B", 3, frozenset({1, 2, 3})), ("A", 3, frozenset({1, 3})),
         ("G", 2, frozenset({1, 2})), ("C", 3, frozenset({1, 3})), ("B", 4, frozenset({2, 4}))]


def setup(family, rank, marked):
    rs = build_root_system(family, rank)
    p0 = parabolic_for_diagram(rs, marked)
    return p0, build_chamber_complex(enumerate_S(rs, p0.levi_I, p0))


def character(p0, coords):
    return embed(coords, p0.marked, p0.system.rank)


def test_dominant_character_gives_empty_trace():
    p0, _ = setup("D", 4, {3, 4})
    trace = walk(p0, character(p0, [1, 2]))
    assert trace.steps == [] and trace.final == p0
    summary = central_fiber_summary(trace)
    assert summary.all_flops and summary.stays_in_movable


def test_d4_walk_to_antipode():
    p0, cx = setup("D", 4, {3, 4})
    trace = walk(p0, character(p0, [-2, -1]))
    assert len(trace.steps) == 3
    assert trace.final == opposite(p0)
    assert all(s.kind is TwistKind.FIRST for s in trace.steps)
    assert all(s.flop.label.startswith("A(") for s in trace.steps)
    assert central_fiber_summary(trace).stays_in_movable
    assert locate_agrees(cx, trace)


def test_b4_single_small_step():
    p0, _ = setup("B", 4, {4})
    trace = walk(p0, character(p0, [-1]))
    (step,) = trace.steps
    assert step.kind is TwistKind.SMALL
    assert (step.flop.label, step.flop.canonical_alias) == ("B(4,4)", "Dfork(5)")


def test_b4_divisorial_step():
    p0, _ = setup("B", 4, {2})
    trace = walk(p0, character(p0, [-3]))
    (step,) = trace.steps
    assert step.kind is TwistKind.DIVISORIAL
    summary = central_fiber_summary(trace)
    assert summary.flops == [False] and not summary.stays_in_movable


def test_boundary_character_stops_on_the_wall():
    p0, cx = setup("D", 4, {3, 4})
    trace = walk(p0, character(p0, [0, 1]))
    assert trace.steps == []
    # from the far side the walk stops at the first chamber containing it
    start = cx.chambers[3][0]
    trace = walk(start, character(p0, [0, 1]))
    assert nef_cone(trace.final).contains((0, 1))
    assert trace.final != start


def test_empty_trace_summary():
    p0, _ = setup("A", 2, {1, 2})
    summary = central_fiber_summary(WalkTrace(p0, [], p0, character(p0, [1, 1])))
    assert summary.all_flops and summary.kinds == []


def test_walk_rejects_characters_outside_m():
    p0, _ = setup("D", 4, {3, 4})
    with pytest.raises(ConfigurationError):
        walk(p0, CharacterVector([1, 0, 1, 1]))


def test_revisit_guard(monkeypatch):
    p0, cx = setup("D", 4, {3, 4})
    # a broken twist that bounces between two chambers must trip the guard
    p1 = cx.chambers[1][0]
    monkeypatch.setattr(flopwalk, "twist", lambda p, v: p1 if p == p0 else p0)
    with pytest.raises(InvariantViolation):
        walk(p0, character(p0, [-2, -1]))


@pytest.mark.parametrize("family,rank,marked", CASES)
def test_walk_matches_locate_from_every_start(family, rank, marked):
    p0, cx = setup(family, rank, marked)
    rng = random.Random(11)
    for start, _ in cx.chambers[:12]:
        for _ in range(20):
            target = rng.randrange(len(cx.chambers))
            x = random_interior_point(cx.chambers[target][1], rng)
            trace = walk(start, character(p0, x))
            assert cx.index[trace.final] == target
            assert len(trace.steps) <= len(cx.chambers) - 1
            chambers = trace.chambers()
            assert len(set(chambers)) == len(chambers)
            assert locate(cx, x) == trace.final


@pytest.mark.parametrize("family,rank,marked", CASES)
def test_defect_strictly_decreases(family, rank, marked):
    p0, cx = setup(family, rank, marked)
    rng = np.random.default_rng(2)
    xs = rng.integers(-30, 31, size=(60, cx.dim))
    for x in xs.tolist():
        trace = walk(p0, character(p0, x))
        defects = [defect(p, x) for p in trace.chambers()]
        assert all(a > b for a, b in zip(defects, defects[1:]))
        assert nef_cone(trace.final).contains(x)


@pytest.mark.parametrize("family,rank,marked", CASES)
def test_reversal_crosses_the_same_walls(family, rank, marked):
    p0, cx = setup(family, rank, marked)
    rng = random.Random(4)
    for _ in range(30):
        target = cx.chambers[rng.randrange(len(cx.chambers))][1]
        forward = walk(p0, character(p0, random_interior_point(target, rng)))
        back = walk(forward.final, character(p0, random_interior_point(nef_cone(p0), rng)))
        assert back.final == p0
        assert crossed_hyperplanes(back) == crossed_hyperplanes(forward)


def test_walk_many_matches_scalar_walk():
    for family, rank, marked in instances(3):
        p0, cx = setup(family, rank, marked)
        rng = np.random.default_rng(9)
        which, pts = random_interior_points(cx, rng, 40)
        final, steps = walk_many(cx, 0, pts)
        assert (final == which).all()
        for x, f, n in zip(pts.tolist(), final, steps):
            trace = walk(p0, character(p0, x))
            assert cx.index[trace.final] == f and len(trace.steps) == n


def test_walk_many_from_another_start():
    p0, cx = setup("B", 3, {1, 2, 3})
    rng = np.random.default_rng(1)
    which, pts = random_interior_points(cx, rng, 500)
    final, _ = walk_many(cx, 17, pts)
    assert (final == which).all()


def test_movable_walk_examples():
    for family, marked in (("D", {3, 4}), ("B", {4}), ("B", {2})):
        p0 = parabolic_for_diagram(build_root_system(family, 4), marked)
        report = movable_walk_property(p0, samples=300, seed=1)
        assert report.passed
    p0 = parabolic_for_diagram(build_root_system("B", 4), {2})
    assert movable_walk_property(p0, samples=10).s_star == (0,)


def test_movable_walk_all_rank_3():
    for family, rank, marked in instances(3):
        p0 = parabolic_for_diagram(build_root_system(family, rank), marked)
        assert movable_walk_property(p0, samples=50, seed=2).passed


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CASES), st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7), min_size=3, max_size=3))
def test_final_cone_contains_character(case, coords):
    p0, cx = setup(*case)
    x = coords[:cx.dim]
    trace = walk(p0, character(p0, x))
    assert nef_cone(trace.final).contains(x)
