"""Walking through the chamber complex towards a character.

Starting from a parabolic p and a character chi, repeatedly twist at the
smallest facet label whose inequality chi violates, until chi is nef.
Every crossing flips the roots of N inside one Levi component, and all of
them pair negatively with chi, so the number of negative pairings drops
strictly and no chamber can repeat.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .arrangement import canonical_normal
from .cones import (
    ChamberComplex,
    build_chamber_complex,
    embed,
    locate,
    movable_union,
    nef_cone,
    restrict,
    root_normal,
)
from .diagrams import FlopLabel, TwistKind, flop_label, twist_class
from .errors import InvariantViolation
from .parabolics import Parabolic, enumerate_S, marked_diagram_of, twist
from .rootsys import CharacterVector


@dataclass(frozen=True)
class TwistRecord:
    source: Parabolic
    target: Parabolic
    vertex: int
    kind: TwistKind
    flop: FlopLabel


@dataclass
class WalkTrace:
    start: Parabolic
    steps: list[TwistRecord]
    final: Parabolic
    character: CharacterVector

    def chambers(self) -> list[Parabolic]:
        return [self.start] + [s.target for s in self.steps]


def _as_integer_point(x: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational point to integers (cone membership is unchanged)."""
    fr = [Fraction(c) for c in x]
    den = lcm(*(c.denominator for c in fr)) if fr else 1
    return tuple(int(c * den) for c in fr)


def defect(p: Parabolic, x: Sequence) -> int:
    """Number of roots of N pairing negatively with the character."""
    return sum(
        1 for b in p.nilradical if sum(a * c for a, c in zip(root_normal(p.system, p.marked, b), x)) < 0
    )


def walk(p_start: Parabolic, chi: CharacterVector, max_steps: int | None = None) -> WalkTrace:
    x = _as_integer_point(restrict(chi, p_start.marked))
    p = p_start
    seen = {p}
    steps = []
    while True:
        cone = nef_cone(p)
        violated = [v for v, val in zip(cone.labels, cone.values(x)) if val < 0]
        if not violated:
            return WalkTrace(p_start, steps, p, chi)
        v = violated[0]
        q = twist(p, v)
        if q in seen:
            raise InvariantViolation(f"walk revisits a chamber after twisting at {v}")
        cls = twist_class(marked_diagram_of(p)[0], v)
        steps.append(TwistRecord(p, q, v, cls.kind, flop_label(cls)))
        seen.add(q)
        p = q
        if max_steps is not None and len(steps) > max_steps:
            raise InvariantViolation(f"walk exceeded {max_steps} steps")


def walk_many(cx: ChamberComplex, start: int, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """The same walk for many integer characters at once, on chamber indices.

    Returns (final chamber index, number of steps) per row of xs. Raises
    on a revisited chamber, like the scalar walk.
    """
    normals = cx.normal_array()
    nbr = cx.neighbor_array()
    n = len(xs)
    cur = np.full(n, start, dtype=np.int64)
    steps = np.zeros(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    limit = len(cx.chambers)
    visited = np.zeros((n, limit), dtype=bool)
    visited[:, start] = True
    for _ in range(limit + 1):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        vals = np.einsum("sfr,sr->sf", normals[cur[idx]], xs[idx])
        neg = vals < 0
        done = ~neg.any(axis=1)
        active[idx[done]] = False
        move = idx[~done]
        # labels are sorted within a cone, so the first violated facet has the smallest label
        first = neg[~done].argmax(axis=1)
        cur[move] = nbr[cur[move], first]
        if visited[move, cur[move]].any():
            raise InvariantViolation("walk revisits a chamber")
        visited[move, cur[move]] = True
        steps[move] += 1
    if active.any():
        raise InvariantViolation("walk did not terminate within |S| steps")
    return cur, steps


@dataclass
class CentralFiberSummary:
    flops: list[bool]
    kinds: list[TwistKind]
    labels: list[str]

    @property
    def all_flops(self) -> bool:
        return all(self.flops)

    @property
    def stays_in_movable(self) -> bool:
        """Every crossing is a Mukai flop, so the walk stays in the S* set of its start."""
        return self.all_flops


def central_fiber_summary(trace: WalkTrace) -> CentralFiberSummary:
    return CentralFiberSummary(
        [s.kind.is_flop for s in trace.steps],
        [s.kind for s in trace.steps],
        [str(s.flop) for s in trace.steps],
    )


def random_interior_point(cone, rng: random.Random, bound: int = 1000) -> tuple[int, ...]:
    """A strictly positive random combination of the rays of a simplicial cone."""
    return cone.interior_point([rng.randint(1, bound) for _ in cone.rays])


@dataclass
class MovableWalkReport:
    samples: int
    passed: bool
    witness: CharacterVector | None = None
    s_star: tuple[int, ...] = field(default_factory=tuple)


def movable_walk_property(p0: Parabolic, samples: int = 1000, seed: int = 0) -> MovableWalkReport:
    """Walks from p0 to characters inside the S* union cross only flop walls."""
    S = enumerate_S(p0.system, p0.levi_I, p0)
    cx = build_chamber_complex(S)
    union = movable_union(cx, "Sstar", p0)
    rng = random.Random(seed)
    for _ in range(samples):
        i = rng.choice(union.members)
        x = random_interior_point(cx.chambers[i][1], rng)
        chi = embed(x, p0.marked, p0.system.rank)
        trace = walk(p0, chi)
        if not central_fiber_summary(trace).all_flops:
            return MovableWalkReport(samples, False, chi, union.members)
    return MovableWalkReport(samples, True, None, union.members)


def crossed_hyperplanes(trace: WalkTrace) -> frozenset[tuple[int, ...]]:
    """Hyperplanes (primitive normals up to sign) crossed by a walk."""
    out = set()
    for s in trace.steps:
        out.add(canonical_normal(nef_cone(s.source).facet(s.vertex)))
    return frozenset(out)


def locate_agrees(cx: ChamberComplex, trace: WalkTrace) -> bool:
    return locate(cx, trace.character) == trace.final
