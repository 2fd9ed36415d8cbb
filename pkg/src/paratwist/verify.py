"""Per-instance consistency checks shared by the CLI and the test suite.

Each check returns a Check with a name, a pass flag and, on failure, a
small JSON-friendly witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .cones import build_chamber_complex, locate_many, nef_cone
from .diagrams import all_markings, classify, MarkedDiagram, TwistKind
from .errors import InvariantViolation
from .flopwalk import movable_walk_property, walk, walk_many
from .cones import embed
from .normalizer import equivariance_failures, quotient_reps
from .orbits import (
    CLASSICAL,
    codim2_neighbor,
    collapse,
    flag_type_of,
    orbit_dimension,
    richardson_jordan_type,
    transpose,
)
from .parabolics import (
    chamber_oracle,
    conjugacy_classes,
    enumerate_S,
    opposite,
    parabolic_for_diagram,
)
from .rootsys import build_root_system, minus_w0_vertex_permutation, check_type

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass
class Check:
    name: str
    ok: bool
    witness: dict = field(default_factory=dict)


def instances(max_rank: int, min_rank: int = 1, families=FAMILIES) -> list[tuple[str, int, frozenset[int]]]:
    """Every (family, rank, marking) with a valid type and min_rank <= rank <= max_rank."""
    out = []
    for f in families:
        for r in range(min_rank, max_rank + 1):
            try:
                check_type(f, r)
            except ValueError:
                continue
            out.extend((f, r, d.marked) for d in all_markings(f, r))
    return out


def random_rational_points(rng: np.random.Generator, n: int, dim: int, bound: int = 100) -> np.ndarray:
    """n random rational points with |numerator|, denominator <= bound, each
    rescaled by a positive integer to an integer point (same cone membership)."""
    num = rng.integers(-bound, bound + 1, size=(n, dim))
    den = rng.integers(1, bound + 1, size=(n, dim))
    out = np.empty((n, dim), dtype=np.int64)
    for i in range(n):
        m = lcm(*den[i].tolist())
        out[i] = num[i] * (m // den[i])
    return out


def random_interior_points(cx, rng: np.random.Generator, n: int, bound: int = 1000):
    """(chamber index, interior integer point) pairs: random positive ray combinations."""
    rays = np.array([c.rays for _, c in cx.chambers], dtype=np.int64)
    which = rng.integers(0, len(cx.chambers), size=n)
    weights = rng.integers(1, bound + 1, size=(n, cx.dim))
    pts = np.einsum("sk,skr->sr", weights, rays[which])
    return which, pts


def check_instance(family: str, rank: int, marked, samples: int = 200, seed: int = 0,
                   inject_fault: bool = False) -> list[Check]:
    rs = build_root_system(family, rank)
    p0 = parabolic_for_diagram(rs, marked)
    checks = []
    try:
        S = enumerate_S(rs, p0.levi_I, p0)
    except InvariantViolation as e:
        return [Check("oracle_equivalence", False, {"error": str(e)})]
    mine = {p.nilradical for p in S}
    oracle = chamber_oracle(rs, p0.levi_I)
    if inject_fault:
        oracle = set(list(sorted(oracle, key=sorted))[1:])
    checks.append(Check("oracle_equivalence", mine == oracle,
                        {} if mine == oracle else {"twist_closure": len(mine), "oracle": len(oracle)}))
    try:
        cx = build_chamber_complex(S)
    except InvariantViolation as e:
        checks.append(Check("chamber_complex", False, {"error": str(e)}))
        return checks
    checks.append(Check("chamber_complex", True))

    n_classes = len(conjugacy_classes(S))
    reps = quotient_reps(rs, p0.levi_I, S)
    ok = len(S) == n_classes * len(reps)
    checks.append(Check("count_identity", ok, {"S": len(S), "N": n_classes, "q": len(reps)}))

    bad = [i for i, p in enumerate(S)
           if opposite(p) not in cx.index or nef_cone(opposite(p)).normal_set() != nef_cone(p).negate().normal_set()]
    checks.append(Check("opposite_negation", not bad, {"chambers": bad[:5]}))

    bad = equivariance_failures(cx, reps)
    checks.append(Check("equivariance", not bad, {"pairs": bad[:5]}))

    rng = np.random.default_rng(seed)
    xs = random_rational_points(rng, samples, cx.dim)
    closed, open_, _ = locate_many(cx, xs)
    bad = np.nonzero((closed < 1) | (open_ > 1))[0]
    checks.append(Check("cover", len(bad) == 0, {"points": xs[bad[:3]].tolist()}))

    which, pts = random_interior_points(cx, rng, samples)
    final, steps = walk_many(cx, 0, pts)
    bad = np.nonzero((final != which) | (steps > len(S) - 1))[0]
    for i in range(min(samples, 20)):
        t = walk(p0, embed(pts[i].tolist(), p0.marked, rank))
        if cx.index[t.final] != final[i] or len(t.steps) != steps[i]:
            bad = np.append(bad, i)
    checks.append(Check("walk_locate", len(bad) == 0, {"points": pts[bad[:3]].tolist()}))

    report = movable_walk_property(p0, min(samples, 200), seed)
    checks.append(Check("movable_walk", report.passed,
                        {} if report.passed else {"chi": [str(c) for c in report.witness.coords]}))

    if family in CLASSICAL:
        bad = []
        for p in S:
            lam = richardson_jordan_type(family, flag_type_of(p))
            if orbit_dimension(family, lam) != 2 * len(p.nilradical):
                bad.append(str(lam))
        checks.append(Check("richardson_dimension", not bad, {"types": bad[:3]}))
    return checks


def check_jordan_vectors(max_n: int = 12) -> list[Check]:
    """Closed-form Jordan types and codimension-2 neighbors for the small families."""
    checks = []
    bad = []
    for n in range(2, max_n + 1):
        for k in range(1, n + 1):
            if k % 2 == 0 and 3 * k > 2 * n + 1:
                got = collapse("B", transpose((k, 2 * n - 2 * k + 1, k)))
                want = (3,) * (2 * n - 2 * k + 1) + (2,) * (3 * k - 2 * n - 2) + (1, 1)
                if got != want:
                    bad.append(("B", n, k))
            if n >= 3 and k % 2 == 1 and 3 * k <= 2 * n:
                got = collapse("C", transpose((k, 2 * n - 2 * k, k)))
                want = (3,) * (k - 1) + (2, 2) + (1,) * (2 * n - 3 * k - 1)
                if got != want:
                    bad.append(("C", n, k))
    checks.append(Check("jordan_closed_forms", not bad, {"cases": bad}))
    bad = []
    for n in range(2, max_n + 1):
        for fam, num in (("B", 2 * n + 2), ("D", 2 * n + 1), ("C", 2 * n - 1)):
            if num % 3 or (fam == "D" and n < 4) or (fam == "C" and n < 3):
                continue
            k = num // 3
            if fam == "C":
                lam, want = (3,) * (k - 1) + (2, 2), (3,) * (k - 1) + (2, 1, 1)
            else:
                if k < 2:
                    continue
                lam, want = (3,) * (k - 1) + (1, 1), (3,) * (k - 2) + (2, 2, 1)
            if codim2_neighbor(fam, lam) != want:
                bad.append((fam, n, k))
    checks.append(Check("codim2_neighbors", not bad, {"cases": bad}))
    return checks


def check_classification(max_rank: int = 8) -> Check:
    """First kind iff -w0 of the component moves the marked vertex."""
    bad = []
    for f, r, marked in instances(max_rank):
        if len(marked) != 1:
            continue
        (v,) = marked
        cls = classify(MarkedDiagram(f, r, marked))
        perm = minus_w0_vertex_permutation(build_root_system(f, r), range(1, r + 1))
        if (cls.kind is TwistKind.FIRST) != (perm[v] != v):
            bad.append((f, r, v))
    return Check("classification_vs_w0", not bad, {"cases": bad})


def catalog_row(family: str, rank: int, marked) -> dict:
    """One catalog row; cheap checks only (no sampling)."""
    rs = build_root_system(family, rank)
    p0 = parabolic_for_diagram(rs, marked)
    ok = True
    try:
        S = enumerate_S(rs, p0.levi_I, p0)
        cx = build_chamber_complex(S)
    except InvariantViolation:
        return {"family": family, "rank": rank, "marked": " ".join(map(str, sorted(marked))),
                "all_checks_passed": False}
    n_classes = len(conjugacy_classes(S))
    reps = quotient_reps(rs, p0.levi_I, S)
    ok &= len(S) == n_classes * len(reps)
    ok &= all(opposite(p) in cx.index for p in S)
    ok &= not equivariance_failures(cx, reps)
    counts = {k: 0 for k in TwistKind}
    for w in cx.undirected_walls():
        counts[w.kind] += 1
    jordan, dim = "", ""
    if family in CLASSICAL:
        lam = richardson_jordan_type(family, flag_type_of(p0))
        dim = orbit_dimension(family, lam)
        ok &= dim == 2 * len(p0.nilradical)
        jordan = str(lam)
    return {
        "family": family,
        "rank": rank,
        "marked": " ".join(map(str, sorted(marked))),
        "S": len(S),
        "N": n_classes,
        "q": len(reps),
        "walls_first": counts[TwistKind.FIRST],
        "walls_2s": counts[TwistKind.SMALL],
        "walls_2d": counts[TwistKind.DIVISORIAL],
        "jordan_type": jordan,
        "orbit_dim": dim,
        "all_checks_passed": bool(ok),
    }
