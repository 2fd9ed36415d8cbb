"""The quotient N_W(L0)/W(L0) through its faithful action on M(L0)_R.

Representatives are read off S(l0) itself: every p conjugate to the
standard p0 comes with the w of marked_diagram_of, and w(p0) = p forces
w to normalize Phi_I. Cosets are compared by their action matrices, since
W(L0) acts trivially on M(L0). The Weyl group is never enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .cones import ChamberComplex, PolyhedralCone, build_chamber_complex, movable_union, nef_cone
from .parabolics import (
    Parabolic,
    apply_weyl,
    conjugacy_classes,
    enumerate_S,
    levi_roots,
    marked_diagram_of,
    standard_parabolic,
)
from .errors import InvariantViolation
from .rootsys import CharacterVector, RootSystem, WeylElement

Matrix = tuple[tuple[Fraction, ...], ...]

# Springer maps known to be birational (True) or of degree 2 (False), by
# (family, rank, marked). Type A is always birational; everything else is
# curated case by case.
KNOWN_DEGREE_TWO = {("D", 4, frozenset({3, 4}))}


def known_birational(family: str, rank: int, marked) -> bool | None:
    key = (family, rank, frozenset(marked))
    if family == "A":
        return True
    if key in KNOWN_DEGREE_TWO:
        return False
    return None


@dataclass(frozen=True)
class CosetRep:
    element: WeylElement = field(compare=False)
    action_on_M: Matrix

    def act(self, x: Sequence) -> tuple:
        return tuple(linalg.mat_vec(self.action_on_M, x))

    def is_identity(self) -> bool:
        n = len(self.action_on_M)
        return all(self.action_on_M[i][j] == int(i == j) for i in range(n) for j in range(n))


def action_matrix(system: RootSystem, marked: Sequence[int], w: WeylElement) -> Matrix:
    """Matrix of chi -> w chi on M(L0) in marked fundamental-weight coordinates."""
    cols = []
    for u in marked:
        image = system.apply(w, CharacterVector.fundamental(system.rank, u))
        if any(image.coords[i] != 0 for i in range(system.rank) if i + 1 not in marked):
            raise InvariantViolation(f"{w} does not preserve M(L0)")
        cols.append([image.coords[v - 1] for v in marked])
    return tuple(tuple(Fraction(x) for x in row) for row in linalg.transpose(cols))


def _normalizes(system: RootSystem, levi_I: frozenset[int], w: WeylElement) -> bool:
    levi = levi_roots(system, levi_I)
    return {w(r) for r in levi} == levi


def quotient_reps(system: RootSystem, levi_I, S: Sequence[Parabolic] | None = None) -> list[CosetRep]:
    """One representative per element of N_W(L0)/W(L0), identity first."""
    levi_I = frozenset(levi_I)
    p0 = standard_parabolic(system, levi_I)
    if S is None:
        S = enumerate_S(system, levi_I, p0)
    d0 = marked_diagram_of(p0)[0]
    marked = p0.marked
    reps: dict[Matrix, CosetRep] = {}
    for p in S:
        d, w = marked_diagram_of(p)
        if d != d0:
            continue
        if not _normalizes(system, levi_I, w):
            raise InvariantViolation(f"conjugating element of {p} does not normalize Phi_I")
        m = action_matrix(system, marked, w)
        reps.setdefault(m, CosetRep(w, m))
    return sorted(reps.values(), key=lambda r: (not r.is_identity(), r.action_on_M))


def verify_count(system: RootSystem, levi_I) -> tuple[int, int, int, bool]:
    """(|S|, number of conjugacy classes N, quotient order q, |S| == N q)."""
    S = enumerate_S(system, levi_I)
    n_classes = len(conjugacy_classes(S))
    q = len(quotient_reps(system, levi_I, S))
    return len(S), n_classes, q, len(S) == n_classes * q


def transform_cone(rep: CosetRep, cone: PolyhedralCone) -> PolyhedralCone:
    return cone.transform(rep.action_on_M)


def integer_action(rep: CosetRep) -> np.ndarray:
    """The action matrix as integers; the weight lattice M(L0) is preserved."""
    if any(x.denominator != 1 for row in rep.action_on_M for x in row):
        raise InvariantViolation("quotient element does not preserve the lattice M(L0)")
    return np.array([[int(x) for x in row] for row in rep.action_on_M], dtype=np.int64)


def _sign_matrix(cx: ChamberComplex) -> tuple[list, np.ndarray]:
    """Positive non-Levi roots and, per chamber, +1/-1 for beta in N or -beta in N."""
    levi = levi_roots(cx.system, cx.levi_I)
    roots = [r for r in cx.system.positive_roots if r not in levi]
    signs = np.array(
        [[1 if r in p.nilradical else -1 for r in roots] for p, _ in cx.chambers], dtype=np.int8
    )
    return roots, signs


def chamber_permutations(cx: ChamberComplex, reps: Sequence[CosetRep]) -> np.ndarray:
    """perm[k, i] = index of apply_weyl(w_k, p_i), for all reps at once.

    w permutes the non-Levi roots up to sign, so it permutes the columns of
    the chamber sign matrix, flipping those sent to negative roots.
    """
    roots, signs = _sign_matrix(cx)
    position = {r: j for j, r in enumerate(roots)}
    lookup = {row.tobytes(): i for i, row in enumerate(signs)}
    out = np.empty((len(reps), len(cx.chambers)), dtype=np.int64)
    for k, rep in enumerate(reps):
        target = np.empty(len(roots), dtype=np.int64)
        flip = np.empty(len(roots), dtype=np.int8)
        for j, r in enumerate(roots):
            image = rep.element(r)
            if image in position:
                target[j], flip[j] = position[image], 1
            else:
                target[j], flip[j] = position[tuple(-c for c in image)], -1
        moved = np.empty_like(signs)
        moved[:, target] = signs * flip
        try:
            out[k] = [lookup[row.tobytes()] for row in moved]
        except KeyError:
            raise InvariantViolation("a quotient element maps a chamber outside S(l0)") from None
        if len(set(out[k].tolist())) != len(cx.chambers):
            raise InvariantViolation("a quotient element does not permute the chambers")
    return out


def chamber_permutation(cx: ChamberComplex, rep: CosetRep) -> list[int]:
    """Index of apply_weyl(w, p) for every chamber p."""
    return chamber_permutations(cx, [rep])[0].tolist()


def _row_codes(normals: np.ndarray, bound: int) -> np.ndarray:
    """Sorted integer codes of the rows of each cone: equal iff equal normal sets
    (entries must lie in [-bound, bound])."""
    base = 2 * bound + 1
    weights = base ** np.arange(normals.shape[-1], dtype=np.int64)
    return np.sort(((normals + bound) * weights).sum(axis=-1), axis=-1)


def equivariance_failures(cx: ChamberComplex, reps: Sequence[CosetRep]) -> list[tuple[int, int]]:
    """(rep index, chamber index) pairs where w(nef(p)) != nef(w p) as normal sets.

    A normal n of the cone transforms as n -> n A^-1 under chi -> A chi.
    """
    normals = cx.normal_array()
    perms = chamber_permutations(cx, reps)
    bad = []
    for k, rep in enumerate(reps):
        inv = linalg.inverse(integer_action(rep).tolist())
        if any(x.denominator != 1 for row in inv for x in row):
            raise InvariantViolation("quotient element is not unimodular on M(L0)")
        image = normals @ np.array([[int(x) for x in row] for row in inv], dtype=np.int64)
        bound = int(max(np.abs(image).max(), np.abs(normals).max()))
        ok = (_row_codes(image, bound) == _row_codes(normals, bound)[perms[k]]).all(axis=1)
        bad.extend((k, int(i)) for i in np.nonzero(~ok)[0])
    return bad


@dataclass
class FundamentalDomainReport:
    birational: bool | None
    s1: tuple[int, ...]
    covers: bool  # every chamber has a translate in S^1
    uncovered: list[int]
    per_rep: list[tuple[CosetRep, bool]]  # (rep, image of S^1 disjoint from S^1)

    @property
    def disjoint(self) -> bool:
        return all(ok for rep, ok in self.per_rep if not rep.is_identity())

    @property
    def as_expected(self) -> bool:
        """Both properties hold when birational; the second fails otherwise."""
        if self.birational is False:
            return self.covers and not self.disjoint
        return self.covers and self.disjoint


def fundamental_domain_check(
    system: RootSystem, levi_I, p0: Parabolic | None = None, birational: bool | None = None
) -> FundamentalDomainReport:
    """Check that the S^1 chambers form a fundamental domain for the quotient.

    Covering: every chamber is moved into S^1 by some representative.
    Disjointness: for each nontrivial representative the image of the S^1
    chambers shares no chamber with S^1, which is the same as the open
    image missing the closed union.
    """
    levi_I = frozenset(levi_I)
    if p0 is None:
        p0 = standard_parabolic(system, levi_I)
    S = enumerate_S(system, levi_I, p0)
    cx = build_chamber_complex(S)
    reps = quotient_reps(system, levi_I, S)
    s1 = movable_union(cx, "S1", p0).members
    s1_set = set(s1)
    perms = chamber_permutations(cx, reps).tolist()
    uncovered = [i for i in range(len(S)) if not any(perm[i] in s1_set for perm in perms)]
    per_rep = [(rep, not ({perm[i] for i in s1} & s1_set)) for rep, perm in zip(reps, perms)]
    return FundamentalDomainReport(birational, s1, not uncovered, uncovered, per_rep)
