"""Nef cones in the character space M(L0)_R and the chamber complex they form.

Characters are written in fundamental-weight coordinates of the vertices
outside the fixed Levi set I (``Parabolic.marked``). For a root beta,

    <chi, beta^vee> = sum_v chi_v * b_v * |alpha_v|^2 / |beta|^2,

so the inequality <chi, beta^vee> >= 0 has integer normal (b_v |alpha_v|^2)_v
up to a positive factor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .diagrams import TwistKind, flop_label, twist_class, FlopLabel
from .errors import ConfigurationError, InvariantViolation
from .parabolics import (
    Parabolic,
    facet_labels,
    facet_root,
    marked_diagram_of,
    twist,
    twist_back_label,
)
from .rootsys import CharacterVector, Root, RootSystem

Normal = tuple[int, ...]


def root_normal(system: RootSystem, marked: Sequence[int], beta: Root) -> Normal:
    """Primitive integer covector of chi -> <chi, beta^vee> on M(L0)."""
    return linalg.primitive([beta[v - 1] * system.gram[v - 1][v - 1] for v in marked])


def restrict(chi: CharacterVector, marked: Sequence[int]) -> tuple[Fraction, ...]:
    """Marked-vertex coordinates of a character; it must vanish elsewhere."""
    if any(chi.coords[i] != 0 for i in range(len(chi)) if i + 1 not in marked):
        raise ConfigurationError(f"character {chi} is not in M(L0): nonzero on the Levi vertices")
    return tuple(chi.coords[v - 1] for v in marked)


def embed(coords: Sequence, marked: Sequence[int], rank: int) -> CharacterVector:
    full = [Fraction(0)] * rank
    for v, c in zip(marked, coords):
        full[v - 1] = Fraction(c)
    return CharacterVector(full)


@dataclass(frozen=True)
class PolyhedralCone:
    """{x : n . x >= 0 for every normal n}; labels name the facets.

    For a simplicial cone ``rays[i]`` is the ray opposite facet ``labels[i]``.
    """

    normals: tuple[Normal, ...]
    rays: tuple[Normal, ...] | None = None
    labels: tuple[int, ...] | None = None
    simplicial: bool = False

    @property
    def dim(self) -> int:
        return len(self.normals[0]) if self.normals else 0

    def values(self, x: Sequence) -> tuple:
        return tuple(linalg.dot(n, x) for n in self.normals)

    def contains(self, x: Sequence) -> bool:
        return all(val >= 0 for val in self.values(x))

    def contains_interior(self, x: Sequence) -> bool:
        return all(val > 0 for val in self.values(x))

    def negate(self) -> PolyhedralCone:
        neg = lambda vs: tuple(tuple(-c for c in v) for v in vs)  # noqa: E731
        return PolyhedralCone(
            neg(self.normals), neg(self.rays) if self.rays else None, self.labels, self.simplicial
        )

    def normal_set(self) -> frozenset[Normal]:
        return frozenset(self.normals)

    def facet(self, label: int) -> Normal:
        return self.normals[self.labels.index(label)]

    def transform(self, a: Sequence[Sequence]) -> PolyhedralCone:
        """Image under the invertible linear map x -> a x."""
        a_inv = linalg.inverse(a)
        normals = tuple(linalg.primitive(linalg.mat_vec(linalg.transpose(a_inv), n)) for n in self.normals)
        rays = None
        if self.rays is not None:
            rays = tuple(linalg.primitive(linalg.mat_vec(a, r)) for r in self.rays)
        return PolyhedralCone(normals, rays, self.labels, self.simplicial)

    def interior_point(self, weights: Sequence[int] | None = None) -> tuple[int, ...]:
        """A positive combination of the rays."""
        if self.rays is None:
            raise ValueError("cone has no ray description")
        weights = weights or [1] * len(self.rays)
        return tuple(sum(w * r[i] for w, r in zip(weights, self.rays)) for i in range(self.dim))


def simplicial_cone(normals: Sequence[Normal], labels: Sequence[int]) -> PolyhedralCone:
    """Cone from independent normals; rays are the dual basis, made primitive."""
    try:
        inv = linalg.inverse(normals)
    except ZeroDivisionError:
        raise InvariantViolation(f"facet normals {normals} are dependent") from None
    cols = linalg.transpose(inv)
    rays = tuple(linalg.primitive(c) for c in cols)
    return PolyhedralCone(tuple(normals), rays, tuple(labels), True)


@lru_cache(maxsize=None)
def nef_cone(p: Parabolic) -> PolyhedralCone:
    """{chi in M(L0)_R : <chi, beta^vee> >= 0 for beta in N}, reduced to rho facets.

    Every beta in N is a nonnegative combination of the roots w(alpha_v) for
    the marked v of p's standardized diagram plus roots of Phi_I, which pair
    to zero with M(L0). So those rho roots carry all the facets, and they
    are independent on M(L0).
    """
    labels = facet_labels(p)
    normals = [root_normal(p.system, p.marked, facet_root(p, v)) for v in labels]
    return simplicial_cone(normals, labels)


def inequality_normals(p: Parabolic) -> frozenset[Normal]:
    """All normals of the unreduced system, one per root of N."""
    return frozenset(root_normal(p.system, p.marked, b) for b in p.nilradical)


@dataclass(frozen=True)
class Wall:
    source: int
    target: int
    vertex: int
    back_vertex: int
    kind: TwistKind
    flop: FlopLabel


@dataclass
class ChamberComplex:
    """Chambers (parabolic, nef cone) in BFS order and their walls.

    ``walls`` holds one entry per (chamber, facet), so every wall appears
    twice, once from each side.
    """

    system: RootSystem
    levi_I: frozenset[int]
    chambers: list[tuple[Parabolic, PolyhedralCone]]
    walls: list[Wall]
    index: dict[Parabolic, int] = field(repr=False)
    _normals: np.ndarray | None = field(default=None, repr=False)

    @property
    def marked(self) -> tuple[int, ...]:
        return self.chambers[0][0].marked

    @property
    def dim(self) -> int:
        return len(self.marked)

    def parabolics(self) -> list[Parabolic]:
        return [p for p, _ in self.chambers]

    def neighbor(self, i: int, vertex: int) -> int:
        return self._wall_table[(i, vertex)].target

    @property
    def _wall_table(self) -> dict[tuple[int, int], Wall]:
        table = self.__dict__.get("_wt")
        if table is None:
            table = {(w.source, w.vertex): w for w in self.walls}
            self.__dict__["_wt"] = table
        return table

    def wall(self, i: int, vertex: int) -> Wall:
        return self._wall_table[(i, vertex)]

    def undirected_walls(self) -> list[Wall]:
        return [w for w in self.walls if w.source < w.target]

    def normal_array(self) -> np.ndarray:
        """Integer array of shape (chambers, rho, rho), facet normals in label order."""
        if self._normals is None:
            self._normals = np.array([c.normals for _, c in self.chambers], dtype=np.int64)
        return self._normals

    def labels_array(self) -> np.ndarray:
        return np.array([c.labels for _, c in self.chambers], dtype=np.int64)

    def neighbor_array(self) -> np.ndarray:
        """neighbor_array[i, j] = chamber across facet j (label order) of chamber i."""
        return np.array(
            [[self.neighbor(i, v) for v in c.labels] for i, (_, c) in enumerate(self.chambers)],
            dtype=np.int64,
        )


def build_chamber_complex(S: Sequence[Parabolic]) -> ChamberComplex:
    """Cones of all chambers and the twist walls between them.

    Raises InvariantViolation if a facet is not shared with exactly the
    twisted chamber, with opposite normal.
    """
    S = list(S)
    if not S:
        raise ConfigurationError("empty chamber set")
    index = {p: i for i, p in enumerate(S)}
    if len(index) != len(S):
        raise InvariantViolation("duplicate parabolics in chamber set")
    chambers = [(p, nef_cone(p)) for p in S]
    walls = []
    for i, (p, cone) in enumerate(chambers):
        d = marked_diagram_of(p)[0]
        for v in cone.labels:
            q = twist(p, v)
            if q not in index:
                raise InvariantViolation(f"twist of chamber {i} at {v} leaves the chamber set")
            j = index[q]
            back = twist_back_label(p, v)
            other = chambers[j][1]
            if other.facet(back) != tuple(-c for c in cone.facet(v)):
                raise InvariantViolation(f"wall {i}-{j} at vertex {v}: facets do not match")
            if twist(q, back) != p:
                raise InvariantViolation(f"twist at {v} then {back} does not return to chamber {i}")
            cls = twist_class(d, v)
            walls.append(Wall(i, j, v, back, cls.kind, flop_label(cls)))
    return ChamberComplex(S[0].system, S[0].levi_I, chambers, walls, index)


def containing_chambers(cx: ChamberComplex, x: Sequence, interior: bool = False) -> list[int]:
    out = []
    for i, (_, cone) in enumerate(cx.chambers):
        if (cone.contains_interior(x) if interior else cone.contains(x)):
            out.append(i)
    return out


def locate(cx: ChamberComplex, chi: CharacterVector | Sequence) -> Parabolic:
    """A chamber whose closed nef cone contains chi.

    Interior points have exactly one such chamber; on walls the smallest
    parabolic in the order of sorted nilradicals is returned.
    """
    x = restrict(chi, cx.marked) if isinstance(chi, CharacterVector) else tuple(chi)
    hits = containing_chambers(cx, x)
    if not hits:
        raise InvariantViolation(f"character {x} lies in no chamber")
    return min(cx.chambers[i][0] for i in hits)


def locate_many(cx: ChamberComplex, xs: np.ndarray, chunk: int = 512) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized membership for integer points xs of shape (samples, rho).

    Returns (closed_count, open_count, first_closed) per sample; first_closed
    is -1 if no chamber contains the point.
    """
    normals = cx.normal_array()
    closed_n, open_n, first = [], [], []
    for start in range(0, len(xs), chunk):
        vals = np.einsum("cfr,sr->scf", normals, xs[start:start + chunk])
        closed = (vals >= 0).all(axis=2)
        closed_n.append(closed.sum(axis=1))
        open_n.append((vals > 0).all(axis=2).sum(axis=1))
        first.append(np.where(closed.any(axis=1), closed.argmax(axis=1), -1))
    if not closed_n:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    return np.concatenate(closed_n), np.concatenate(open_n), np.concatenate(first)


@dataclass
class MovableUnion:
    """Union of the closed nef cones of a set of chambers."""

    complex: ChamberComplex
    members: tuple[int, ...]
    mode: str

    def parabolics(self) -> list[Parabolic]:
        return [self.complex.chambers[i][0] for i in self.members]

    def contains(self, chi: CharacterVector | Sequence) -> bool:
        x = restrict(chi, self.complex.marked) if isinstance(chi, CharacterVector) else tuple(chi)
        return any(self.complex.chambers[i][1].contains(x) for i in self.members)


def reachable(cx: ChamberComplex, start: int, kinds: Iterable[TwistKind]) -> tuple[int, ...]:
    """Chambers reachable from ``start`` through walls of the given kinds."""
    kinds = set(kinds)
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for v in cx.chambers[i][1].labels:
            w = cx.wall(i, v)
            if w.kind in kinds and w.target not in seen:
                seen.add(w.target)
                queue.append(w.target)
    return tuple(sorted(seen))


def movable_union(cx: ChamberComplex, mode: str, p0: Parabolic) -> MovableUnion:
    """S^1 (first-kind walls only) or S* (first-kind and 2-s walls) from p0."""
    kinds = {"S1": (TwistKind.FIRST,), "Sstar": (TwistKind.FIRST, TwistKind.SMALL)}
    if mode not in kinds:
        raise ConfigurationError(f"mode must be S1 or Sstar, not {mode!r}")
    if p0 not in cx.index:
        raise ConfigurationError("start parabolic is not a chamber of the complex")
    return MovableUnion(cx, reachable(cx, cx.index[p0], kinds[mode]), mode)
