"""Parabolic subalgebras with a fixed Levi factor, encoded by nilradical roots.

A parabolic containing the Cartan subalgebra with Levi roots Phi_I is the
same thing as a set N of roots with

    N disjoint from Phi_I,   N and -N partition Phi minus Phi_I,
    N + Phi_I closed under root addition.

Twisting at a marked vertex negates N inside one Levi component of the
next larger parabolic. Deduplication is by the root set itself.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .arrangement import canonical_normal, distinct_hyperplanes, sign_vectors
from .diagrams import MarkedDiagram
from .errors import ConfigurationError, InvariantViolation
from .rootsys import Root, RootSystem, WeylElement, connected_components, adjacency

CHECK_INVARIANTS = os.environ.get("PARATWIST_CHECK", "1") != "0"


def _neg(r: Root) -> Root:
    return tuple(-c for c in r)


@dataclass(frozen=True)
class Parabolic:
    system: RootSystem
    levi_I: frozenset[int]
    nilradical: frozenset[Root]

    @property
    def marked(self) -> tuple[int, ...]:
        """Coordinates of M(L0): the vertices outside the fixed Levi set."""
        return tuple(v for v in range(1, self.system.rank + 1) if v not in self.levi_I)

    def sort_key(self) -> tuple:
        return tuple(sorted(self.nilradical))

    def __lt__(self, other: Parabolic) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Parabolic({self.system.name}, I={sorted(self.levi_I)}, |N|={len(self.nilradical)})"


@lru_cache(maxsize=None)
def levi_roots(system: RootSystem, levi_I: frozenset[int]) -> frozenset[Root]:
    return frozenset(system.roots_in(levi_I))


def check_parabolic(p: Parabolic) -> None:
    """Raise InvariantViolation unless N is a nilradical for the Levi Phi_I."""
    rs = p.system
    levi = levi_roots(rs, p.levi_I)
    n = p.nilradical
    if n & levi:
        raise InvariantViolation(f"{p}: nilradical meets Levi roots")
    neg = {_neg(r) for r in n}
    if n & neg or len(n) * 2 + len(levi) != len(rs.all_roots):
        raise InvariantViolation(f"{p}: N and -N do not partition the non-Levi roots")
    closed = n | levi
    for a in n:
        for b in closed:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s) and s not in closed:
                raise InvariantViolation(f"{p}: not closed, {a} + {b}")


def standard_parabolic(system: RootSystem, levi_I: Iterable[int]) -> Parabolic:
    levi_I = frozenset(levi_I)
    if not levi_I <= set(range(1, system.rank + 1)):
        raise ConfigurationError(f"I = {sorted(levi_I)} is not a set of vertices of {system.name}")
    levi = levi_roots(system, levi_I)
    return Parabolic(system, levi_I, frozenset(r for r in system.positive_roots if r not in levi))


def parabolic_for_diagram(system: RootSystem, marked: Iterable[int]) -> Parabolic:
    """Standard parabolic whose marked (black) vertices are ``marked``."""
    marked = frozenset(marked)
    if not marked:
        raise ConfigurationError("the marking must be nonempty")
    if not marked <= set(range(1, system.rank + 1)):
        raise ConfigurationError(f"marked vertices {sorted(marked)} outside 1..{system.rank}")
    return standard_parabolic(system, frozenset(range(1, system.rank + 1)) - marked)


@lru_cache(maxsize=None)
def marked_diagram_of(p: Parabolic) -> tuple[MarkedDiagram, WeylElement]:
    """Standardized diagram D of p and w with w(standard parabolic of D) = p.

    N together with the standard positive roots of Phi_I is a closed set P
    with P and -P partitioning Phi, hence a positive system; its base is an
    adapted base. w is the Weyl element carrying the standard positive
    system to P, and the unmarked vertices are those sent into Phi_I.
    """
    rs = p.system
    levi = levi_roots(rs, p.levi_I)
    positive = p.nilradical | {r for r in levi if sum(r) > 0}
    w = rs.weyl_from_positive_system(positive)
    unmarked = frozenset(
        i for i in range(1, rs.rank + 1) if w(rs.simple_roots[i - 1]) in levi
    )
    if len(unmarked) != len(p.levi_I):
        raise InvariantViolation(f"{p}: adapted base does not restrict to a base of Phi_I")
    marked = frozenset(range(1, rs.rank + 1)) - unmarked
    return MarkedDiagram(rs.family, rs.rank, marked), w


def facet_labels(p: Parabolic) -> tuple[int, ...]:
    """Marked vertices of p's standardized diagram, i.e. the facets of its nef cone."""
    return tuple(sorted(marked_diagram_of(p)[0].marked))


def facet_root(p: Parabolic, v: int) -> Root:
    """The root w(alpha_v) of N whose hyperplane carries facet v."""
    d, w = marked_diagram_of(p)
    if v not in d.marked:
        raise ConfigurationError(f"vertex {v} is not a facet label of {p} (labels {sorted(d.marked)})")
    return w(p.system.simple_roots[v - 1])


def _component_roots(p: Parabolic, v: int) -> frozenset[Root]:
    d, w = marked_diagram_of(p)
    adj = adjacency(d.family, d.rank)
    comp = next(c for c in connected_components(set(d.unmarked) | {v}, adj) if v in c)
    return frozenset(w(r) for r in p.system.roots_in(comp))


@lru_cache(maxsize=None)
def twist(p: Parabolic, v: int) -> Parabolic:
    """Twist p at facet label v: negate N inside the Levi component through v."""
    facet_root(p, v)  # validates the label
    comp = _component_roots(p, v)
    inside = p.nilradical & comp
    q = Parabolic(p.system, p.levi_I, (p.nilradical - inside) | {_neg(r) for r in inside})
    if CHECK_INVARIANTS:
        check_parabolic(q)
    return q


@lru_cache(maxsize=None)
def twist_back_label(p: Parabolic, v: int) -> int:
    """Facet label of twist(p, v) that leads back to p."""
    q = twist(p, v)
    comp = _component_roots(p, v)
    d, w = marked_diagram_of(q)
    labels = [u for u in sorted(d.marked) if w(q.system.simple_roots[u - 1]) in comp]
    if len(labels) != 1:
        raise InvariantViolation(f"twist of {p} at {v}: no unique returning facet ({labels})")
    return labels[0]


def opposite(p: Parabolic) -> Parabolic:
    return Parabolic(p.system, p.levi_I, frozenset(_neg(r) for r in p.nilradical))


def apply_weyl(w: WeylElement, p: Parabolic) -> Parabolic:
    """w(p). The Levi set is kept when w normalizes Phi_I, else recomputed."""
    rs = p.system
    n = frozenset(w(r) for r in p.nilradical)
    levi = levi_roots(rs, p.levi_I)
    if {w(r) for r in levi} == levi:
        return Parabolic(rs, p.levi_I, n)
    image_levi = {w(r) for r in levi}
    # the image is standard-Levi only if w(Phi_I) is spanned by simple roots
    new_I = frozenset(
        i for i in range(1, rs.rank + 1) if rs.simple_roots[i - 1] in image_levi
    )
    if levi_roots(rs, new_I) != image_levi:
        raise ConfigurationError("w(Phi_I) is not a standard Levi subsystem")
    return Parabolic(rs, new_I, n)


def _bfs(p0: Parabolic) -> list[Parabolic]:
    seen = {p0}
    order = [p0]
    queue = deque([p0])
    while queue:
        p = queue.popleft()
        for v in facet_labels(p):
            q = twist(p, v)
            if q not in seen:
                seen.add(q)
                order.append(q)
                queue.append(q)
    return order


def chamber_oracle(system: RootSystem, levi_I: Iterable[int]) -> set[frozenset[Root]]:
    """Nilradicals from the regions of the root arrangement on k0.

    On k0 = {h : alpha(h) = 0 for alpha in I} a root beta reads
    sum_{v not in I} b_v t_v, so each non-Levi root gives a hyperplane in
    the coordinates t_v. A region with sign vector eps gives
    N = {beta : beta > 0 on the region}.
    """
    levi_I = frozenset(levi_I)
    coords = [v - 1 for v in range(1, system.rank + 1) if v not in levi_I]
    outside = [r for r in system.positive_roots if any(r[i] for i in coords)]
    restricted = [tuple(r[i] for i in coords) for r in outside]
    hyps = distinct_hyperplanes(restricted)
    out = set()
    for signs in sign_vectors(hyps, len(coords)):
        sign_of = dict(zip(hyps, signs))
        n = set()
        for r, x in zip(outside, restricted):
            # positive roots restrict to nonnegative vectors, so x is a positive
            # multiple of its canonical normal
            n.add(r if sign_of[canonical_normal(x)] > 0 else _neg(r))
        out.add(frozenset(n))
    return out


@lru_cache(maxsize=None)
def _enumerate(p0: Parabolic) -> tuple[Parabolic, ...]:
    found = _bfs(p0)
    oracle = chamber_oracle(p0.system, p0.levi_I)
    mine = {p.nilradical for p in found}
    if mine != oracle:
        raise InvariantViolation(
            f"{p0.system.name}, I={sorted(p0.levi_I)}: twist closure has {len(mine)} "
            f"parabolics, chamber oracle has {len(oracle)}"
        )
    return tuple(found)


def enumerate_S(system: RootSystem, levi_I: Iterable[int], p0: Parabolic | None = None) -> list[Parabolic]:
    """All parabolics with Levi Phi_I, as the twist closure of p0 in BFS order.

    The result is cross-checked against the chamber oracle; a mismatch
    raises InvariantViolation.
    """
    levi_I = frozenset(levi_I)
    if p0 is None:
        p0 = standard_parabolic(system, levi_I)
    if p0.levi_I != levi_I or p0.system != system:
        raise ConfigurationError("seed parabolic has a different Levi factor")
    if levi_I == frozenset(range(1, system.rank + 1)):
        raise ConfigurationError("the marking must be nonempty")
    check_parabolic(p0)
    return list(_enumerate(p0))


def conjugacy_classes(S: Iterable[Parabolic]) -> dict[MarkedDiagram, list[Parabolic]]:
    """Group parabolics by standardized diagram (= G-conjugacy class)."""
    classes: dict[MarkedDiagram, list[Parabolic]] = {}
    for p in S:
        classes.setdefault(marked_diagram_of(p)[0], []).append(p)
    return dict(sorted(classes.items(), key=lambda kv: sorted(kv[0].marked)))
