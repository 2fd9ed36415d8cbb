"""Irreducible reduced root systems in exact integer coordinates.

Roots are integer tuples in the basis of simple roots, with Bourbaki
vertex numbering (1-based in all user-facing indices, 0-based in tuples).
Lengths come from the symmetrized form with short roots of squared
length 2. Characters (weights) are stored in fundamental-weight
coordinates, so ``chi.coords[i] == <chi, alpha_{i+1}^vee>``.

Bourbaki numbering used throughout::

    A_n   1 - 2 - ... - n
    B_n   1 - 2 - ... - (n-1) => n          (alpha_n short)
    C_n   1 - 2 - ... - (n-1) <= n          (alpha_n long)
    D_n   1 - 2 - ... - (n-2) < (n-1), n    (fork tips n-1, n)
    E_n   1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
    F_4   1 - 2 => 3 - 4                    (alpha_1, alpha_2 long)
    G_2   1 <= 2                            (alpha_1 short)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

from . import linalg
from .errors import ConfigurationError

Root = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def check_type(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise ConfigurationError(f"unknown family {family!r}")
    if not isinstance(rank, int) or rank < 1:
        raise ConfigurationError(f"rank must be a positive integer, got {rank!r}")
    if family in _MIN_RANK and rank < _MIN_RANK[family]:
        raise ConfigurationError(f"{family}_{rank}: rank below {_MIN_RANK[family]}")
    if family == "E" and rank not in (6, 7, 8):
        raise ConfigurationError(f"E_{rank}: rank must be 6, 7 or 8")
    if family == "F" and rank != 4:
        raise ConfigurationError("F requires rank 4")
    if family == "G" and rank != 2:
        raise ConfigurationError("G requires rank 2")


def _edges(family: str, n: int) -> list[tuple[int, int, int]]:
    """(i, j, (alpha_i, alpha_j)) for every edge, 1-based."""
    if family == "A":
        return [(i, i + 1, -1) for i in range(1, n)]
    if family == "B":
        return [(i, i + 1, -2) for i in range(1, n)]
    if family == "C":
        return [(i, i + 1, -1) for i in range(1, n - 1)] + [(n - 1, n, -2)]
    if family == "D":
        return [(i, i + 1, -1) for i in range(1, n - 1)] + [(n - 2, n, -1)]
    if family == "E":
        return [(1, 3, -1), (2, 4, -1)] + [(i, i + 1, -1) for i in range(3, n)]
    if family == "F":
        return [(1, 2, -2), (2, 3, -2), (3, 4, -1)]
    return [(1, 2, -3)]


def _lengths(family: str, n: int) -> list[int]:
    if family == "B":
        return [4] * (n - 1) + [2]
    if family == "C":
        return [2] * (n - 1) + [4]
    if family == "F":
        return [4, 4, 2, 2]
    if family == "G":
        return [2, 6]
    return [2] * n


@lru_cache(maxsize=None)
def gram_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Symmetrized form (alpha_i, alpha_j) on simple roots, short roots of length 2."""
    check_type(family, rank)
    g = [[0] * rank for _ in range(rank)]
    for i, d in enumerate(_lengths(family, rank)):
        g[i][i] = d
    for i, j, x in _edges(family, rank):
        g[i - 1][j - 1] = g[j - 1][i - 1] = x
    return tuple(tuple(row) for row in g)


@lru_cache(maxsize=None)
def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """a[i][j] = <alpha_j, alpha_i^vee>, so s_i(alpha_j) = alpha_j - a[i][j] alpha_i."""
    g = gram_matrix(family, rank)
    return tuple(tuple(2 * g[i][j] // g[i][i] for j in range(rank)) for i in range(rank))


def adjacency(family: str, rank: int) -> dict[int, set[int]]:
    """Dynkin graph on 1-based vertices."""
    g = gram_matrix(family, rank)
    return {
        i + 1: {j + 1 for j in range(rank) if j != i and g[i][j] != 0} for i in range(rank)
    }


def connected_components(vertices: Iterable[int], adj: dict[int, set[int]]) -> list[frozenset[int]]:
    todo = set(vertices)
    comps = []
    while todo:
        start = min(todo)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x in todo and x not in comp:
                    comp.add(x)
                    stack.append(x)
        todo -= comp
        comps.append(frozenset(comp))
    return comps


def root_count(family: str, rank: int) -> int:
    """Number of roots according to the classification."""
    n = rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
        "F": 48,
        "G": 12,
    }[family]


def weyl_order(family: str, rank: int) -> int:
    n = rank
    if family == "A":
        return factorial(n + 1)
    if family in "BC":
        return 2**n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(family, n)]


@dataclass(frozen=True)
class CharacterVector:
    """A rational weight in fundamental-weight coordinates omega_1..omega_rank."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __neg__(self) -> CharacterVector:
        return CharacterVector(-c for c in self.coords)

    def __add__(self, other: CharacterVector) -> CharacterVector:
        return CharacterVector(a + b for a, b in zip(self.coords, other.coords))

    def scale(self, c) -> CharacterVector:
        return CharacterVector(c * x for x in self.coords)

    def support(self) -> frozenset[int]:
        """1-based vertices with a nonzero coordinate."""
        return frozenset(i + 1 for i, c in enumerate(self.coords) if c != 0)

    @classmethod
    def fundamental(cls, rank: int, i: int) -> CharacterVector:
        return cls(int(j == i - 1) for j in range(rank))


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as an integer matrix on simple-root coordinates.

    Column j of ``matrix`` holds the coordinates of w(alpha_{j+1}).
    ``word`` is an optional expression as a product of simple reflections
    (1-based indices, leftmost factor first).
    """

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __call__(self, root: Sequence[int]) -> Root:
        return tuple(sum(a * b for a, b in zip(row, root)) for row in self.matrix)

    def __mul__(self, other: WeylElement) -> WeylElement:
        prod = linalg.mat_mul(self.matrix, other.matrix)
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(tuple(tuple(r) for r in prod), word)

    def inverse(self) -> WeylElement:
        if self.word is not None:
            word = tuple(reversed(self.word))
        else:
            word = None
        inv = linalg.inverse(self.matrix)
        return WeylElement(tuple(tuple(int(x) for x in row) for row in inv), word)

    def determinant(self) -> int:
        red = linalg.to_fraction_matrix(self.matrix)
        # (-1)^length for a Weyl element; computed honestly for validation
        det = Fraction(1)
        n = len(red)
        for c in range(n):
            p = next((r for r in range(c, n) if red[r][c] != 0), None)
            if p is None:
                return 0
            if p != c:
                red[c], red[p] = red[p], red[c]
                det = -det
            det *= red[c][c]
            for r in range(c + 1, n):
                f = red[r][c] / red[c][c]
                red[r] = [x - f * y for x, y in zip(red[r], red[c])]
        return int(det)

    def is_identity(self) -> bool:
        return self.matrix == tuple(tuple(r) for r in linalg.identity(self.rank))

    @classmethod
    def identity(cls, rank: int) -> WeylElement:
        return cls(tuple(tuple(r) for r in linalg.identity(rank)), ())


class RootSystem:
    """Roots, coroot pairing and Weyl machinery of one simple type.

    Instances are cached per (family, rank) by :func:`build_root_system`
    and compare equal by type.
    """

    def __init__(self, family: str, rank: int):
        check_type(family, rank)
        self.family = family
        self.rank = rank
        self.gram = gram_matrix(family, rank)
        self.cartan_matrix = cartan_matrix(family, rank)
        self.simple_roots: tuple[Root, ...] = tuple(
            tuple(int(i == j) for j in range(rank)) for i in range(rank)
        )
        self.all_roots: tuple[Root, ...] = self._generate()
        self.positive_roots: tuple[Root, ...] = tuple(
            r for r in self.all_roots if all(c >= 0 for c in r)
        )
        self.root_length_sq: dict[Root, int] = {r: self.norm2(r) for r in self.all_roots}
        self._root_set = frozenset(self.all_roots)
        self._reflection = [
            {r: self._reflect(i, r) for r in self.all_roots} for i in range(rank)
        ]

    def __repr__(self) -> str:
        return f"RootSystem({self.family!r}, {self.rank})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and (self.family, self.rank) == (
            other.family,
            other.rank,
        )

    def __hash__(self) -> int:
        return hash((self.family, self.rank))

    def __reduce__(self):
        return build_root_system, (self.family, self.rank)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def _reflect(self, i: int, x: Sequence[int]) -> Root:
        c = sum(x[j] * self.cartan_matrix[i][j] for j in range(self.rank))
        out = list(x)
        out[i] -= c
        return tuple(out)

    def _generate(self) -> tuple[Root, ...]:
        found = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self._reflect(i, r)
                    if s not in found:
                        found.add(s)
                        nxt.append(s)
            frontier = nxt
        # height, then reverse-lex: deterministic order with simple roots first
        return tuple(sorted(found, key=lambda r: (sum(r) < 0, abs(sum(r)), tuple(-c for c in r))))

    def norm2(self, x: Sequence) -> int:
        g = self.gram
        n = self.rank
        return sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))

    def form(self, x: Sequence, y: Sequence):
        g = self.gram
        n = self.rank
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n))

    def is_root(self, x: Sequence[int]) -> bool:
        return tuple(x) in self._root_set

    def reflect(self, i: int, root: Root) -> Root:
        """Simple reflection s_i (1-based) applied to a root."""
        return self._reflection[i - 1][root]

    def simple_reflection(self, i: int) -> WeylElement:
        cols = [self._reflect(i - 1, e) for e in self.simple_roots]
        return WeylElement(tuple(tuple(r) for r in linalg.transpose(cols)), (i,))

    def from_word(self, word: Sequence[int]) -> WeylElement:
        w = WeylElement.identity(self.rank)
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def highest_root(self) -> Root:
        return max(self.positive_roots, key=sum)

    def fundamental_weight(self, i: int) -> CharacterVector:
        return CharacterVector.fundamental(self.rank, i)

    def coroot_coords(self, beta: Sequence[int]) -> tuple[Fraction, ...]:
        """beta^vee in the basis of simple coroots."""
        n2 = self.norm2(beta)
        return tuple(Fraction(b * self.gram[j][j], n2) for j, b in enumerate(beta))

    def pairing(self, chi: CharacterVector, beta: Sequence[int]) -> Fraction:
        """<chi, beta^vee> = 2 (chi, beta) / (beta, beta)."""
        if len(chi) != self.rank or len(beta) != self.rank:
            raise ValueError("dimension mismatch")
        return sum((c * x for c, x in zip(chi.coords, self.coroot_coords(beta))), Fraction(0))

    def apply(self, w: WeylElement, x):
        """Act by w on a root (integer tuple) or on a CharacterVector."""
        if w.rank != self.rank or len(x) != self.rank:
            raise ValueError("dimension mismatch")
        if isinstance(x, CharacterVector):
            winv = w.inverse()
            # <w chi, alpha_u^vee> = <chi, (w^-1 alpha_u)^vee>
            return CharacterVector(
                self.pairing(x, winv(e)) for e in self.simple_roots
            )
        return w(x)

    def weight_to_root_coords(self, chi: CharacterVector) -> tuple[Fraction, ...]:
        """Express a weight in the simple-root basis (rational)."""
        # column j of A^T (Kac cartan) gives omega-coords of alpha_j
        m = [[Fraction(self.cartan_matrix[i][j]) for j in range(self.rank)] for i in range(self.rank)]
        return tuple(linalg.solve(m, chi.coords))

    def positive_system(self, base: Sequence[Root]) -> frozenset[Root]:
        """Roots that are nonnegative combinations of ``base``; validates ``base``."""
        base = [tuple(b) for b in base]
        if len(base) != self.rank or any(not self.is_root(b) for b in base):
            raise ValueError("input is not a base of the root system")
        cols = linalg.transpose(base)
        try:
            inv = linalg.inverse(cols)
        except ZeroDivisionError:
            raise ValueError("input is not a base of the root system") from None
        pos = set()
        for r in self.all_roots:
            c = linalg.mat_vec(inv, r)
            if any(x.denominator != 1 for x in c):
                raise ValueError("input is not a base of the root system")
            if all(x >= 0 for x in c):
                pos.add(r)
            elif not all(x <= 0 for x in c):
                raise ValueError("input is not a base of the root system")
        return frozenset(pos)

    def weyl_from_positive_system(
        self, positive: Iterable[Root], vertices: Iterable[int] | None = None
    ) -> WeylElement:
        """The unique w with w(standard positive roots) = ``positive``.

        Greedy descent: while the current set contains some -alpha_i, apply
        s_i to it. With ``vertices`` the descent is restricted to the
        parabolic subgroup generated by those simple reflections.
        """
        current = set(positive)
        allowed = sorted(vertices) if vertices is not None else range(1, self.rank + 1)
        negs = {i: tuple(-x for x in self.simple_roots[i - 1]) for i in allowed}
        word = []
        while True:
            i = next((i for i in allowed if negs[i] in current), None)
            if i is None:
                break
            table = self._reflection[i - 1]
            current = {table[r] for r in current}
            word.append(i)
        return self.from_word(word)

    def weyl_group_elements(self, limit: int = 10**6) -> list[WeylElement]:
        """All of W by breadth-first search; refuses groups larger than ``limit``."""
        order = weyl_order(self.family, self.rank)
        if order > limit:
            raise ConfigurationError(f"|W({self.name})| = {order} exceeds limit {limit}")
        gens = [self.simple_reflection(i) for i in range(1, self.rank + 1)]
        e = WeylElement.identity(self.rank)
        seen = {e.matrix: e}
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    ws = w * s
                    if ws.matrix not in seen:
                        seen[ws.matrix] = ws
                        nxt.append(ws)
            frontier = nxt
        return list(seen.values())

    def root_permutation(self, w: WeylElement) -> dict[Root, Root]:
        return {r: w(r) for r in self.all_roots}

    def roots_in(self, vertices: Iterable[int]) -> tuple[Root, ...]:
        """Roots of the standard subsystem Phi_J (support inside ``vertices``)."""
        idx = {v - 1 for v in vertices}
        return tuple(
            r for r in self.all_roots if all(c == 0 for j, c in enumerate(r) if j not in idx)
        )


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    rs = RootSystem(family, rank)
    expected = root_count(family, rank)
    if len(rs.all_roots) != expected:  # pragma: no cover - classification guard
        raise AssertionError(f"{family}{rank}: {len(rs.all_roots)} roots, expected {expected}")
    return rs


def pairing(system: RootSystem, chi: CharacterVector, beta: Sequence[int]) -> Fraction:
    return system.pairing(chi, beta)


def apply(system: RootSystem, w: WeylElement, x):
    return system.apply(w, x)


def weyl_to_standard(system: RootSystem, base: Sequence[Root]) -> WeylElement:
    """The unique w with w(Delta) = ``base`` as unordered sets."""
    return system.weyl_from_positive_system(system.positive_system(base))


def longest_element(system: RootSystem, vertices: Iterable[int] | None = None) -> WeylElement:
    """w_0 of W, or of the parabolic subgroup W_J when ``vertices`` is given."""
    verts = sorted(vertices) if vertices is not None else list(range(1, system.rank + 1))
    sub_pos = [r for r in system.roots_in(verts) if sum(r) > 0]
    negative = {tuple(-c for c in r) for r in sub_pos}
    return system.weyl_from_positive_system(negative, verts)


def minus_w0_vertex_permutation(
    system: RootSystem, component: Iterable[int]
) -> dict[int, int]:
    """Vertex permutation of a connected subdiagram induced by -w_0 of its subsystem."""
    comp = frozenset(component)
    if not comp:
        raise ValueError("empty component")
    if len(connected_components(comp, adjacency(system.family, system.rank))) != 1:
        raise ValueError("component is disconnected")
    w0 = longest_element(system, comp)
    perm = {}
    for v in comp:
        image = tuple(-c for c in w0(system.simple_roots[v - 1]))
        perm[v] = image.index(1) + 1
    return perm
