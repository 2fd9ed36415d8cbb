"""Marked Dynkin diagrams, single marked subdiagrams and their classification.

Only Cartan data is used here, never root enumeration, so everything in
this module is cheap for any rank.

Chain position ``k`` of a single marked B/C/D diagram is the Bourbaki
index: counted from the end away from the double edge (B, C) or away
from the fork (D)::

    B_n   o - o - ... - (k) - ... - o => o
    C_n   o - o - ... - (k) - ... - o <= o
    D_n   o - o - ... - (k) - ... - o < o, o
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import ConfigurationError
from .rootsys import adjacency, check_type, connected_components, gram_matrix


class TwistKind(enum.Enum):
    FIRST = "first"
    SMALL = "2-s"
    DIVISORIAL = "2-d"

    @property
    def is_flop(self) -> bool:
        """Whether the central-fiber diagram of the twist is a Mukai flop."""
        return self is not TwistKind.DIVISORIAL


@dataclass(frozen=True)
class MarkedDiagram:
    """A Dynkin diagram with black (marked) vertices; the white ones form I.

    ``embedding`` is set on subdiagrams: ``embedding[i - 1]`` is the ambient
    vertex carrying local Bourbaki index i.
    """

    family: str
    rank: int
    marked: frozenset[int]
    embedding: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        check_type(self.family, self.rank)
        object.__setattr__(self, "marked", frozenset(self.marked))
        if not self.marked <= set(range(1, self.rank + 1)):
            raise ConfigurationError(f"marked vertices {sorted(self.marked)} outside 1..{self.rank}")

    @property
    def unmarked(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1)) - self.marked

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return f"{self.name}{{{','.join(map(str, sorted(self.marked)))}}}"

    def local_to_ambient(self, i: int) -> int:
        return self.embedding[i - 1] if self.embedding else i


@dataclass(frozen=True)
class SingleMarkedClass:
    kind: TwistKind
    subtype: str
    diagram: MarkedDiagram
    dual: MarkedDiagram | None = None

    @property
    def position(self) -> int:
        (k,) = self.diagram.marked
        return k


@dataclass(frozen=True)
class FlopLabel:
    label: str
    canonical_alias: str | None = None

    def __str__(self) -> str:
        if self.canonical_alias:
            return f"{self.label}={self.canonical_alias}"
        return self.label


DIVISORIAL_NO_FLOP = "DivisorialNoFlop"


def identify_subdiagram(family: str, rank: int, vertices: Iterable[int]) -> tuple[str, int, tuple[int, ...]]:
    """Type of a connected subdiagram and its Bourbaki numbering.

    Returns (family, rank, order) where order[i - 1] is the ambient vertex
    playing the role of local vertex i. Where the diagram has symmetries
    (A ends, D fork, E6 arms) the choice is canonical in ambient indices.
    """
    verts = sorted(set(vertices))
    g = gram_matrix(family, rank)
    adj = {v: {u for u in verts if u != v and g[v - 1][u - 1] != 0} for v in verts}
    if len(connected_components(verts, adj)) != 1:
        raise ValueError(f"vertices {verts} are not connected")
    m = len(verts)
    if m == 1:
        return "A", 1, (verts[0],)
    length = {v: g[v - 1][v - 1] for v in verts}
    mult = {}
    for v in verts:
        for u in adj[v]:
            # (a_uv * a_vu) = 4 (u,v)^2 / (|u|^2 |v|^2) is the edge multiplicity
            mult[frozenset((u, v))] = 4 * g[u - 1][v - 1] ** 2 // (length[u] * length[v])
    ends = [v for v in verts if len(adj[v]) == 1]
    branch = [v for v in verts if len(adj[v]) == 3]

    def path_from(start: int) -> list[int]:
        out, prev = [start], None
        while True:
            nxt = [u for u in adj[out[-1]] if u != prev]
            if not nxt:
                return out
            prev = out[-1]
            out.append(nxt[0])

    if 3 in mult.values():
        short, long_ = sorted(verts, key=lambda v: length[v])
        return "G", 2, (short, long_)
    if 2 in mult.values():
        (edge,) = [e for e, k in mult.items() if k == 2]
        if m == 2:
            long_, short = sorted(verts, key=lambda v: -length[v])
            return "B", 2, (long_, short)
        end_on_edge = [v for v in ends if v in edge]
        if end_on_edge:
            x = end_on_edge[0]
            (far,) = [v for v in ends if v != x]
            order = tuple(path_from(far))
            other = next(iter(edge - {x}))
            return ("B" if length[x] < length[other] else "C"), m, order
        start = next(v for v in ends if length[v] == max(length.values()))
        return "F", 4, tuple(path_from(start))
    if not branch:
        return "A", m, tuple(path_from(min(ends)))
    (b,) = branch
    arms = []
    for u in sorted(adj[b]):
        arm, prev = [u], b
        while True:
            nxt = [x for x in adj[arm[-1]] if x != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), a[-1]))
    lens = tuple(len(a) for a in arms)
    if lens[:2] == (1, 1):
        long_arm = arms[2]
        tips = sorted([arms[0][0], arms[1][0]])
        return "D", m, tuple(reversed(long_arm)) + (b,) + tuple(tips)
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        short_arm, arm2, arm3 = arms
        # E_n: 1 - 3 - 4(branch) - 5 - ... ; 2 hangs off 4
        order = [arm2[1], short_arm[0], arm2[0], b] + arm3
        return "E", m, tuple(order)
    raise ValueError(f"unrecognized subdiagram with arms {lens}")  # pragma: no cover


def single_marked_subdiagram(d: MarkedDiagram, v: int) -> MarkedDiagram:
    """D_v: v plus the component of v inside I + {v}, in its own numbering."""
    if v not in d.marked:
        raise ValueError(f"vertex {v} is not marked in {d}")
    adj = adjacency(d.family, d.rank)
    pool = set(d.unmarked) | {v}
    comp = next(c for c in connected_components(pool, adj) if v in c)
    fam, rk, order = identify_subdiagram(d.family, d.rank, comp)
    return MarkedDiagram(fam, rk, frozenset({order.index(v) + 1}), embedding=order)


def classify(dv: MarkedDiagram) -> SingleMarkedClass:
    if len(dv.marked) != 1:
        raise ValueError(f"{dv} is not a single marked diagram")
    (k,) = dv.marked
    f, n = dv.family, dv.rank

    def with_mark(j: int) -> MarkedDiagram:
        return MarkedDiagram(f, n, frozenset({j}), embedding=dv.embedding)

    first = TwistKind.FIRST
    small = TwistKind.SMALL
    div = TwistKind.DIVISORIAL
    if f == "A":
        m = n + 1
        sub = f"A({m},{min(k, m - k)})"
        if 2 * k != m:
            return SingleMarkedClass(first, sub, dv, with_mark(m - k))
        return SingleMarkedClass(div, sub, dv)
    if f == "D":
        if k >= n - 1:
            if n % 2 == 1:
                return SingleMarkedClass(first, f"Dfork({n})", dv, with_mark(2 * n - 1 - k))
            return SingleMarkedClass(div, f"Dfork({n})", dv)
        ok = k % 2 == 1 and n - 2 >= k and 3 * k > 2 * n
        return SingleMarkedClass(small if ok else div, f"Dchain({n},{k})", dv)
    if f == "B":
        ok = k % 2 == 0 and 3 * k > 2 * n + 1
        return SingleMarkedClass(small if ok else div, f"B({n},{k})", dv)
    if f == "C":
        ok = k % 2 == 1 and 3 * k <= 2 * n
        return SingleMarkedClass(small if ok else div, f"C({n},{k})", dv)
    if f == "E" and n == 6:
        if k in (1, 6):
            return SingleMarkedClass(first, "E6_I", dv, with_mark(7 - k))
        if k in (3, 5):
            return SingleMarkedClass(first, "E6_II", dv, with_mark(8 - k))
    return SingleMarkedClass(div, "Other", dv)


def flop_label(cls: SingleMarkedClass) -> FlopLabel:
    if cls.kind is TwistKind.DIVISORIAL:
        return FlopLabel(DIVISORIAL_NO_FLOP)
    alias = None
    d = cls.diagram
    if d.family == "B" and cls.position == d.rank and d.rank % 2 == 0:
        alias = f"Dfork({d.rank + 1})"
    return FlopLabel(cls.subtype, alias)


def twist_class(d: MarkedDiagram, v: int) -> SingleMarkedClass:
    """Classification of the twist of a diagram at marked vertex v."""
    return classify(single_marked_subdiagram(d, v))


def twisted_diagram(d: MarkedDiagram, v: int) -> tuple[MarkedDiagram, int]:
    """The diagram D' after twisting at v, and the vertex of D' facing back.

    For the first kind D_v is replaced by its dual; otherwise D' = D.
    """
    cls = twist_class(d, v)
    if cls.dual is None:
        return d, v
    (j,) = cls.dual.marked
    back = cls.dual.local_to_ambient(j)
    return MarkedDiagram(d.family, d.rank, (d.marked - {v}) | {back}), back


def all_markings(family: str, rank: int) -> list[MarkedDiagram]:
    """Every nonempty marking, ordered by size then lexicographically."""
    out = []
    for size in range(1, rank + 1):
        for c in combinations(range(1, rank + 1), size):
            out.append(MarkedDiagram(family, rank, frozenset(c)))
    return out
