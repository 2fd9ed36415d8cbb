"""Jordan types of Richardson orbits in classical Lie algebras.

The Richardson orbit of a parabolic stabilizing a flag of type c is the
collapse of the transpose of c (sorted). Dimensions use the classical
column-length formulas; they are cross-checked against 2|N| in the tests.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import ConfigurationError, InvariantViolation
from .parabolics import Parabolic, marked_diagram_of

CLASSICAL = ("A", "B", "C", "D")


def ambient_size(family: str, rank: int) -> int:
    """Size m of the natural representation."""
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]


def _forbidden_parity(family: str) -> int | None:
    """Parity of parts that must come with even multiplicity."""
    return {"A": None, "B": 0, "D": 0, "C": 1}[family]


@dataclass(frozen=True)
class JordanType:
    parts: tuple[int, ...]
    family: str
    size: int

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(x <= 0 for x in parts) or list(parts) != sorted(parts, reverse=True):
            raise ConfigurationError(f"{parts} is not a partition")
        if sum(parts) != self.size:
            raise ConfigurationError(f"{parts} does not sum to {self.size}")
        if not is_valid(self.family, parts):
            raise ConfigurationError(f"{parts} is not a Jordan type for family {self.family}")

    @property
    def very_even(self) -> bool:
        """D-type partitions with only even parts label two orbits."""
        return self.family == "D" and all(x % 2 == 0 for x in self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class FlagType:
    composition: tuple[int, ...]
    isotropic: bool

    def __post_init__(self):
        object.__setattr__(self, "composition", tuple(self.composition))
        if any(x <= 0 for x in self.composition):
            raise ConfigurationError("flag blocks must be positive")
        if self.isotropic and self.composition != self.composition[::-1]:
            raise ConfigurationError("isotropic flag types are palindromic")


def is_valid(family: str, parts: Sequence[int]) -> bool:
    bad = _forbidden_parity(family)
    if bad is None:
        return True
    counts = Counter(parts)
    return all(c % 2 == 0 for x, c in counts.items() if x % 2 == bad)


def transpose(parts: Sequence[int]) -> tuple[int, ...]:
    parts = sorted((x for x in parts if x > 0), reverse=True)
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x > j) for j in range(parts[0]))


def collapse(family: str, parts: Sequence[int]) -> tuple[int, ...]:
    """Largest family-valid partition below ``parts`` in dominance order."""
    bad = _forbidden_parity(family)
    lam = sorted(parts, reverse=True)
    if bad is None:
        return tuple(lam)
    while True:
        counts = Counter(lam)
        offenders = [x for x, c in counts.items() if x % 2 == bad and c % 2 == 1]
        if not offenders:
            return tuple(lam)
        q = max(offenders)
        last = max(i for i, x in enumerate(lam) if x == q)
        lam[last] -= 1
        j = next((i for i in range(last + 1, len(lam)) if lam[i] < q - 1), None)
        if j is None:
            lam.append(1)
        else:
            lam[j] += 1
        lam = [x for x in lam if x > 0]


def flag_type_of(p: Parabolic) -> FlagType:
    """Flag type of the flag stabilized by (a conjugate of) p."""
    d = marked_diagram_of(p)[0]
    f, n = d.family, d.rank
    if f not in CLASSICAL:
        raise ConfigurationError(f"no flag type for exceptional family {f}")
    ks = sorted(d.marked)
    if f == "A":
        cuts = [0] + ks + [n + 1]
        return FlagType(tuple(b - a for a, b in zip(cuts, cuts[1:])), False)
    if f == "D":
        chain = [k for k in ks if k <= n - 2]
        tips = [k for k in ks if k >= n - 1]
        # one tip: a maximal isotropic space; both tips: dimension n - 1
        dims = chain + ([n] if len(tips) == 1 else [n - 1] if tips else [])
    else:
        dims = ks
    m = ambient_size(f, n)
    cuts = [0] + dims
    half = [b - a for a, b in zip(cuts, cuts[1:])]
    middle = m - 2 * dims[-1]
    comp = half + ([middle] if middle else []) + half[::-1]
    return FlagType(tuple(comp), True)


def richardson_jordan_type(family: str, flag: FlagType) -> JordanType:
    if family not in CLASSICAL:
        raise ConfigurationError(f"family {family} is not classical")
    lam = transpose(flag.composition)
    return JordanType(collapse(family, lam), family, sum(flag.composition))


def orbit_dimension(family: str, lam: JordanType | Sequence[int]) -> int:
    """Dimension of the nilpotent orbit with Jordan type lam.

    gl_m: m^2 - sum c_i^2; so_m: m(m-1)/2 - (sum c_i^2)/2 + #odd/2;
    sp_m: m(m+1)/2 - (sum c_i^2)/2 - #odd/2, with c the column lengths and
    #odd the number of odd parts.
    """
    parts = tuple(lam.parts if isinstance(lam, JordanType) else lam)
    if not is_valid(family, parts):
        raise ConfigurationError(f"{parts} is not a Jordan type for family {family}")
    m = sum(parts)
    cols = sum(c * c for c in transpose(parts))
    odd = sum(1 for x in parts if x % 2)
    if family == "A":
        return m * m - cols
    if family in ("B", "D"):
        return (m * (m - 1) - cols + odd) // 2
    if family == "C":
        return (m * (m + 1) - cols - odd) // 2
    raise ConfigurationError(f"family {family} is not classical")


def partitions(m: int, largest: int | None = None):
    """All partitions of m as decreasing tuples, in reverse lexicographic order."""
    largest = m if largest is None else min(largest, m)
    if m == 0:
        yield ()
        return
    for first in range(largest, 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """lam >= mu in dominance order (same total)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if b > a:
            return False
    return a == b


@lru_cache(maxsize=None)
def _valid_partitions(family: str, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in partitions(m) if is_valid(family, p))


def codim2_neighbors(family: str, lam: JordanType | Sequence[int]) -> list[tuple[int, ...]]:
    """All valid mu < lam with orbit dimension exactly 2 less."""
    parts = tuple(lam.parts if isinstance(lam, JordanType) else lam)
    target = orbit_dimension(family, parts) - 2
    return [
        mu
        for mu in _valid_partitions(family, sum(parts))
        if mu != parts and dominates(parts, mu) and orbit_dimension(family, mu) == target
    ]


def codim2_neighbor(family: str, lam: JordanType | Sequence[int]) -> tuple[int, ...] | None:
    """The unique codimension-2 orbit in the closure, or None.

    Raises InvariantViolation if there are several, e.g. [4,2] in gl_6 has
    both [4,1,1] and [3,3] below it in codimension 2.
    """
    found = codim2_neighbors(family, lam)
    if len(found) > 1:
        raise InvariantViolation(f"several codimension-2 orbits below {lam}: {found}")
    return found[0] if found else None


# Flags whose Springer map has degree 2, by (family, rank, marked).
DEGREE_TWO_FLAGS = {("D", 4, frozenset({3, 4}))}
