"""Regions of a central hyperplane arrangement, by deletion and restriction.

Every region is represented by an integer interior point. Interior points
of a cone can be rescaled freely, so the whole computation stays in
integers: no LP, no floating point.

Hyperplanes are added one at a time. When H is added, the regions it
splits are exactly those meeting H in their interior, and those are in
bijection with the regions of the earlier hyperplanes restricted to H.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from . import linalg

Vector = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def canonical_normal(normal: Sequence[int]) -> Vector | None:
    """Primitive representative of the line spanned by ``normal``, up to sign."""
    g = 0
    for x in normal:
        g = gcd(g, x)
    if g == 0:
        return None
    v = tuple(x // g for x in normal)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def distinct_hyperplanes(normals: Sequence[Sequence[int]]) -> list[Vector]:
    """Deduplicate normals up to scaling, keeping first-seen order."""
    seen: dict[Vector, None] = {}
    for n in normals:
        c = canonical_normal(n)
        if c is not None:
            seen.setdefault(c, None)
    return list(seen)


def _integer_basis_of_kernel(normal: Vector, dim: int) -> list[Vector]:
    basis = linalg.nullspace([normal], dim)
    return [linalg.primitive(v) for v in basis]


def region_points(normals: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """One integer interior point per region of the arrangement in Z^dim.

    ``normals`` must be pairwise non-proportional (see distinct_hyperplanes).
    """
    hyperplanes = [tuple(n) for n in normals]
    if dim == 0:
        return [()]
    points: list[Vector] = [tuple([0] * dim)]
    for k, h in enumerate(hyperplanes):
        earlier = hyperplanes[:k]
        if k == 0:
            points = [h, tuple(-x for x in h)]
            continue
        basis = _integer_basis_of_kernel(h, dim)
        restricted = distinct_hyperplanes(
            [tuple(_dot(e, b) for b in basis) for e in earlier]
        )
        on_h = region_points(restricted, dim - 1)
        index = {tuple(_dot(e, p) > 0 for e in earlier): i for i, p in enumerate(points)}
        split = {}
        for y in on_h:
            q = tuple(sum(y[j] * basis[j][i] for j in range(len(basis))) for i in range(dim))
            key = tuple(_dot(e, q) > 0 for e in earlier)
            split[index[key]] = q
        new_points = []
        for i, p in enumerate(points):
            if i not in split:
                new_points.append(p)
                continue
            q = split[i]
            # q + a/M stays on the same side of every earlier hyperplane
            scale = 1
            for e in earlier:
                eq, ea = _dot(e, q), _dot(e, h)
                scale = max(scale, abs(ea) // abs(eq) + 1)
            new_points.append(tuple(scale * x + a for x, a in zip(q, h)))
            new_points.append(tuple(scale * x - a for x, a in zip(q, h)))
        points = new_points
    return points


def sign_vectors(normals: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Sign vectors (+1/-1 per hyperplane) of all regions, sorted."""
    hyps = distinct_hyperplanes(normals)
    if len(hyps) != len(normals):
        raise ValueError("hyperplanes must be distinct")
    pts = region_points(hyps, dim)
    out = []
    for p in pts:
        signs = tuple(1 if _dot(n, p) > 0 else -1 for n in hyps)
        if any(_dot(n, p) == 0 for n in hyps):  # pragma: no cover - construction guard
            raise AssertionError("region witness lies on a hyperplane")
        out.append(signs)
    return sorted(out)
