"""JSON, DOT and CSV renderings of enumerations, chamber complexes and walks.

Roots, normals, rays and characters are written as strings of exact
values ("1,0,-1", "-2,1/3"); counts and indices are plain integers.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence

from .cones import ChamberComplex
from .diagrams import TwistKind
from .flopwalk import WalkTrace, central_fiber_summary
from .normalizer import quotient_reps
from .parabolics import conjugacy_classes, marked_diagram_of, opposite

FORMAT_VERSION = 1
CATALOG_VERSION = 1
CATALOG_COLUMNS = [
    "catalog_version", "family", "rank", "marked", "S", "N", "q",
    "walls_first", "walls_2s", "walls_2d", "jordan_type", "orbit_dim", "all_checks_passed",
]


def vec(v: Sequence) -> str:
    return ",".join(str(Fraction(x)) for x in v)


def parse_vec(s: str) -> tuple[Fraction, ...]:
    s = s.strip()
    return tuple(Fraction(x) for x in s.split(",")) if s else ()


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def instance_doc(cx: ChamberComplex) -> dict:
    rs = cx.system
    return {
        "family": rs.family,
        "rank": rs.rank,
        "marked": list(cx.marked),
        "levi_I": sorted(cx.levi_I),
    }


def diagram_name(p) -> str:
    return str(marked_diagram_of(p)[0])


def enumerate_doc(cx: ChamberComplex) -> dict:
    S = cx.parabolics()
    classes = conjugacy_classes(S)
    reps = quotient_reps(cx.system, cx.levi_I, S)
    parabolics = []
    for i, p in enumerate(S):
        parabolics.append({
            "id": i,
            "diagram": sorted(marked_diagram_of(p)[0].marked),
            "nilradical": [vec(r) for r in sorted(p.nilradical)],
            "opposite": cx.index[opposite(p)],
        })
    return {
        "version": FORMAT_VERSION,
        "instance": instance_doc(cx),
        "counts": {"S": len(S), "N": len(classes), "q": len(reps)},
        "classes": [
            {"diagram": sorted(d.marked), "members": [cx.index[p] for p in ps]}
            for d, ps in classes.items()
        ],
        "parabolics": parabolics,
    }


def _wall_doc(w) -> dict:
    return {
        "source": w.source,
        "target": w.target,
        "vertex": w.vertex,
        "back_vertex": w.back_vertex,
        "kind": w.kind.value,
        "flop": "none" if w.kind is TwistKind.DIVISORIAL else w.flop.label,
        "alias": w.flop.canonical_alias,
    }


def chambers_doc(cx: ChamberComplex) -> dict:
    return {
        "version": FORMAT_VERSION,
        "instance": instance_doc(cx),
        "chambers": [
            {
                "id": i,
                "diagram": sorted(marked_diagram_of(p)[0].marked),
                "labels": list(c.labels),
                "normals": [vec(n) for n in c.normals],
                "rays": [vec(r) for r in c.rays],
            }
            for i, (p, c) in enumerate(cx.chambers)
        ],
        "walls": [_wall_doc(w) for w in cx.undirected_walls()],
    }


def chambers_dot(cx: ChamberComplex) -> str:
    lines = [f'graph "{cx.system.name}_{vec(cx.marked)}" {{']
    for i, (p, _) in enumerate(cx.chambers):
        lines.append(f'  {i} [label="{i}: {diagram_name(p)}"];')
    for w in cx.undirected_walls():
        d = _wall_doc(w)
        attrs = f'vertex={w.vertex} kind="{d["kind"]}" flop="{d["flop"]}"'
        if d["alias"]:
            attrs += f' alias="{d["alias"]}"'
        label = f'{w.vertex} {d["kind"]} {d["flop"]}' + (f'={d["alias"]}' if d["alias"] else "")
        lines.append(f'  {w.source} -- {w.target} [label="{label}" {attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def walk_doc(cx: ChamberComplex, trace: WalkTrace, located: int | None) -> dict:
    summary = central_fiber_summary(trace)
    coords = [trace.character.coords[v - 1] for v in cx.marked]
    return {
        "version": FORMAT_VERSION,
        "instance": instance_doc(cx),
        "character": vec(coords),
        "start": cx.index[trace.start],
        "final": cx.index[trace.final],
        "located": located,
        "steps": [
            {
                "from": cx.index[s.source],
                "to": cx.index[s.target],
                "vertex": s.vertex,
                "kind": s.kind.value,
                "flop": "none" if s.kind is TwistKind.DIVISORIAL else s.flop.label,
                "alias": s.flop.canonical_alias,
                "mukai_flop": s.kind.is_flop,
            }
            for s in trace.steps
        ],
        "summary": {"all_flops": summary.all_flops, "stays_in_Sstar": summary.stays_in_movable},
    }


def catalog_csv(rows: Sequence[dict], header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CATALOG_COLUMNS, lineterminator="\n")
    if header:
        writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
