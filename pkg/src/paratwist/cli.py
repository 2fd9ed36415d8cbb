"""Command line interface.

    paratwist enumerate --family D --rank 4 --marked 3,4
    paratwist chambers  --family B --rank 4 --marked 4 --format dot
    paratwist walk      --family D --rank 4 --marked 3,4 --chi=-2,-1
    paratwist orbit     --family B --rank 4 --marked 4
    paratwist catalog   --max-rank 3 --jobs 4
    paratwist verify    --max-rank 3

Exit codes: 0 success, 1 usage or configuration error, 2 internal
invariant violation (a failed check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import report
from .cones import build_chamber_complex, embed, locate
from .errors import ConfigurationError, InvariantViolation
from .flopwalk import walk
from .orbits import (
    CLASSICAL,
    DEGREE_TWO_FLAGS,
    codim2_neighbors,
    flag_type_of,
    orbit_dimension,
    richardson_jordan_type,
)
from .parabolics import enumerate_S, parabolic_for_diagram
from .rootsys import build_root_system
from .verify import (
    FAMILIES,
    catalog_row,
    check_classification,
    check_instance,
    check_jordan_vectors,
    instances,
)

JOBS_ENV = "PARATWIST_JOBS"
DEFAULTS = {"seed": 0, "samples": 200, "max_rank": 3, "jobs": 1}


class UsageError(ConfigurationError):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    rank: int
    marked: frozenset[int]
    seed: int = 0
    samples: int = 200
    max_rank: int = 3


def read_config(path: str | None) -> dict:
    """key=value lines; '#' starts a comment."""
    if not path:
        return {}
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            try:
                out[key] = int(value)
            except ValueError:
                raise UsageError(f"{path}:{n}: {key} must be an integer") from None
    return out


def setting(args, config: dict, key: str) -> int:
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    if key == "jobs" and os.environ.get(JOBS_ENV):
        return int(os.environ[JOBS_ENV])
    return DEFAULTS[key]


def parse_marked(text: str | None) -> frozenset[int]:
    if text is None or not text.strip():
        raise UsageError("--marked must list at least one vertex")
    try:
        return frozenset(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def instance_from(args, config) -> InstanceSpec:
    if not args.family or args.rank is None:
        raise UsageError("--family and --rank are required")
    marked = parse_marked(args.marked)
    build_root_system(args.family, args.rank)  # validates the type
    if not marked <= set(range(1, args.rank + 1)):
        raise UsageError(f"marked vertices {sorted(marked)} outside 1..{args.rank}")
    return InstanceSpec(args.family, args.rank, marked, setting(args, config, "seed"),
                        setting(args, config, "samples"))


def _complex(spec: InstanceSpec):
    rs = build_root_system(spec.family, spec.rank)
    p0 = parabolic_for_diagram(rs, spec.marked)
    return p0, build_chamber_complex(enumerate_S(rs, p0.levi_I, p0))


def cmd_enumerate(spec: InstanceSpec) -> str:
    return report.dumps(report.enumerate_doc(_complex(spec)[1]))


def cmd_chambers(spec: InstanceSpec, fmt: str = "json") -> str:
    cx = _complex(spec)[1]
    if fmt == "dot":
        return report.chambers_dot(cx)
    doc = report.chambers_doc(cx)
    doc["dot"] = report.chambers_dot(cx)
    return report.dumps(doc)


def cmd_walk(spec: InstanceSpec, chi_text: str, start: int = 0) -> str:
    p0, cx = _complex(spec)
    try:
        coords = report.parse_vec(chi_text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad character {chi_text!r}") from None
    if len(coords) != cx.dim:
        raise UsageError(f"--chi needs {cx.dim} coordinates (vertices {list(cx.marked)})")
    if not 0 <= start < len(cx.chambers):
        raise UsageError(f"--start must be a chamber id in 0..{len(cx.chambers) - 1}")
    chi = embed(coords, cx.marked, spec.rank)
    trace = walk(cx.chambers[start][0], chi)
    located = cx.index[locate(cx, chi)]
    return report.dumps(report.walk_doc(cx, trace, located))


def cmd_orbit(spec: InstanceSpec) -> str:
    if spec.family not in CLASSICAL:
        raise UsageError("orbit needs a classical family (A, B, C, D)")
    rs = build_root_system(spec.family, spec.rank)
    p0 = parabolic_for_diagram(rs, spec.marked)
    flag = flag_type_of(p0)
    lam = richardson_jordan_type(spec.family, flag)
    below = codim2_neighbors(spec.family, lam)
    doc = {
        "version": report.FORMAT_VERSION,
        "instance": {"family": spec.family, "rank": spec.rank, "marked": sorted(spec.marked)},
        "flag_type": ",".join(map(str, flag.composition)),
        "jordan_type": str(lam),
        "orbit_dim": orbit_dimension(spec.family, lam),
        "twice_nilradical": 2 * len(p0.nilradical),
        "codim2_neighbors": [",".join(map(str, mu)) for mu in below],
        "very_even": lam.very_even,
        "springer_degree_two": (spec.family, spec.rank, spec.marked) in DEGREE_TWO_FLAGS or None,
    }
    return report.dumps(doc)


def _catalog_job(item):
    return catalog_row(*item)


def cmd_catalog(max_rank: int, skip: int = 0, jobs: int = 1, families=FAMILIES) -> str:
    todo = instances(max_rank, families=families)[skip:]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_catalog_job, todo, chunksize=4))
    else:
        rows = [_catalog_job(t) for t in todo]
    for row in rows:
        row["catalog_version"] = report.CATALOG_VERSION
    return report.catalog_csv(rows)


def _verify_job(item):
    f, r, marked, samples, seed, fault = item
    return [(c.name, c.ok, c.witness) for c in check_instance(f, r, marked, samples, seed, fault)]


def cmd_verify(todo, samples: int, seed: int, jobs: int = 1, inject_fault: bool = False) -> tuple[int, str]:
    items = [(f, r, m, samples, seed, inject_fault and i == 0) for i, (f, r, m) in enumerate(todo)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_job, items, chunksize=2))
    else:
        results = [_verify_job(it) for it in items]
    failures = []
    for (f, r, m), checks in zip(todo, results):
        for name, ok, witness in checks:
            if not ok:
                failures.append({"instance": f"{f}{r}", "marked": sorted(m), "check": name,
                                 "witness": witness})
    for c in check_jordan_vectors() + [check_classification()]:
        if not c.ok:
            failures.append({"check": c.name, "witness": c.witness})
    doc = {
        "version": report.FORMAT_VERSION,
        "instances": len(todo),
        "samples": samples,
        "seed": seed,
        "passed": not failures,
        "failures": failures,
    }
    return (0 if not failures else 2), report.dumps(doc)


def build_parser() -> Parser:
    parser = Parser(prog="paratwist", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    def common(p, instance=True):
        if instance:
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--rank", type=int)
            p.add_argument("--marked", help="comma separated Bourbaki vertices, e.g. 3,4")
        p.add_argument("--seed", type=int)
        p.add_argument("--config", help="key=value file (seed, samples, max_rank, jobs)")
        p.add_argument("--format", choices=["json", "dot", "csv"], default=None)
        return p

    common(sub.add_parser("enumerate", help="list S(l0) with diagrams and nilradicals"))
    common(sub.add_parser("chambers", help="nef cones and walls (JSON with DOT, or DOT)"))
    w = common(sub.add_parser("walk", help="walk from a chamber to a character"))
    w.add_argument("--chi", required=True, help="coordinates on the marked fundamental weights")
    w.add_argument("--start", type=int, default=0, help="start chamber id (BFS order, 0 = standard)")
    common(sub.add_parser("orbit", help="Richardson orbit data for a classical marking"))
    c = common(sub.add_parser("catalog", help="CSV catalog of all markings"), instance=False)
    c.add_argument("--max-rank", type=int, dest="max_rank")
    c.add_argument("--skip", type=int, default=0, help="skip the first rows (resume)")
    c.add_argument("--jobs", type=int)
    c.add_argument("--family", action="append", choices=FAMILIES, dest="families")
    v = common(sub.add_parser("verify", help="run the consistency checks"))
    v.add_argument("--max-rank", type=int, dest="max_rank")
    v.add_argument("--samples", type=int)
    v.add_argument("--jobs", type=int)
    v.add_argument("--inject-fault", action="store_true", help="corrupt one oracle (harness self-test)")
    return parser


def run(argv=None, out=sys.stdout) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = read_config(args.config)
        cmd = args.command
        if cmd == "catalog":
            if args.format not in (None, "csv"):
                raise UsageError("catalog only writes csv")
            families = tuple(args.families) if args.families else FAMILIES
            text = cmd_catalog(setting(args, config, "max_rank"), args.skip,
                               setting(args, config, "jobs"), families)
        elif cmd == "verify":
            samples, seed = setting(args, config, "samples"), setting(args, config, "seed")
            if args.family or args.rank is not None or args.marked is not None:
                spec = instance_from(args, config)
                todo = [(spec.family, spec.rank, spec.marked)]
            else:
                todo = instances(setting(args, config, "max_rank"))
            code, text = cmd_verify(todo, samples, seed, setting(args, config, "jobs"), args.inject_fault)
            out.write(text + "\n")
            return code
        else:
            spec = instance_from(args, config)
            if cmd == "enumerate":
                text = cmd_enumerate(spec)
            elif cmd == "chambers":
                text = cmd_chambers(spec, args.format or "json")
            elif cmd == "walk":
                text = cmd_walk(spec, args.chi, args.start)
            else:
                text = cmd_orbit(spec)
        out.write(text if text.endswith("\n") else text + "\n")
        return 0
    except (ConfigurationError, ValueError, OSError) as e:
        print(f"paratwist: error: {e}", file=sys.stderr)
        return 1
    except InvariantViolation as e:
        print(json.dumps({"invariant_violation": str(e)}), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
