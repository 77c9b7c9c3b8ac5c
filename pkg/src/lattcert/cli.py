"""Command-line front end.

Exit codes: 0 success / verified, 1 certificate failed or partial,
2 parse error, 3 precondition or precision error, 4 resource limit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from lattcert.constructions import (
    VERIFIED, GroupDescriptor, canonical_json, gamma_descriptor, growth_compare, lamplighter_pair,
    lamplighter_descriptor, sl2_lattice_certificate, splitting_prime_set, torus_lattice_certificate,
    worked_example, write_growth_csv,
)
from lattcert.dl import (
    DEFAULT_VERTEX_CAP, DEFAULT_WINDOW, DLVertex, ball_edges, check_lattice_conditions, coverage_constant,
    dl_ball, dl_degree, dl_neighbors, lambda_embed, orbit_bfs, standard_generators,
    switch_walk_generators, write_edge_csv,
)
from lattcert.errors import ParseError, PreconditionError, ResourceError
from lattcert.exact.padic import DEFAULT_PRECISION
from lattcert.exact.poly import parse_poly
from lattcert.fileio import atomic_write
from lattcert.matrix.qmatrix import QMatrix

OK, FAILED, PARSE, PRECONDITION, RESOURCE = 0, 1, 2, 3, 4
OUTPUT_DIR_ENV = "LATTCERT_OUTPUT_DIR"
BUILTIN_EXAMPLE = "builtin:example"


@dataclass
class JobConfig:
    command: str
    params: dict = field(default_factory=dict)
    precision: int = DEFAULT_PRECISION
    window: int = DEFAULT_WINDOW
    radius: int | None = None
    cap: int = DEFAULT_VERTEX_CAP
    out: str | None = None

    def validate(self):
        if self.precision < 1:
            raise PreconditionError("precision must be positive")
        if self.window < 1:
            raise PreconditionError("window must be positive")
        if self.radius is not None and self.radius < 0:
            raise PreconditionError("radius must be nonnegative")
        if self.cap < 1:
            raise PreconditionError("vertex cap must be positive")
        return self

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d


# -- output --------------------------------------------------------------------


def resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def emit(doc: dict, job: JobConfig):
    doc = dict(doc)
    doc["config"] = job.to_json()
    text = canonical_json(doc)
    path = resolve_out(job.out)
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def emit_certificate(cert, job: JobConfig) -> int:
    emit(cert.to_json(), job)
    return OK if cert.overall == VERIFIED else FAILED


# -- parsing helpers -------------------------------------------------------------


def parse_config_text(text: str) -> dict:
    """JSON object, or `key = value` lines with # comments."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON config: {exc}") from exc
        if not isinstance(data, dict):
            raise ParseError("config must be a JSON object")
        return data
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def load_config(path: str) -> tuple[dict, Path]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text), p.parent


def _int(cfg, key, default=None):
    v = cfg.get(key, default)
    if v is None:
        raise ParseError(f"missing {key!r}")
    try:
        return int(v)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{key!r} must be an integer, got {v!r}") from exc


def _bool(cfg, key, default=False):
    v = cfg.get(key, default)
    if isinstance(v, bool):
        return v
    return str(v).strip().lower() in ("1", "true", "yes")


def parse_matrix(value) -> QMatrix:
    try:
        if isinstance(value, list):
            return QMatrix.from_json(value)
        return QMatrix.parse(str(value))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad matrix {value!r}") from exc


def parse_int_list(value) -> list[int]:
    if isinstance(value, list):
        items = value
    else:
        items = [s for s in str(value).replace(";", ",").split(",") if s.strip()]
    try:
        return [int(x) for x in items]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad integer list {value!r}") from exc


def load_torus_data(ref: str, base: Path) -> dict:
    if ref == BUILTIN_EXAMPLE:
        text = resources.files("lattcert").joinpath("data/example_units.json").read_text()
    else:
        p = Path(ref)
        if not p.is_absolute():
            p = base / p
        try:
            text = p.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read data file {ref}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad data file {ref}: {exc}") from exc


def parse_group(spec: str) -> GroupDescriptor:
    """gamma:N | lamplighter:N[:FREE_RANK] | lambda:D:Q | trivial | path to a JSON descriptor."""
    parts = spec.split(":")
    try:
        kind = parts[0].lower()
        if kind == "trivial" and len(parts) == 1:
            return GroupDescriptor("Trivial")
        if kind == "gamma" and len(parts) == 2:
            return gamma_descriptor(int(parts[1]))
        if kind == "lamplighter" and len(parts) in (2, 3):
            return lamplighter_descriptor(int(parts[1]), int(parts[2]) if len(parts) == 3 else 0)
        if kind == "lambda" and len(parts) == 3:
            return GroupDescriptor("Lambda", {"d": int(parts[1]), "q": int(parts[2])})
    except ValueError as exc:
        raise ParseError(f"bad group spec {spec!r}") from exc
    p = Path(spec)
    if p.exists():
        data = parse_config_text(p.read_text())
        try:
            return GroupDescriptor(data.pop("kind"), data)
        except KeyError as exc:
            raise ParseError(f"{spec}: missing 'kind'") from exc
    raise ParseError(f"unrecognised group spec {spec!r}")


# -- commands ----------------------------------------------------------------------


def cmd_split_primes(args) -> int:
    job = JobConfig("split-primes", {"poly": args.poly, "bound": args.bound}, out=args.out).validate()
    f = parse_poly(args.poly)
    report = splitting_prime_set(f, args.bound)
    doc = report.to_json()
    doc["poly"] = str(f)
    emit(doc, job)
    return OK


def cmd_example(args) -> int:
    job = JobConfig("example", {"poly": args.poly}, precision=args.precision, out=args.out).validate()
    return emit_certificate(worked_example(job.precision, args.poly), job)


def cmd_certify(args) -> int:
    cfg, base = load_config(args.config)
    construction = str(cfg.get("construction", "")).lower()
    N = _int(cfg, "precision", DEFAULT_PRECISION)
    job = JobConfig("certify", dict(cfg), precision=N, out=args.out or cfg.get("out")).validate()
    job.params.pop("out", None)
    if construction == "sl2":
        M = parse_matrix(cfg.get("matrix"))
        cert = sl2_lattice_certificate(M, _int(cfg, "search_bound", 10), N)
    elif construction == "pair":
        cert = lamplighter_pair(_int(cfg, "n"), _int(cfg, "search_bound", 10), N,
                                _int(cfg, "orbit_radius", 3))
    elif construction == "torus":
        data = dict(cfg)
        if "data" in cfg:
            data.update(load_torus_data(str(cfg["data"]), base))
        M = parse_matrix(data.get("matrix"))
        primes = parse_int_list(data.get("primes", []))
        cands = data.get("candidates")
        if isinstance(cands, str):
            try:
                cands = json.loads(cands)
            except json.JSONDecodeError as exc:
                raise ParseError("candidates must be a JSON list") from exc
        if not isinstance(cands, list):
            raise ParseError("torus construction needs a candidate list")
        cert = torus_lattice_certificate(M, primes, cands, N, _bool(data, "assume_irreducible"))
    else:
        raise ParseError(f"unknown construction {construction!r} (expected sl2, pair or torus)")
    return emit_certificate(cert, job)


def _branchings(args):
    ns = parse_int_list(args.n)
    if len(ns) == 1:
        ns = ns * args.d
    if len(ns) != args.d:
        raise ParseError(f"need 1 or {args.d} branching numbers, got {len(ns)}")
    return tuple(ns)


def cmd_dl(args) -> int:
    if args.dl_command == "degree":
        ns = _branchings(args)
        job = JobConfig("dl degree", {"d": args.d, "n": list(ns)}, out=args.out).validate()
        v = DLVertex.base(ns)
        emit({"degree": len(dl_neighbors(v)), "formula": dl_degree(ns)}, job)
        return OK
    if args.dl_command == "ball":
        ns = _branchings(args)
        job = JobConfig("dl ball", {"d": args.d, "n": list(ns), "csv": args.csv}, radius=args.radius,
                        cap=args.cap, out=args.out).validate()
        vertices, spheres = dl_ball(DLVertex.base(ns), args.radius, args.cap)
        doc = {"vertices": len(vertices), "sphere_sizes": spheres}
        if args.csv:
            edges = ball_edges(vertices)
            write_edge_csv(resolve_out(args.csv), edges)
            doc["edges"] = len(edges)
        emit(doc, job)
        return OK
    if args.dl_command == "orbit":
        q = args.q
        job = JobConfig("dl orbit", {"group": args.group, "q": q, "generators": args.generators},
                        precision=args.precision, radius=args.radius, cap=args.cap, out=args.out).validate()
        gens = switch_walk_generators(q) if args.generators == "switch-walk" else standard_generators(2, q)
        orbit = orbit_bfs([lambda_embed(g, job.precision) for g in gens], DLVertex.base((q, q)),
                          args.radius, cap=args.cap)
        C, contained = coverage_constant(orbit, args.cap)
        emit({"orbit_sphere_sizes": orbit.sphere_sizes(), "orbit_size": len(orbit.vertices),
              "coverage_constant": C, "orbit_within_graph_ball": contained}, job)
        return OK
    if args.dl_command == "conditions":
        job = JobConfig("dl conditions", {"d": args.d, "q": args.q, "field": args.field},
                        window=args.window, out=args.out).validate()
        report = check_lattice_conditions(args.d, args.q, job.window, args.field)
        emit(report, job)
        return OK if report["passed"] else FAILED
    raise ParseError("unknown dl subcommand")


def cmd_growth(args) -> int:
    job = JobConfig("growth", {"a": args.a, "b": args.b, "csv": args.csv}, radius=args.radius,
                    cap=args.cap, out=args.out).validate()
    A, B = parse_group(args.a), parse_group(args.b)
    rows, report = growth_compare(A, B, args.radius, args.cap)
    if args.csv:
        write_growth_csv(resolve_out(args.csv), rows)
    emit({"table": rows, "report": report}, job)
    return OK


# -- entry point --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(PARSE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lattcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("split-primes", help="primes where a polynomial splits over Q_p")
    sp.add_argument("poly", help='e.g. "t^3-5t^2+6t-1" or "-1,6,-5,1"')
    sp.add_argument("--bound", type=int, default=100)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_split_primes)

    ex = sub.add_parser("example", help="verify the rank-4 cubic example")
    ex.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    ex.add_argument("--poly", default="t^3 - 5t^2 + 6t - 1")
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_example)

    ce = sub.add_parser("certify", help="run a construction from a config file")
    ce.add_argument("config")
    ce.add_argument("--out")
    ce.set_defaults(func=cmd_certify)

    dl = sub.add_parser("dl", help="Diestel-Leader graph utilities")
    dsub = dl.add_subparsers(dest="dl_command", required=True, parser_class=_Parser)
    for name in ("degree", "ball"):
        p = dsub.add_parser(name)
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--n", default="2", help="branching, one value or d comma-separated values")
        p.add_argument("--out")
        if name == "ball":
            p.add_argument("--radius", type=int, default=3)
            p.add_argument("--csv")
            p.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP)
    orb = dsub.add_parser("orbit")
    orb.add_argument("--group", choices=["lamplighter"], default="lamplighter")
    orb.add_argument("--q", type=int, default=2)
    orb.add_argument("--radius", type=int, default=6)
    orb.add_argument("--generators", choices=["switch-walk", "standard"], default="switch-walk")
    orb.add_argument("--precision", type=int, default=12)
    orb.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP)
    orb.add_argument("--out")
    cond = dsub.add_parser("conditions", help="truncated lattice conditions for K^d x| Diag")
    cond.add_argument("--d", type=int, default=2)
    cond.add_argument("--q", type=int, default=2)
    cond.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    cond.add_argument("--field", choices=["laurent", "padic"], default="laurent")
    cond.add_argument("--out")
    dl.set_defaults(func=cmd_dl)

    gr = sub.add_parser("growth", help="compare word-ball growth of two groups")
    gr.add_argument("--a", required=True, help="gamma:N | lamplighter:N[:RANK] | lambda:D:Q | trivial")
    gr.add_argument("--b", required=True)
    gr.add_argument("--radius", type=int, default=8)
    gr.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP)
    gr.add_argument("--csv")
    gr.add_argument("--out")
    gr.set_defaults(func=cmd_growth)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return RESOURCE
    except PreconditionError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
