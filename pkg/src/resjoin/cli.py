"""Command-line front end: ``resjoin <construct|resist|indices|verify|bench>``.

Graphs are given as ``cycle:N``, ``path:N``, ``complete:N``, ``kbip:P,Q``,
``empty:N`` or ``file:PATH`` (edge-list text file).

Exit codes: 0 ok, 1 verification failure, 2 usage, parse or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .errors import BadParams, ParseError, ResJoinError
from .graph import Graph, LabeledJoinGraph, construct, cycle, complete, generate, \
    is_regular, read_edge_list
from .indices import index_report
from .resistance import compute, cvj_matrix, oracle_matrix
from .verify import ENGINE_TOL, run_verify

SCHEMA = 1
SIG_DIGITS = 12
KINDS = ("central", "cvj", "cej")

_SPEC_FAMILIES = {"cycle": "cycle", "path": "path", "complete": "complete",
                  "kbip": "complete_bipartite", "empty": "empty"}


@dataclass
class RunConfig:
    command: str
    kind: Optional[str] = None
    inputs: list[str] = field(default_factory=list)
    fmt: str = "json"
    engine: str = "auto"
    check: bool = False
    tol: float = ENGINE_TOL
    sizes: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.tol > 0:
            raise BadParams("tolerance must be positive")
        if self.kind is not None:
            want = 1 if self.kind == "central" else 2
            if len(self.inputs) != want:
                raise BadParams(f"{self.kind} takes {want} graph spec(s), got {len(self.inputs)}")


def parse_graph_spec(spec: str) -> Graph:
    """Parse the generator mini-grammar, e.g. ``kbip:2,3`` or ``file:g.txt``."""
    family, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise ParseError(f"graph spec {spec!r} must look like family:params")
    if family == "file":
        try:
            return read_edge_list(arg)
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc}") from None
    if family not in _SPEC_FAMILIES:
        raise ParseError(f"unknown graph family {family!r}")
    try:
        params = [int(x) for x in arg.split(",")]
    except ValueError:
        raise ParseError(f"non-integer parameter in {spec!r}") from None
    return generate(_SPEC_FAMILIES[family], *params)


def fmt_value(x: float) -> str:
    return format(float(x), f".{SIG_DIGITS}g")


def round_sig(x: float) -> float:
    return float(fmt_value(x))


def matrix_to_csv(R: np.ndarray) -> str:
    return "".join(",".join(fmt_value(v) for v in row) + "\n" for row in R)


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    return np.array([[float(v) for v in r] for r in rows])


def _classes(Gj: LabeledJoinGraph) -> list[dict]:
    return [{"vertex": v, "class": lab.kind.value, "source": lab.source}
            for v, lab in enumerate(Gj.classes)]


def _pretty_matrix(R: np.ndarray) -> str:
    return "\n".join(" ".join(f"{v:8.4f}" for v in row) for row in R) + "\n"


# -- commands -------------------------------------------------------------------------


def _graphs(cfg: RunConfig) -> tuple[Graph, Optional[Graph]]:
    gs = [parse_graph_spec(s) for s in cfg.inputs]
    return gs[0], (gs[1] if len(gs) > 1 else None)


def cmd_construct(cfg: RunConfig, out) -> int:
    G1, G2 = _graphs(cfg)
    if cfg.kind == "cej" and is_regular(G1) is None:
        print("warning: G1 is not regular; the closed-form edge-join engine will not apply",
              file=sys.stderr)
    Gj = construct(cfg.kind, G1, G2)
    H = Gj.graph
    if cfg.fmt == "json":
        json.dump({"schema": SCHEMA, "kind": cfg.kind, "order": H.n, "size": H.m,
                   "edges": [list(e) for e in H.edges], "classes": _classes(Gj)}, out)
        out.write("\n")
    elif cfg.fmt == "csv":
        out.write("u,v\n")
        out.writelines(f"{i},{j}\n" for i, j in H.edges)
    else:
        out.write(f"{H.n} {H.m}\n")
        out.writelines(f"{i} {j}\n" for i, j in H.edges)
        for v, lab in enumerate(Gj.classes):
            out.write(f"# {v} {lab.kind.value} {lab.source}\n")
    return 0


def cmd_resist(cfg: RunConfig, out) -> int:
    G1, G2 = _graphs(cfg)
    rep = compute(cfg.kind, G1, G2, cfg.engine, check=cfg.check)
    if cfg.check and rep.oracle_deviation is None:
        rep.oracle_deviation = 0.0
    R = rep.R
    if cfg.fmt == "json":
        doc = {"schema": SCHEMA, "kind": cfg.kind, "order": R.shape[0],
               "classes": _classes(rep.graph), "engine": rep.engine.value,
               "R": [[round_sig(v) for v in row] for row in R]}
        if rep.oracle_deviation is not None:
            doc["oracle_deviation"] = rep.oracle_deviation
        json.dump(doc, out)
        out.write("\n")
    elif cfg.fmt == "csv":
        out.write(matrix_to_csv(R))
    else:
        out.write(f"engine: {rep.engine.value}\n")
        out.write(_pretty_matrix(R))
        if rep.oracle_deviation is not None:
            out.write(f"oracle deviation: {rep.oracle_deviation:.3g}\n")
    if cfg.check and rep.oracle_deviation > cfg.tol:
        print(f"oracle deviation {rep.oracle_deviation:.3g} exceeds {cfg.tol:g}", file=sys.stderr)
        return 1
    return 0


def cmd_indices(cfg: RunConfig, out) -> int:
    G1, G2 = _graphs(cfg)
    report = index_report(cfg.kind, G1, G2, cfg.engine)
    doc = {"schema": SCHEMA, **report.as_dict()}
    if cfg.fmt == "pretty":
        for key, value in doc.items():
            if key != "reported":
                out.write(f"{key}: {value}\n")
        for r in report.reported:
            out.write(f"reported {r.tag}: {fmt_value(r.reported)} vs computed "
                      f"{fmt_value(r.computed)} (deviation {r.deviation:+.6g})\n")
    else:
        json.dump(doc, out, default=float)
        out.write("\n")
    return 0


def cmd_verify(args, out) -> int:
    result = run_verify(max_n=args.max_n, max_n1=args.max_n1, max_n2=args.max_n2,
                        max_n1_regular=args.max_n1_regular, max_n_index=args.max_n_index,
                        n_random=args.random, tol=args.tol, seed=args.seed)
    for c in result.checks:
        out.write(c.line() + "\n")
        for f in c.failures[:5]:
            out.write(f"      {f}\n")
    worst = max(result.worst(p) for p in ("central:", "cvj:", "cej:"))
    out.write(f"worst engine deviation: {worst:.3g}\n")
    out.write("documented discrepancies (informational):\n")
    for r in result.ledger:
        out.write(f"INFO  {r.tag:<36} reported={fmt_value(r.reported):<14} "
                  f"computed={fmt_value(r.computed):<14} deviation={r.deviation:+.6g}  {r.note}\n")
    out.write("verify: " + ("PASS" if result.passed else "FAIL") + "\n")
    return 0 if result.passed else 1


def bench_rows(sizes: Sequence[int], repeats: int = 3) -> list[dict]:
    """Closed-form vs full-Laplacian oracle timings on ``C_n`` vertex-joined with ``K_ceil(n/2)``."""
    rows = []
    for n in sizes:
        G1, G2 = cycle(n), complete(math.ceil(n / 2))
        Gj = construct("cvj", G1, G2)
        t_closed = t_oracle = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            R_closed = cvj_matrix(G1, G2)
            t1 = time.perf_counter()
            R_oracle = oracle_matrix(Gj)
            t2 = time.perf_counter()
            t_closed, t_oracle = min(t_closed, t1 - t0), min(t_oracle, t2 - t1)
        rows.append({"n": n, "order": Gj.graph.n, "closed_seconds": t_closed,
                     "oracle_seconds": t_oracle, "ratio": t_oracle / t_closed,
                     "max_abs_dev": float(np.max(np.abs(R_closed - R_oracle)))})
    return rows


def cmd_bench(cfg: RunConfig, out) -> int:
    fields = ["n", "order", "closed_seconds", "oracle_seconds", "ratio", "max_abs_dev"]
    w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in bench_rows(cfg.sizes):
        w.writerow({k: (fmt_value(v) if isinstance(v, float) else v) for k, v in row.items()})
    return 0


# -- entry point -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resjoin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("kind", choices=KINDS)
        p.add_argument("graphs", nargs="+", metavar="GRAPH")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--tol", type=float, default=ENGINE_TOL)
        return p

    graph_command("construct", "build a central graph or central join")
    p = graph_command("resist", "resistance matrix")
    p.add_argument("--engine", choices=("auto", "oracle", "closed", "block"), default="auto")
    p.add_argument("--check", action="store_true", help="report deviation from the oracle")
    p = graph_command("indices", "Kirchhoff index, Kemeny's constant and published-formula checks")
    p.add_argument("--engine", choices=("auto", "oracle", "closed", "block"), default="auto")

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--max-n", type=int, default=6, help="central graphs: max order of G")
    p.add_argument("--max-n1", type=int, default=5)
    p.add_argument("--max-n2", type=int, default=4)
    p.add_argument("--max-n1-regular", type=int, default=None,
                   help="edge joins: max order of regular G1 (default max-n1 + 1)")
    p.add_argument("--max-n-index", type=int, default=7)
    p.add_argument("--random", type=int, default=200, help="random instances per suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=ENGINE_TOL)

    p = sub.add_parser("bench", help="closed form vs oracle timing table (CSV)")
    p.add_argument("sizes", nargs="*", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        if args.command == "verify":
            if not args.tol > 0:
                raise BadParams("tolerance must be positive")
            return cmd_verify(args, out)
        cfg = RunConfig(command=args.command, kind=getattr(args, "kind", None),
                        inputs=getattr(args, "graphs", []),
                        fmt=getattr(args, "format", "csv"),
                        engine=getattr(args, "engine", "auto"),
                        check=getattr(args, "check", False),
                        tol=getattr(args, "tol", ENGINE_TOL),
                        sizes=getattr(args, "sizes", []))
        handler = {"construct": cmd_construct, "resist": cmd_resist,
                   "indices": cmd_indices, "bench": cmd_bench}[args.command]
        return handler(cfg, out)
    except ResJoinError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
