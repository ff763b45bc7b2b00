"""``cayring`` command line: describe rings, export graphs, compute invariants, run checks.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import invariants as inv
from .dsl import ring_from_spec, ring_to_spec
from .errors import CapExceeded, CayringError, RingSpecError
from .graph import (
    Graph,
    build_cay,
    build_gcd_graph,
    build_reg,
    build_total_graph,
    build_unitary_cayley,
    quotient_graph,
    translation_is_automorphism,
)
from .ring import DEFAULT_ORDER_CAP, crt_decompose, is_field, is_local, local_factor_data
from .verifier import THEOREM_IDS, Caps, ProductFamily, ZnFamily, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
GRAPH_KINDS = ("cay", "total", "unitary", "gcd", "reg", "quotient")


@dataclass
class CliConfig:
    subcommand: str
    ring: str | None
    graph: str
    format: str
    out: str | None
    cap_order: int
    cap_hole: int
    cap_ham: int


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _counts(text: str) -> tuple[int, ...]:
    """``2`` or ``2-3`` or ``2,3``."""
    try:
        if "-" in text:
            a, b = (int(x) for x in text.split("-", 1))
            out = tuple(range(a, b + 1))
        else:
            out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad factor count {text!r}")
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad factor count {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def caps(sp):
        sp.add_argument("--cap-order", type=_positive, default=DEFAULT_ORDER_CAP)
        sp.add_argument("--cap-hole", type=_positive, default=inv.HOLE_CAP)
        sp.add_argument("--cap-ham", type=_positive, default=inv.HAMILTON_CAP)

    def out(sp, formats, default):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write to this file instead of stdout")

    def graph_args(sp):
        sp.add_argument("--ring", help="ring in the Z/GF/x DSL, e.g. 'Z4 x GF(9)'")
        sp.add_argument("--graph", choices=GRAPH_KINDS, default="cay")
        sp.add_argument("--n", type=_positive, help="modulus for --graph gcd")
        sp.add_argument("--T", type=_int_list, help="divisor set for --graph gcd, e.g. 2,3")

    d = sub.add_parser("ring", aliases=["describe"], help="order, strata sizes and residue fields")
    d.add_argument("--ring", required=True)
    out(d, ("text", "json"), "text")
    caps(d)

    g = sub.add_parser("graph", help="export a graph as DOT, JSON or an edge CSV")
    graph_args(g)
    out(g, ("dot", "json", "csv"), "dot")
    caps(g)

    i = sub.add_parser("invariants", help="exact invariants of a graph, subject to caps")
    graph_args(i)
    out(i, ("text", "json", "csv"), "text")
    caps(i)

    v = sub.add_parser("verify", help="run theorem checks over ring families")
    v.add_argument("--zn-max", type=_positive, help="include Z_n for 2 <= n <= N")
    v.add_argument("--products", type=_counts, help="include products of K local rings (K, K-L or K,L)")
    v.add_argument("--max-order", type=_positive, default=64, help="order bound for --products")
    v.add_argument("--ring", action="append", default=[], help="include one ring (repeatable)")
    t = v.add_mutually_exclusive_group()
    t.add_argument("--theorems", help="comma-separated theorem ids")
    t.add_argument("--all", action="store_true", help="every theorem (default)")
    out(v, ("csv", "json", "text"), "csv")
    v.add_argument("--detail", help="also write the JSON detail (with witnesses) here")
    v.add_argument("--timings", action="store_true", help="fill the millis column (output is then not reproducible)")
    v.add_argument("--threads", type=_positive, help="worker processes (default: CAYRING_THREADS or 1)")
    caps(v)
    return p


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return str(x)


def _json_value(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


# ---------------------------------------------------------------------------


def cmd_ring_describe(args) -> int:
    R = ring_from_spec(args.ring, args.cap_order)
    S = R.strata
    data = local_factor_data(R)
    info = {
        "ring": ring_to_spec(R) or args.ring,
        "order": R.order,
        "units": len(S.units),
        "zero_divisors": len(S.zero_divisors),
        "nilradical": len(S.nilradical),
        "jacobson": len(S.jacobson),
        "maximal_ideals": len(data),
        "local": is_local(R),
        "field": is_field(R),
        "residue_fields": [d.residue_field_size for d in data],
    }
    if args.format == "json":
        _emit(json.dumps(info, indent=2) + "\n", args.out)
    else:
        lines = [
            f"ring            {info['ring']}",
            f"order           {R.order}",
            f"|U|             {info['units']}",
            f"|Z|             {info['zero_divisors']}",
            f"|Nil|           {info['nilradical']}",
            f"|J|             {info['jacobson']}",
            f"|Max(R)|        {info['maximal_ideals']}",
            f"local           {_fmt(info['local'])}",
            f"field           {_fmt(info['field'])}",
            "residue fields  " + " ".join(str(q) for q in info["residue_fields"]),
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _build_graph(args) -> tuple[Graph, bool]:
    """The requested graph, and whether its translations make it vertex-transitive."""
    if args.graph == "gcd":
        if args.n is None or args.T is None:
            raise _Usage("--graph gcd needs --n and --T")
        return build_gcd_graph(args.n, args.T), False
    if args.ring is None:
        raise _Usage(f"--graph {args.graph} needs --ring")
    R = ring_from_spec(args.ring, args.cap_order)
    if args.graph == "cay":
        G = build_cay(R)
    elif args.graph == "unitary":
        G = build_unitary_cayley(R)
    elif args.graph == "total":
        return _residue_order(build_total_graph(R), args.ring), False
    elif args.graph == "reg":
        return build_reg(R), False
    else:
        return quotient_graph(build_cay(R))[0], False
    transitive = all(translation_is_automorphism(G, R, g) for g in range(R.order))
    return _residue_order(G, args.ring), transitive


def _residue_order(G: Graph, spec: str) -> Graph:
    """A bare ``Zn`` is stored in CRT product order; relabel its vertices 0..n-1."""
    m = re.fullmatch(r"\s*Z\s*(\d+)\s*", spec)
    if m is None:
        return G
    n = int(m.group(1))
    if n != G.n:
        return G
    b = crt_decompose(n).bijection
    return Graph(G.adj[np.ix_(b, b)], [str(r) for r in range(n)], check=False)


class _Usage(Exception):
    pass


def cmd_graph(args) -> int:
    G, _ = _build_graph(args)
    if args.format == "dot":
        text = G.to_dot()
    elif args.format == "json":
        text = json.dumps(G.to_json(), indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v"])
        w.writerows(G.edges())
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def compute_invariants(G: Graph, transitive: bool = False, cap_hole: int = inv.HOLE_CAP,
                       cap_ham: int = inv.HAMILTON_CAP, cap_exact: int = inv.EXACT_CAP):
    """Invariant table; entries whose oracle exceeds its cap are recorded in ``capped``."""
    table: dict = {"vertices": G.n, "edges": G.num_edges}
    witnesses: dict = {}
    capped: list[str] = []
    table["components"] = len(inv.components(G))
    table["diameter"] = inv.diameter(G)
    table["min_degree"] = inv.minimum_degree(G)
    table["kappa"] = inv.vertex_connectivity(G, transitive)
    table["kappa_edge"] = inv.edge_connectivity(G)
    try:
        table["omega"], witnesses["clique"] = inv.max_clique(G, cap_exact)
        chi, col = inv.chromatic_number(G, cap_exact)
        table["chi"] = chi
        witnesses["coloring"] = col.colors
    except CapExceeded as exc:
        capped.append(str(exc))
    try:
        res = inv.is_perfect_small(G, cap_hole)
        table["perfect"] = res.perfect
        if not res.perfect:
            witnesses["odd_hole"] = res.to_json()
    except CapExceeded as exc:
        capped.append(str(exc))
    try:
        ok, cycle = inv.is_hamiltonian(G, cap_ham)
        table["hamiltonian"] = ok
        if ok:
            witnesses["hamiltonian_cycle"] = cycle
    except CapExceeded as exc:
        capped.append(str(exc))
    return table, witnesses, capped


def cmd_invariants(args) -> int:
    G, transitive = _build_graph(args)
    table, witnesses, capped = compute_invariants(G, transitive, args.cap_hole, args.cap_ham)
    if args.format == "json":
        doc = {"graph": args.graph, "ring": args.ring,
               "invariants": {k: _json_value(v) for k, v in table.items()},
               "witnesses": witnesses, "capped": capped}
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["invariant", "value"])
        for k, v in table.items():
            w.writerow([k, _fmt(v)])
        _emit(buf.getvalue(), args.out)
    else:
        lines = [f"{k:<12} {_fmt(v)}" for k, v in table.items()]
        if "odd_hole" in witnesses:
            h = witnesses["odd_hole"]
            lines.append(f"{'odd hole':<12} {' '.join(map(str, h['hole']))} (in {h['graph']})")
        lines += [f"capped       {c}" for c in capped]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_CAP if capped else EXIT_OK


def cmd_verify(args, parser) -> int:
    if args.theorems:
        theorems = [t.strip() for t in args.theorems.split(",") if t.strip()]
        bad = [t for t in theorems if t not in THEOREM_IDS]
        if bad or not theorems:
            parser.error(f"unknown theorem id(s) {', '.join(bad) or '(none)'}; "
                         f"choose from {', '.join(THEOREM_IDS)}")
    else:
        theorems = list(THEOREM_IDS)
    families: list = []
    if args.zn_max:
        families.append(ZnFamily(args.zn_max))
    if args.products:
        families.append(ProductFamily(args.products, args.max_order))
    specs: list[str] = []
    for fam in families:
        specs += [s for s in fam.specs() if s not in specs]
    for s in args.ring:
        ring_from_spec(s, args.cap_order)  # surface parse errors before the run
        if s not in specs:
            specs.append(s)
    if not specs:
        parser.error("no rings selected: use --zn-max, --products or --ring")
    caps = Caps(order=args.cap_order, hole=args.cap_hole, hamiltonian=args.cap_ham)
    result = run_suite(specs, theorems, caps, threads=args.threads)
    if args.format == "csv":
        text = result.to_csv(args.timings)
    elif args.format == "json":
        text = json.dumps(result.to_json(args.timings), indent=1) + "\n"
    else:
        text = result.summary_text()
    _emit(text, args.out)
    if args.detail:
        _emit(json.dumps(result.to_json(args.timings), indent=1) + "\n", args.detail)
    if args.out or args.format != "text":
        sys.stderr.write(result.summary_text())
    return EXIT_OK if result.ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("ring", "describe"):
            return cmd_ring_describe(args)
        if args.command == "graph":
            return cmd_graph(args)
        if args.command == "invariants":
            return cmd_invariants(args)
        return cmd_verify(args, parser)
    except _Usage as exc:
        parser.error(str(exc))
    except CapExceeded as exc:
        sys.stderr.write(f"cayring: cap exceeded: {exc}\n")
        return EXIT_CAP
    except RingSpecError as exc:
        sys.stderr.write(f"cayring: {type(exc).__name__}: {exc}\n")
        if exc.text:
            sys.stderr.write(f"  {exc.text}\n  {' ' * exc.offset}^\n")
        return EXIT_USAGE
    except CayringError as exc:
        sys.stderr.write(f"cayring: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"cayring: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
