"""Command-line surface: gen | shortcut | hopset | verify | decomp | bench.

Exit codes: 0 ok, 1 verification failure, 2 usage or input error.  Every
randomized subcommand takes a mandatory --seed, so identical command lines
produce identical output files.  Bench emits one CSV row per grid cell, in
config order; cells may run in parallel up to SHORTCUT_FORGE_THREADS.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chain_decomp import decompose
from .generators import FAMILIES, GenSpec, generate, subdivide
from .graph_core import (
    Digraph,
    WeightedDigraph,
    closure_digraph,
    dump_edge_list,
    load_edge_list,
    transitive_closure,
)
from .hopset_algos import HOPSET_TAGS, as_eps, build_hopset, hopset_large_hop, hopset_small_hop
from .oracles import verify_hopset, verify_shortcut
from .shortcut_algos import TAGS, _tc_spanner_parts, build_shortcuts, folklore

SHORTCUT_MODES = ("auto", "small", "large", "folklore", "tcspanner")
BENCH_ALGOS = ("folklore", "small_diam", "large_d", "hopset_small", "hopset_large")

CSV_COLUMNS = (
    "algorithm",
    "family",
    "n",
    "D",
    "beta",
    "eps",
    "c",
    "seed",
    "edges_total",
    *TAGS,
    *HOPSET_TAGS,
    "achieved_diameter",
    "achieved_hops",
    "achieved_stretch",
    "wall_ms",
)


def _read_graph(path: str) -> Digraph | WeightedDigraph:
    report = load_edge_list(Path(path).read_text())
    return report.graph


def _write_tagged(
    path: str, n: int, rows: list[tuple], comments: list[str]
) -> None:
    out = [f"# {c}" for c in comments]
    out.append(f"{n} {len(rows)}")
    out.extend(" ".join(str(f) for f in row) for row in rows)
    Path(path).write_text("\n".join(out) + "\n")


def _read_tagged(path: str) -> tuple[int, list[tuple]]:
    """Read files written by the shortcut/hopset subcommands.

    Rows are "u v tag" or "u v w tag"; the tag column is optional so plain
    edge lists verify too.
    """
    rows: list[tuple] = []
    n = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        if n is None:
            if len(toks) < 2:
                raise ValueError(f"line {lineno}: header must start with 'n m'")
            n = int(toks[0])
            continue
        ints = []
        for t in toks:
            try:
                ints.append(int(t))
            except ValueError:
                break
        if len(ints) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u v [w] [tag]'")
        rows.append(tuple(ints))
    if n is None:
        raise ValueError("empty edge file")
    return n, rows


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(args.family, args.n, args.p, args.density, args.W, args.seed)
    g = generate(spec)
    comments = [
        f"shortcutforge gen --family {args.family} --n {args.n} --seed {args.seed}"
    ]
    if args.p is not None:
        comments[0] += f" --p {args.p}"
    if args.density is not None:
        comments[0] += f" --density {args.density}"
    if args.W is not None:
        comments[0] += f" --W {args.W}"
    if args.k is not None:
        if isinstance(g, WeightedDigraph):
            raise ValueError("--k subdivision applies to unweighted families only")
        comments[0] += f" --k {args.k}"
        g, placement = subdivide(g, args.k)
        comments.append(
            "subdivided: original vertex v maps to copies "
            f"[v*{args.k + 1}, v*{args.k + 1}+{args.k}]"
        )
        del placement  # reconstructible from k; kept out of the file format
    Path(args.out).write_text(dump_edge_list(g, comments))
    print(f"wrote {args.out} (n={g.n}, m={g.m})")
    return 0


def _as_digraph(g: Digraph | WeightedDigraph) -> Digraph:
    if isinstance(g, WeightedDigraph):
        return Digraph(g.n, ((u, v) for u, v, _ in g.edges))
    return g


def _cmd_shortcut(args: argparse.Namespace) -> int:
    g = _as_digraph(_read_graph(args.input))
    head = (
        f"shortcutforge shortcut --diameter {args.diameter} --const {args.const}"
        f" --seed {args.seed} --mode {args.mode}"
    )
    if args.mode == "folklore":
        hs = folklore(g, args.diameter, args.const, seed=args.seed)
        rows = list(hs.tagged)
    elif args.mode == "tcspanner":
        base, hs = _tc_spanner_parts(g, args.diameter, args.const, args.seed)
        rows = [(u, v, "baseline") for u, v in sorted(base.edges)]
        rows.extend(t for t in hs.tagged if (t[0], t[1]) not in base.edges)
    else:
        hs = build_shortcuts(g, args.diameter, args.const, seed=args.seed, mode=args.mode)
        rows = list(hs.tagged)
    counts: dict[str, int] = {}
    for row in rows:
        counts[row[-1]] = counts.get(row[-1], 0) + 1
    summary = " ".join(f"{t}={counts.get(t, 0)}" for t in TAGS)
    _write_tagged(args.out, g.n, rows, [head, f"edge counts: {summary}"])
    print(f"wrote {args.out} ({len(rows)} edges)")
    return 0


def _cmd_hopset(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    if not isinstance(g, WeightedDigraph):
        raise ValueError("hopset needs a weighted graph file (header 'n m W')")
    eps = as_eps(args.eps)
    hs = build_hopset(g, args.beta, eps, args.const, seed=args.seed)
    head = (
        f"shortcutforge hopset --beta {args.beta} --eps {eps}"
        f" --const {args.const} --seed {args.seed}"
    )
    summary = " ".join(f"{t}={hs.tag_counts[t]}" for t in HOPSET_TAGS)
    _write_tagged(args.out, g.n, list(hs.tagged), [head, f"edge counts: {summary}"])
    print(f"wrote {args.out} ({len(hs)} edges)")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    n, rows = _read_tagged(args.edges)
    if n != g.n:
        raise ValueError(f"edge file is for n={n}, graph has n={g.n}")
    if args.mode == "shortcut":
        if args.diameter is None:
            raise ValueError("verify --mode shortcut needs --diameter")
        pairs = frozenset((r[0], r[1]) for r in rows)
        report = verify_shortcut(_as_digraph(g), pairs, args.diameter, instance=args.edges)
    else:
        if args.beta is None or args.eps is None:
            raise ValueError("verify --mode hopset needs --beta and --eps")
        if not isinstance(g, WeightedDigraph):
            raise ValueError("hopset verification needs a weighted graph file")
        bad = [r for r in rows if len(r) != 3]
        if bad:
            raise ValueError(f"hopset edge rows need weights; got {bad[0]}")
        report = verify_hopset(g, frozenset(rows), args.beta, as_eps(args.eps), instance=args.edges)
    for check in report.checks:
        line = f"{check.name}: {check.status}"
        if check.detail:
            line += f" ({check.detail})"
        if check.witness is not None:
            line += f" witness={check.witness}"
        print(line)
    for label, value in (
        ("achieved diameter", report.achieved_diameter),
        ("achieved hops", report.achieved_hops),
        ("achieved stretch", report.achieved_stretch),
    ):
        if value is not None:
            print(f"{label}: {value}")
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n")
    return 0 if report.ok else 1


def _cmd_decomp(args: argparse.Namespace) -> int:
    g = _as_digraph(_read_graph(args.input))
    if args.closure:
        g = closure_digraph(transitive_closure(g))
    decomp = decompose(g, args.ell)
    for chain in decomp.chains:
        print("chain: " + " ".join(map(str, chain)))
    for anti in decomp.antichains:
        print("antichain: " + " ".join(map(str, sorted(anti))))
    return 0


@dataclass(frozen=True)
class _BenchCell:
    lineno: int
    algorithm: str
    family: str
    n: int
    p: float | None = None
    density: float | None = None
    W: int | None = None
    d: int | None = None
    beta: int | None = None
    eps: Fraction | None = None
    c: float = 3.0
    seed: int = 0


def _parse_seed_values(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi)))
    return [int(t) for t in text.split(",")]


def _parse_bench_config(text: str) -> list[_BenchCell]:
    cells: list[_BenchCell] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        fields: dict[str, str] = {}
        for tok in body.split():
            if "=" not in tok:
                raise ValueError(f"config line {lineno}: expected key=value, got {tok!r}")
            key, value = tok.split("=", 1)
            if key in fields:
                raise ValueError(f"config line {lineno}: duplicate key {key!r}")
            fields[key] = value
        known = {"algorithm", "family", "n", "p", "density", "W", "D", "beta", "eps", "c", "seeds"}
        for key in fields:
            if key not in known:
                raise ValueError(f"config line {lineno}: unknown key {key!r}")
        try:
            algorithm = fields["algorithm"]
            family = fields["family"]
            n = int(fields["n"])
        except KeyError as missing:
            raise ValueError(f"config line {lineno}: missing key {missing}") from None
        if algorithm not in BENCH_ALGOS:
            raise ValueError(f"config line {lineno}: unknown algorithm {algorithm!r}")
        if family not in FAMILIES:
            raise ValueError(f"config line {lineno}: unknown family {family!r}")
        base = _BenchCell(
            lineno,
            algorithm,
            family,
            n,
            p=float(fields["p"]) if "p" in fields else None,
            density=float(fields["density"]) if "density" in fields else None,
            W=int(fields["W"]) if "W" in fields else None,
        )
        hopset = algorithm.startswith("hopset")
        if hopset:
            if family != "weighted_random":
                raise ValueError(
                    f"config line {lineno}: {algorithm} needs family=weighted_random"
                )
            if "beta" not in fields or "eps" not in fields:
                raise ValueError(f"config line {lineno}: {algorithm} needs beta= and eps=")
            knob_values = [int(b) for b in fields["beta"].split(",")]
            eps = Fraction(fields["eps"])
        else:
            if family == "weighted_random":
                raise ValueError(
                    f"config line {lineno}: {algorithm} needs an unweighted family"
                )
            if "D" not in fields:
                raise ValueError(f"config line {lineno}: {algorithm} needs D=")
            knob_values = [int(d) for d in fields["D"].split(",")]
            eps = None
        c_values = [float(v) for v in fields.get("c", "3").split(",")]
        seeds = _parse_seed_values(fields.get("seeds", "0"))
        for knob in knob_values:
            for c in c_values:
                for seed in seeds:
                    cells.append(
                        replace(
                            base,
                            d=None if hopset else knob,
                            beta=knob if hopset else None,
                            eps=eps,
                            c=c,
                            seed=seed,
                        )
                    )
    return cells


def _run_bench_cell(cell: _BenchCell) -> dict[str, object]:
    spec = GenSpec(cell.family, cell.n, cell.p, cell.density, cell.W, cell.seed)
    g = generate(spec)
    row: dict[str, object] = {col: "" for col in CSV_COLUMNS}
    row.update(
        algorithm=cell.algorithm,
        family=cell.family,
        n=cell.n,
        c=cell.c,
        seed=cell.seed,
    )
    start = time.perf_counter()
    if cell.algorithm == "folklore":
        hs = folklore(g, cell.d, cell.c, seed=cell.seed)
    elif cell.algorithm == "small_diam":
        hs = build_shortcuts(g, cell.d, cell.c, seed=cell.seed, mode="small")
    elif cell.algorithm == "large_d":
        hs = build_shortcuts(g, cell.d, cell.c, seed=cell.seed, mode="large")
    elif cell.algorithm == "hopset_small":
        hs = hopset_small_hop(g, cell.beta, cell.eps, cell.c, seed=cell.seed)
    else:
        hs = hopset_large_hop(g, cell.beta, cell.eps, cell.c, seed=cell.seed)
    row["wall_ms"] = round((time.perf_counter() - start) * 1000.0, 1)
    row["edges_total"] = len(hs)
    for tag, count in hs.tag_counts.items():
        row[tag] = count
    if cell.d is not None:
        row["D"] = cell.d
        report = verify_shortcut(g, hs, cell.d)
        row["achieved_diameter"] = report.achieved_diameter
    else:
        row["beta"] = cell.beta
        row["eps"] = str(cell.eps)
        report = verify_hopset(g, hs, cell.beta, cell.eps)
        row["achieved_hops"] = report.achieved_hops
        if report.achieved_stretch is not None:
            row["achieved_stretch"] = str(report.achieved_stretch)
    return row


def _thread_cap() -> int:
    env = os.environ.get("SHORTCUT_FORGE_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _cmd_bench(args: argparse.Namespace) -> int:
    cells = _parse_bench_config(Path(args.config).read_text())
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    workers = _thread_cap()
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_bench_cell, cells))
    else:
        rows = [_run_bench_cell(cell) for cell in cells]
    for row in rows:
        writer.writerow(row)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shortcutforge",
        description="Diameter-reducing shortcut sets and hopsets for digraphs.",
    )
    parser.add_argument("--version", action="version", version=f"shortcutforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph instance")
    p_gen.add_argument("--family", required=True, choices=FAMILIES)
    p_gen.add_argument("--n", required=True, type=int)
    p_gen.add_argument("--p", type=float)
    p_gen.add_argument("--density", type=float)
    p_gen.add_argument("--W", type=int)
    p_gen.add_argument("--k", type=int, help="subdivide each vertex into a k-edge path")
    p_gen.add_argument("--seed", required=True, type=int)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_sc = sub.add_parser("shortcut", help="build a shortcut set")
    p_sc.add_argument("--input", required=True)
    p_sc.add_argument("--diameter", required=True, type=int)
    p_sc.add_argument("--const", type=float, default=3.0)
    p_sc.add_argument("--seed", required=True, type=int)
    p_sc.add_argument("--out", required=True)
    p_sc.add_argument("--mode", choices=SHORTCUT_MODES, default="auto")
    p_sc.set_defaults(func=_cmd_shortcut)

    p_hs = sub.add_parser("hopset", help="build a hopset for a weighted graph")
    p_hs.add_argument("--input", required=True)
    p_hs.add_argument("--beta", required=True, type=int)
    p_hs.add_argument("--eps", required=True, help="exact rational, e.g. 1/4")
    p_hs.add_argument("--const", type=float, default=3.0)
    p_hs.add_argument("--seed", required=True, type=int)
    p_hs.add_argument("--out", required=True)
    p_hs.set_defaults(func=_cmd_hopset)

    p_vf = sub.add_parser("verify", help="check an edge file against its graph")
    p_vf.add_argument("--graph", required=True)
    p_vf.add_argument("--edges", required=True)
    p_vf.add_argument("--mode", required=True, choices=("shortcut", "hopset"))
    p_vf.add_argument("--diameter", type=int)
    p_vf.add_argument("--beta", type=int)
    p_vf.add_argument("--eps")
    p_vf.add_argument("--json", help="also write the report as JSON to this path")
    p_vf.set_defaults(func=_cmd_verify)

    p_dc = sub.add_parser("decomp", help="print a chain decomposition")
    p_dc.add_argument("--input", required=True)
    p_dc.add_argument("--ell", required=True, type=int)
    p_dc.add_argument(
        "--closure",
        action="store_true",
        help="decompose the transitive closure instead of the input",
    )
    p_dc.set_defaults(func=_cmd_decomp)

    p_bn = sub.add_parser("bench", help="run a benchmark grid, emit CSV")
    p_bn.add_argument("--config", required=True)
    p_bn.add_argument("--out", help="CSV output path (default stdout)")
    p_bn.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
