"""Command line entry point: ``tensor-melon <subcommand> ...``.

Results go to stdout as JSON or TSV, diagnostics to stderr.  Exit status is
0 on success, 1 on a domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .bubbles import CouplingMap, bubble_degree, enumerate_bubbles, load_bubble
from .errors import TensorMelonError
from .feynman import free_energy_series
from .graph import ColoredGraph, load_graph
from .jackets import degree, fraction_str, jacket_genus, jackets
from .melons import is_melonic, iter_melons, melon_to_tree
from .oracle import MomentSpec, gaussian_moment, literal_amplitude_exponent, verify_amplitude
from .trees import bracket, jacobi_defect, parse_tree, random_tree, serialize

THREADS_ENV = "TENSOR_MELON_THREADS"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def is_melonic_bubble(g: ColoredGraph) -> bool:
    """Melonic test for a bubble; with fewer than 4 colors this is degree 0."""
    if g.color_count < 4:
        return bubble_degree(g) == 0
    return is_melonic(g) is not None


def cmd_bubbles(args, out) -> int:
    if args.vertices % 2:
        raise TensorMelonError("--vertices counts white and black vertices and must be even")
    for b in enumerate_bubbles(args.rank, args.vertices // 2):
        g = b.graph
        if args.melonic_only and not is_melonic_bubble(g):
            continue
        row = b.to_json()
        row["key"] = [list(m) for m in g.matchings]
        row["degree"] = bubble_degree(g)
        print(_dump(row), file=out)
    return 0


def cmd_degree(args, out) -> int:
    print(_dump(degree(load_graph(args.input)).to_json()), file=out)
    return 0


def cmd_jackets(args, out) -> int:
    if args.input:
        g = load_graph(args.input)
        rows = [{"cycle": list(j.color_cycle), "genus": jacket_genus(g, j)} for j in jackets(g.color_count)]
    elif args.rank:
        rows = [{"cycle": list(j.color_cycle)} for j in jackets(args.rank + 1)]
    else:
        raise TensorMelonError("jackets needs --input or --rank")
    for row in rows:
        print(_dump(row), file=out)
    return 0


def cmd_melonic(args, out) -> int:
    g = load_graph(args.input)
    cert = is_melonic(g)
    if cert is None:
        print("non-melonic", file=out)
        return 0
    print(_dump({"melonic": True,
                 "contraction_sequence": [list(s) for s in cert.contraction_sequence],
                 "tree": serialize(melon_to_tree(g))}), file=out)
    return 0


def cmd_melons(args, out) -> int:
    for g, t in iter_melons(args.rank, args.insertions):
        print(_dump({**g.to_json(), "tree": serialize(t)}), file=out)
    return 0


def _load_couplings(path: str) -> tuple[CouplingMap, dict]:
    base = Path(path).parent
    with open(path) as fh:
        raw = json.load(fh)
    cmap, labels = CouplingMap(), {}
    for name, value in raw.items():
        b = load_bubble(base / name)
        cmap[b] = Fraction(value)
        labels[b.key] = name
    return cmap, labels


def cmd_series(args, out) -> int:
    cmap, labels = _load_couplings(args.couplings)
    if cmap.rank is not None and cmap.rank != args.rank:
        raise TensorMelonError(f"couplings have rank {cmap.rank}, --rank is {args.rank}")
    print("order\texponent\tcoefficient", file=out)
    for term in free_energy_series(cmap, args.order):
        order = "*".join(labels[k] for k in term.order)
        print(f"{order}\t{fraction_str(term.n_exponent)}\t{fraction_str(term.coefficient)}", file=out)
    return 0


def _read_tree(path: str, rank: int):
    return parse_tree(Path(path).read_text(), rank)


def cmd_bracket(args, out) -> int:
    result = bracket(_read_tree(args.t1, args.rank), _read_tree(args.t2, args.rank))
    if not result:
        print("0", file=out)
    for t, c in result.items():
        print(f"{c}\t{serialize(t)}", file=out)
    return 0


def _jacobi_trial(job: tuple[int, int, int, int]) -> int:
    rank, max_vertices, seed, trial = job
    rng = random.Random(seed * 1_000_003 + trial)
    ts = [random_tree(rank, max_vertices, rng) for _ in range(3)]
    return len(jacobi_defect(*ts))


def cmd_jacobi(args, out) -> int:
    jobs = [(args.rank, args.max_vertices, args.seed, k) for k in range(args.trials)]
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            sizes = list(pool.map(_jacobi_trial, jobs))
    else:
        sizes = [_jacobi_trial(j) for j in jobs]
    for n in sizes:
        print(f"defect: {n}", file=out)
    return 0 if not any(sizes) else 1


def cmd_verify_amplitude(args, out) -> int:
    g = load_graph(args.input)
    report = degree(g)
    row = {"N": args.N, "degree": report.degree,
           "theorem_exponent": fraction_str(report.amplitude_exponent),
           "holds": verify_amplitude(g, args.N)}
    if args.N >= 2:
        row["literal_exponent"] = fraction_str(literal_amplitude_exponent(g, args.N))
    print(_dump(row), file=out)
    return 0 if row["holds"] else 1


def cmd_moment(args, out) -> int:
    bubbles = tuple(load_bubble(p) for p in args.bubbles)
    print(fraction_str(gaussian_moment(MomentSpec(bubbles, args.rank, args.N))), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensor-melon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bubbles", help="enumerate connected trace invariants")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--vertices", type=int, required=True, help="total vertex count 2p")
    p.add_argument("--melonic-only", action="store_true")
    p.set_defaults(func=cmd_bubbles)

    p = sub.add_parser("degree", help="jacket genera and degree of a graph")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("jackets", help="list jackets of a graph, or of D+1 colors")
    p.add_argument("--input")
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_jackets)

    p = sub.add_parser("melonic", help="melon certificate of a graph")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_melonic)

    p = sub.add_parser("melons", help="melons with a given number of insertions")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--insertions", type=int, required=True)
    p.set_defaults(func=cmd_melons)

    p = sub.add_parser("series", help="free energy series")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--couplings", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("bracket", help="Lie bracket of two trees")
    p.add_argument("--t1", required=True)
    p.add_argument("--t2", required=True)
    p.add_argument("--rank", type=int, default=3)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jacobi", help="randomized Jacobi identity check")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("verify-amplitude", help="amplitude theorem against the literal index sum")
    p.add_argument("--input", required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_verify_amplitude)

    p = sub.add_parser("moment", help="exact Gaussian moment of a product of invariants")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--bubbles", nargs="*", default=[])
    p.set_defaults(func=cmd_moment)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (TensorMelonError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
