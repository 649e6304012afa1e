"""Command-line entry point: ``kpfree <command> ...``.

Every command writes one run manifest: ``<out>.manifest.json`` next to the
``-o`` file, or a JSON line on stderr when output goes to stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any

from kpfree import __version__, kernels
from kpfree.cliques import clique_number, num_cliques
from kpfree.errors import InputError, KpFreeError
from kpfree.generators import RNG_ALGORITHM, FamilySpec, gen_named
from kpfree.graph import Graph
from kpfree.io import format_dimacs, format_edge_list, read_graph
from kpfree.oracle import (
    DEFAULT_BUDGET,
    SearchBudget,
    exact_chromatic,
    exact_max_kpfree,
    exists_partition,
)
from kpfree.partition import (
    PartitionSpec,
    certify,
    max_kpfree_partition,
    partition_k,
    partition_k_with_max_first,
)
from kpfree.partition.exchange import SEED_MODES

log = logging.getLogger("kpfree")


class _Run:
    """Collects what goes into the manifest for one command."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.inputs: dict[str, str] = {}
        self.summary: dict[str, Any] = {}
        self.fallback = False

    def load(self, path: str, fmt: str | None = None) -> Graph:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return read_graph(path, fmt)

    def load_json(self, path: str) -> Any:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        try:
            return json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None

    def manifest(self, elapsed: float, error: KpFreeError | None) -> dict[str, Any]:
        a = self.args
        return {
            "command": a.command if a.command != "oracle" else f"oracle {a.oracle_command}",
            "argv": a.argv,
            "inputs": self.inputs,
            "spec": getattr(a, "spec", None),
            "seed": getattr(a, "seed", None),
            "rng": RNG_ALGORITHM,
            "version": __version__,
            "backend": kernels.BACKEND,
            "timing_seconds": round(elapsed, 6),
            "result": self.summary,
            "fallback_used": self.fallback,
            "error": None if error is None else {
                "type": type(error).__name__, "message": str(error), "exit_code": error.exit_code,
            },
        }


def _emit(args: argparse.Namespace, payload: Any) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(
        max_n_two=args.max_n_two, max_assignments=args.max_assignments,
        max_n_bnb=args.max_n_bnb, node_limit=args.node_limit,
    )


def cmd_analyze(run: _Run) -> None:
    a = run.args
    g = run.load(a.input, a.format)
    out: dict[str, Any] = {
        "n": g.n, "m": g.m, "max_degree": g.max_degree, "min_degree": g.min_degree,
        "clique_number": clique_number(g), "connected": g.is_connected(),
    }
    out["clique_counts"] = {str(t): num_cliques(g, t) for t in range(3, a.cliques + 1)}
    budget = _budget(a)
    if a.alpha:
        res = exact_max_kpfree(g, 2, budget, collect=2)
        out["independence_number"] = res.size
        out["independence_optima"] = res.count
        out["independent_set"] = res.witness
    if a.chromatic:
        out["chromatic_number"] = exact_chromatic(g, budget).chromatic_number
    run.summary = {k: v for k, v in out.items() if k != "independent_set"}
    _emit(a, out)


def _parse_params(items: list[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--param expects key=value, got {item!r}")
        params[key] = value
    return params


def cmd_generate(run: _Run) -> None:
    a = run.args
    params = _parse_params(a.param)
    if a.seed is not None:
        params["seed"] = a.seed
    g = gen_named(FamilySpec(a.family, params))
    fmt = a.format or ("col" if a.output and a.output.endswith((".col", ".dimacs")) else "el")
    run.summary = {"family": a.family, "params": params, "n": g.n, "m": g.m}
    _emit(a, format_dimacs(g) if fmt == "col" else format_edge_list(g))


def cmd_partition(run: _Run) -> None:
    a = run.args
    g = run.load(a.input, a.format)
    spec = PartitionSpec.parse(a.spec)
    if a.max_first:
        if spec.k == 2:
            p, q = spec.parts
            part = max_kpfree_partition(g, p, q, seed=a.seed_mode, budget=_budget(a))
        else:
            part = partition_k_with_max_first(g, spec, seed=a.seed_mode, budget=_budget(a))
    else:
        part = partition_k(g, spec)
    run.fallback = part.fallback_used
    run.summary = {"sizes": [len(c) for c in part.classes], "certified": part.certified,
                   "fallback_used": part.fallback_used}
    _emit(a, part.to_json(g.n, include_trace=a.trace))


def cmd_verify(run: _Run) -> None:
    a = run.args
    g = run.load(a.input, a.format)
    data = run.load_json(a.partition)
    try:
        spec = [int(p) for p in data["spec"]]
        classes = [[int(v) for v in c] for c in data["classes"]]
    except (KeyError, TypeError, ValueError):
        raise InputError("partition JSON needs integer lists 'spec' and 'classes'") from None
    if data.get("n", g.n) != g.n:
        raise InputError(f"partition is for n={data['n']}, graph has n={g.n}")
    certify(g, classes, spec)
    run.summary = {"valid": True}
    _emit(a, {"valid": True, "n": g.n, "spec": spec})


def cmd_oracle(run: _Run) -> None:
    a = run.args
    g = run.load(a.input, a.format)
    budget = _budget(a)
    if a.oracle_command == "exists":
        res = exists_partition(g, PartitionSpec.parse(a.spec).parts, budget)
        out = res.to_json()
        run.summary = {"exists": res.exists, "nodes": res.nodes, "space": res.space}
    elif a.oracle_command == "maxset":
        res = exact_max_kpfree(g, a.p, budget)
        out = {"p": a.p, "size": res.size, "witness": res.witness, "count": res.count,
               "nodes": res.nodes}
        run.summary = {"size": res.size, "count": res.count}
    else:
        col = exact_chromatic(g, budget)
        out = {"chromatic_number": col.chromatic_number, "colors": col.colors}
        run.summary = {"chromatic_number": col.chromatic_number}
    _emit(a, out)


def cmd_search(run: _Run) -> None:
    from kpfree.search import sweep

    a = run.args
    report = sweep(
        delta=a.delta, spec=PartitionSpec.parse(a.spec).parts, n_max=a.n_max, n_min=a.n_min,
        mode=a.mode, seed=a.seed, samples=a.samples, density=a.density,
        omega_max=a.omega_max, named=a.named, jobs=a.jobs, budget=_budget(a),
    )
    run.summary = {"candidates": report.candidates, "checked": report.checked,
                   "skipped": report.skipped, "refutations": len(report.refutations)}
    _emit(a, report.to_json(include_items=a.all_items))


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", required=True, help="graph file (.el edge list or .col DIMACS)")
    p.add_argument("--format", choices=("el", "col"), help="override format detection")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="write here instead of stdout")


def _add_budget(p: argparse.ArgumentParser) -> None:
    b = DEFAULT_BUDGET
    g = p.add_argument_group("search budget")
    g.add_argument("--max-n-two", type=int, default=b.max_n_two)
    g.add_argument("--max-assignments", type=int, default=b.max_assignments)
    g.add_argument("--max-n-bnb", type=int, default=b.max_n_bnb)
    g.add_argument("--node-limit", type=int, default=b.node_limit, help="0 = unlimited")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kpfree", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="basic statistics, clique counts, optional alpha and chi")
    _add_graph_input(p)
    _add_output(p)
    p.add_argument("--cliques", type=int, default=4, help="count cliques of order 3..T")
    p.add_argument("--alpha", action="store_true", help="exact independence number")
    p.add_argument("--chromatic", action="store_true", help="exact chromatic number")
    _add_budget(p)

    p = sub.add_parser("generate", help="write a generated graph")
    p.add_argument("--family", required=True)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("el", "col"))
    _add_output(p)

    p = sub.add_parser("partition", help="certified K_{p_i}-free partition")
    _add_graph_input(p)
    _add_output(p)
    p.add_argument("--spec", required=True, help="e.g. 4,3,2")
    p.add_argument("--max-first", action="store_true",
                   help="make class 1 a maximum K_{p_1}-free set (needs omega = p_1)")
    p.add_argument("--seed-mode", choices=SEED_MODES, default="min-kq")
    p.add_argument("--trace", action="store_true", help="include the construction trace")
    _add_budget(p)

    p = sub.add_parser("verify", help="re-certify a partition JSON against a graph")
    _add_graph_input(p)
    _add_output(p)
    p.add_argument("-p", "--partition", required=True)

    p = sub.add_parser("oracle", help="exact searches")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    o = osub.add_parser("exists", help="does a partition for SPEC exist?")
    o.add_argument("--spec", required=True)
    o = osub.add_parser("maxset", help="maximum K_p-free set")
    o.add_argument("--p", type=int, required=True)
    osub.add_parser("chromatic", help="chromatic number")
    for o in osub.choices.values():
        _add_graph_input(o)
        _add_output(o)
        _add_budget(o)

    p = sub.add_parser("search", help="sweep graphs with a given Delta for refutations of SPEC")
    _add_output(p)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100, help="random mode: graphs to test")
    p.add_argument("--density", type=float, help="random mode: edge probability")
    p.add_argument("--omega-max", type=int, help="default Delta - 1")
    p.add_argument("--named", action="append", default=[], help="also test h1, c5xk2, c7xk2, h0")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--all-items", action="store_true", help="report every graph, not only refutations")
    _add_budget(p)
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "generate": cmd_generate,
    "partition": cmd_partition,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "search": cmd_search,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    run = _Run(args)
    error: KpFreeError | None = None
    start = time.perf_counter()
    try:
        COMMANDS[args.command](run)
    except KpFreeError as exc:
        error = exc
        print(f"kpfree: error: {exc}", file=sys.stderr)
    manifest = json.dumps(run.manifest(time.perf_counter() - start, error), sort_keys=True)
    out = getattr(args, "output", None)
    if out:
        Path(out + ".manifest.json").write_text(manifest + "\n")
    else:
        print(manifest, file=sys.stderr)
    return 0 if error is None else error.exit_code


if __name__ == "__main__":
    sys.exit(main())
