"""Edge-list (``.el``) and DIMACS (``.col``) readers and writers.

Edge list: first data line ``n m``, then ``m`` lines ``u v`` with 0-based ids;
``#`` starts a comment. DIMACS: ``c`` comment lines, one ``p edge n m``
header, ``e u v`` lines with 1-based ids.
"""

from __future__ import annotations

import os
from pathlib import Path

from kpfree.errors import GraphFormatError, InputError
from kpfree.graph import Graph


def _check_edge(u: int, v: int, n: int, seen: set, lineno: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex out of range 0..{n - 1}", lineno)
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u}", lineno)
    key = (min(u, v), max(u, v))
    if key in seen:
        raise GraphFormatError(f"duplicate edge {key}", lineno)
    seen.add(key)


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    header = None
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError("expected two integers", lineno)
        a, b = _ints(tokens, lineno)
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative header value", lineno)
            header = (a, b)
            continue
        _check_edge(a, b, header[0], seen, lineno)
    if header is None:
        raise GraphFormatError("empty input: missing 'n m' header", 1)
    n, m = header
    if len(seen) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(seen)}")
    return Graph(n, sorted(seen))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Graph:
    n = m = None
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise GraphFormatError("second 'p' header", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise GraphFormatError("expected 'p edge n m'", lineno)
            n, m = _ints(tokens[2:], lineno)
        elif kind == "e":
            if n is None:
                raise GraphFormatError("edge before 'p' header", lineno)
            if len(tokens) != 3:
                raise GraphFormatError("expected 'e u v'", lineno)
            u, v = _ints(tokens[1:], lineno)
            _check_edge(u - 1, v - 1, n, seen, lineno)
        else:
            raise GraphFormatError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge n m' header", 1)
    if len(seen) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(seen)}")
    return Graph(n, sorted(seen))


def format_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _fmt_for(path: str | os.PathLike, fmt: str | None) -> str:
    if fmt:
        if fmt not in ("el", "col"):
            raise InputError(f"unknown graph format {fmt!r}")
        return fmt
    return "col" if Path(path).suffix.lower() in (".col", ".dimacs") else "el"


def read_graph(path: str | os.PathLike, fmt: str | None = None) -> Graph:
    text = Path(path).read_text()
    if _fmt_for(path, fmt) == "col":
        return parse_dimacs(text)
    return parse_edge_list(text)


def write_graph(g: Graph, path: str | os.PathLike, fmt: str | None = None) -> None:
    text = format_dimacs(g) if _fmt_for(path, fmt) == "col" else format_edge_list(g)
    Path(path).write_text(text)
