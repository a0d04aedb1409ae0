"""Readers and writers for graph non-zero structures.

Two external formats:
  * Matrix Market coordinate format (1-indexed), header
    ``%%MatrixMarket matrix coordinate pattern symmetric`` (or ``general``);
    real/integer fields are accepted with their values ignored.
  * plain edge lists, one ``u v`` pair per whitespace-separated line,
    ``#`` comments, 0-indexed.  An optional ``# n = K`` comment fixes the
    vertex count so isolated vertices survive a round trip.

Diagonal entries and duplicate edges are dropped on load: inputs are
treated as non-zero patterns, not weighted graphs.
"""

from __future__ import annotations

import re
import sys

from .graphs import Graph, GraphError


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _open_text(source, mode="r"):
    if source == "-":
        return (sys.stdin if "r" in mode else sys.stdout), False
    if hasattr(source, "read") or hasattr(source, "write"):
        return source, False
    return open(source, mode), True


def load_graph(source, fmt: str = "auto") -> Graph:
    """Load a graph from a path, ``-`` (stdin), or a text stream."""
    stream, owns = _open_text(source, "r")
    try:
        text = stream.read()
    finally:
        if owns:
            stream.close()
    if fmt == "auto":
        fmt = "matrix-market" if text.lstrip().startswith("%%MatrixMarket") else "edge-list"
    if fmt in ("matrix-market", "mm"):
        return _parse_matrix_market(text)
    if fmt in ("edge-list", "edges"):
        return _parse_edge_list(text)
    raise ParseError(f"unknown format {fmt!r}")


def _parse_matrix_market(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    header = lines[0].strip().split()
    if len(header) != 5 or header[0] != "%%MatrixMarket":
        raise ParseError("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'", 1)
    _, obj, layout, fieldkind, symmetry = [h.lower() for h in header]
    if obj != "matrix" or layout != "coordinate":
        raise ParseError(f"unsupported MatrixMarket type: {obj} {layout}", 1)
    if fieldkind not in ("pattern", "real", "integer"):
        raise ParseError(f"unsupported field kind {fieldkind!r}", 1)
    if symmetry not in ("symmetric", "general"):
        raise ParseError(f"unsupported symmetry {symmetry!r}", 1)
    expect_values = fieldkind != "pattern"

    size_line = None
    entries_start = None
    for i in range(1, len(lines)):
        s = lines[i].strip()
        if not s or s.startswith("%"):
            continue
        size_line = s
        entries_start = i + 1
        break
    if size_line is None:
        raise ParseError("missing size line", len(lines))
    parts = size_line.split()
    if len(parts) != 3:
        raise ParseError("size line must be 'rows cols nnz'", entries_start)
    try:
        rows, cols, nnz = (int(x) for x in parts)
    except ValueError:
        raise ParseError(f"bad size line {size_line!r}", entries_start) from None
    if rows != cols:
        raise ParseError(f"matrix must be square, got {rows}x{cols}", entries_start)

    edges = []
    seen = 0
    for lineno in range(entries_start, len(lines)):
        s = lines[lineno].strip()
        if not s or s.startswith("%"):
            continue
        parts = s.split()
        want = 3 if expect_values else 2
        if len(parts) < want:
            raise ParseError(f"expected {want} fields, got {len(parts)}", lineno + 1)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad entry {s!r}", lineno + 1) from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(f"vertex id out of range: ({i}, {j})", lineno + 1)
        seen += 1
        edges.append((i - 1, j - 1))
    if seen != nnz:
        raise ParseError(f"expected {nnz} entries, found {seen}")
    return Graph.from_edges(rows, edges)


_N_COMMENT = re.compile(r"#\s*n\s*=?\s*(\d+)")


def _parse_edge_list(text: str) -> Graph:
    edges = []
    max_id = -1
    declared_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw
        if "#" in line:
            m = _N_COMMENT.search(line)
            if m:
                declared_n = int(m.group(1))
            line = line[: line.index("#")]
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad vertex ids {raw.strip()!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id in {raw.strip()!r}", lineno)
        max_id = max(max_id, u, v)
        edges.append((u, v))
    n = max_id + 1 if declared_n is None else declared_n
    if max_id >= n:
        raise ParseError(f"vertex id {max_id} exceeds declared n = {n}")
    return Graph.from_edges(n, edges)


def dump_edge_list(g: Graph, target) -> None:
    stream, owns = _open_text(target, "w")
    try:
        stream.write(f"# n = {g.n}\n")
        for u, v in g.edges():
            stream.write(f"{u} {v}\n")
    finally:
        if owns:
            stream.close()


def dump_matrix_market(g: Graph, target) -> None:
    stream, owns = _open_text(target, "w")
    try:
        stream.write("%%MatrixMarket matrix coordinate pattern symmetric\n")
        stream.write(f"{g.n} {g.n} {g.m}\n")
        for u, v in g.edges():
            stream.write(f"{v + 1} {u + 1}\n")  # lower triangle, 1-indexed
    finally:
        if owns:
            stream.close()


def load_permutation(source) -> list:
    stream, owns = _open_text(source, "r")
    try:
        out = []
        for lineno, raw in enumerate(stream, start=1):
            s = raw.split("#")[0].strip()
            if not s:
                continue
            try:
                out.append(int(s.split()[0]))
            except ValueError:
                raise ParseError(f"bad permutation entry {raw.strip()!r}", lineno) from None
        return out
    finally:
        if owns:
            stream.close()
