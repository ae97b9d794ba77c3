"""DIMACS edge-format reading and writing, with an `f` line extension that
marks forbidden vertices.  Vertices are 1-indexed on disk, 0-indexed in code."""

from __future__ import annotations

from .graphs import Graph, build_graph


class DimacsError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedHeaderError(DimacsError):
    pass


class DuplicateEdgeError(DimacsError):
    pass


class EdgeRangeError(DimacsError):
    pass


def parse_dimacs(text: str | bytes) -> Graph:
    """Parse "p edge n m" followed by m "e u v" lines and optional "f u" lines."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = m = -1
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    forbidden: set[int] = set()
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n >= 0:
                raise MalformedHeaderError("second problem line", lineno)
            if len(fields) != 4 or fields[1] != "edge":
                raise MalformedHeaderError(f"bad problem line {line!r}", lineno)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise MalformedHeaderError(f"non-integer sizes in {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise MalformedHeaderError(f"negative sizes in {line!r}", lineno)
            header_line = lineno
            continue
        if n < 0:
            raise MalformedHeaderError("edge data before the problem line", lineno)
        if fields[0] == "e":
            if len(fields) != 3:
                raise DimacsError(f"bad edge line {line!r}", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise DimacsError(f"non-integer endpoint in {line!r}", lineno) from None
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise EdgeRangeError(f"endpoint outside 1..{n} in {line!r}", lineno)
            if u == v:
                raise EdgeRangeError(f"self-loop at {u}", lineno)
            e = (min(u, v) - 1, max(u, v) - 1)
            if e in seen:
                raise DuplicateEdgeError(f"edge {u} {v} repeats", lineno)
            seen.add(e)
            edges.append(e)
        elif fields[0] == "f":
            if len(fields) != 2:
                raise DimacsError(f"bad forbidden line {line!r}", lineno)
            try:
                u = int(fields[1])
            except ValueError:
                raise DimacsError(f"non-integer vertex in {line!r}", lineno) from None
            if not (1 <= u <= n):
                raise EdgeRangeError(f"vertex outside 1..{n} in {line!r}", lineno)
            forbidden.add(u - 1)
        else:
            raise DimacsError(f"unrecognised line {line!r}", lineno)
    if n < 0:
        raise MalformedHeaderError("missing problem line", max(1, header_line))
    if len(edges) != m:
        raise DimacsError(f"header promised {m} edges, found {len(edges)}", header_line)
    return build_graph(n, edges, forbidden)


def emit_dimacs(g: Graph, comment: str | None = None) -> str:
    """Canonical text for a graph: sorted edges, unix newlines, 1-indexed."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    lines.append(f"p edge {g.n} {g.m}")
    for u, v in g.edges:
        lines.append(f"e {u + 1} {v + 1}")
    for v in sorted(g.forbidden):
        lines.append(f"f {v + 1}")
    return "\n".join(lines) + "\n"
