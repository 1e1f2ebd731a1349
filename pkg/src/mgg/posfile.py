"""Line-oriented position file format.

::

    mgg-pos 1
    game nimg-rm
    convention misere
    kind ugraph
    vertices 3
    edges 2
    start 0
    w 0 2        # nimg games only: one line per vertex
    w 1 1
    w 2 1
    e 0 1        # u == v denotes a loop
    e 1 2

Lines starting with ``#`` and blank lines are ignored.  Serialization is
canonical: weight lines ascend by vertex and edge lines ascend
lexicographically.  The format describes fresh positions only (no removed
vertices or arcs), which is what reductions and counterexample bundles need.
"""

from __future__ import annotations

from .graphs import DIRECTED, UNDIRECTED, build_graph
from .kernel import NIMG_VARIANTS, VARIANTS, Convention, Position

FORMAT_HEADER = "mgg-pos 1"
_KINDS = {"ugraph": UNDIRECTED, "digraph": DIRECTED}
_KIND_NAMES = {UNDIRECTED: "ugraph", DIRECTED: "digraph"}


class PositionParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _tokens(text: str):
    """Yield (line_number, tokens) for content lines."""
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line.split()


def parse_position(text: str) -> tuple[Position, Convention]:
    lines = _tokens(text)

    def next_line(expect: str):
        try:
            ln, toks = next(lines)
        except StopIteration:
            raise PositionParseError(f"unexpected end of file, expected {expect}", 0)
        return ln, toks

    def field(name: str, count: int):
        ln, toks = next_line(name)
        if toks[0] != name or len(toks) != count + 1:
            raise PositionParseError(f"expected `{name}` with {count} value(s)", ln)
        return ln, toks[1:]

    ln, toks = next_line("header")
    if " ".join(toks) != FORMAT_HEADER:
        raise PositionParseError(f"expected header `{FORMAT_HEADER}`", ln)

    ln, (game,) = field("game", 1)
    if game not in VARIANTS:
        raise PositionParseError(f"unknown game {game!r}", ln)
    ln, (conv,) = field("convention", 1)
    try:
        convention = Convention(conv)
    except ValueError:
        raise PositionParseError(f"unknown convention {conv!r}", ln)
    ln, (kind,) = field("kind", 1)
    if kind not in _KINDS:
        raise PositionParseError(f"unknown kind {kind!r}", ln)

    def integer(name: str, value: str, ln: int) -> int:
        try:
            return int(value)
        except ValueError:
            raise PositionParseError(f"{name} must be an integer, got {value!r}", ln)

    ln, (raw_n,) = field("vertices", 1)
    n = integer("vertices", raw_n, ln)
    if n < 1:
        raise PositionParseError("vertex count must be >= 1", ln)
    ln, (raw_m,) = field("edges", 1)
    m = integer("edges", raw_m, ln)
    if m < 0:
        raise PositionParseError("edge count must be >= 0", ln)
    ln, (raw_start,) = field("start", 1)
    start = integer("start", raw_start, ln)
    if not 0 <= start < n:
        raise PositionParseError(f"start {start} outside [0,{n})", ln)

    weights = None
    if game in NIMG_VARIANTS:
        weights = [None] * n
        for _ in range(n):
            ln, (raw_v, raw_w) = field("w", 2)
            v = integer("w vertex", raw_v, ln)
            wt = integer("weight", raw_w, ln)
            if not 0 <= v < n:
                raise PositionParseError(f"weight vertex {v} outside [0,{n})", ln)
            if weights[v] is not None:
                raise PositionParseError(f"duplicate weight for vertex {v}", ln)
            if wt < 0:
                raise PositionParseError(f"negative weight {wt}", ln)
            weights[v] = wt

    edges = []
    for _ in range(m):
        ln, (raw_u, raw_v) = field("e", 2)
        u = integer("edge endpoint", raw_u, ln)
        v = integer("edge endpoint", raw_v, ln)
        edges.append((u, v, ln))

    try:
        extra_ln, toks = next(lines)
    except StopIteration:
        pass
    else:
        raise PositionParseError(f"trailing content `{' '.join(toks)}`", extra_ln)

    try:
        graph = build_graph(_KINDS[kind], n, [(u, v) for u, v, _ in edges])
    except ValueError as exc:
        # attribute the failure to the first edge line involved
        bad = str(exc)
        ln = next((l for u, v, l in edges if f"({u},{v})" in bad or f"({v},{u})" in bad), edges[0][2] if edges else 0)
        raise PositionParseError(bad, ln)

    return (
        Position(
            variant=game,
            graph=graph,
            current=start,
            weights=tuple(weights) if weights is not None else None,
        ),
        convention,
    )


def serialize_position(p: Position, convention: Convention) -> str:
    """Canonical text form of a fresh position (inverse of parse_position)."""
    if p.removed_vertices or p.removed_edges:
        raise ValueError("position files describe fresh positions only")
    out = [
        FORMAT_HEADER,
        f"game {p.variant}",
        f"convention {convention.value}",
        f"kind {_KIND_NAMES[p.graph.kind]}",
        f"vertices {p.graph.n}",
        f"edges {len(p.graph.edges)}",
        f"start {p.current}",
    ]
    if p.weights is not None:
        out.extend(f"w {v} {wt}" for v, wt in enumerate(p.weights))
    out.extend(f"e {u} {v}" for u, v in p.graph.edges)
    return "\n".join(out) + "\n"


def read_position(path) -> tuple[Position, Convention]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_position(fh.read())


def write_position(path, p: Position, convention: Convention) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_position(p, convention))
