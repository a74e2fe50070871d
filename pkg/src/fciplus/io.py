"""Line-oriented text format for mixed graphs.

    # comment
    node <name> [observed|latent|selection]
    edge <name> <markpair> <name>

Mark pairs: -->  <--  <->  ---  o->  <-o  o-o  o--  --o.  Serialization is
deterministic (nodes in id order, edges in canonical pair order) and
round-trips bit-exactly.
"""

from __future__ import annotations

from .graph import ARROW, CIRCLE, NODE_KINDS, OBSERVED, TAIL, MixedGraph

MARKPAIR_TOKENS = {
    "-->": (TAIL, ARROW),
    "<--": (ARROW, TAIL),
    "<->": (ARROW, ARROW),
    "---": (TAIL, TAIL),
    "o->": (CIRCLE, ARROW),
    "<-o": (ARROW, CIRCLE),
    "o-o": (CIRCLE, CIRCLE),
    "o--": (CIRCLE, TAIL),
    "--o": (TAIL, CIRCLE),
}
_MARKS_TO_TOKEN = {marks: tok for tok, marks in MARKPAIR_TOKENS.items()}


class GraphFormatError(ValueError):
    pass


def parse_graph(text: str) -> MixedGraph:
    names: list[str] = []
    kinds: list[str] = []
    edge_lines: list[tuple[int, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "node":
            if len(parts) not in (2, 3):
                raise GraphFormatError(f"line {lineno}: malformed node line")
            name = parts[1]
            kind = parts[2] if len(parts) == 3 else OBSERVED
            if kind not in NODE_KINDS:
                raise GraphFormatError(f"line {lineno}: unknown node kind {kind!r}")
            if name in names:
                raise GraphFormatError(f"line {lineno}: duplicate node {name!r}")
            names.append(name)
            kinds.append(kind)
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise GraphFormatError(f"line {lineno}: malformed edge line")
            edge_lines.append((lineno, parts[1], parts[2], parts[3]))
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {parts[0]!r}")

    g = MixedGraph(len(names), names, kinds)
    index = {name: i for i, name in enumerate(names)}
    for lineno, a, token, b in edge_lines:
        if token not in MARKPAIR_TOKENS:
            raise GraphFormatError(f"line {lineno}: unknown mark pair {token!r}")
        if a not in index or b not in index:
            raise GraphFormatError(f"line {lineno}: edge references undeclared node")
        ma, mb = MARKPAIR_TOKENS[token]
        try:
            g.add_edge(index[a], index[b], ma, mb)
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    return g


def serialize_graph(g: MixedGraph) -> str:
    for name in g.names:
        if not name or any(c.isspace() for c in name) or "#" in name:
            raise GraphFormatError(f"unserializable node name: {name!r}")
    lines = [f"node {g.names[v]} {g.kinds[v]}" for v in range(g.n)]
    for i, j, mi, mj in g.edges():
        lines.append(f"edge {g.names[i]} {_MARKS_TO_TOKEN[(mi, mj)]} {g.names[j]}")
    return "\n".join(lines) + "\n" if lines else ""


def read_graph(path) -> MixedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path, g: MixedGraph) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_graph(g))
