"""Mixed-graph core: edge marks, ancestry/anteriority, structural validity checks.

A mixed graph carries at most one edge per unordered node pair; each edge has
an endpoint mark (tail, arrow, circle) at both ends.  Directed edges are
tail/arrow, bidirected arrow/arrow, undirected tail/tail.  Circle marks stand
for undetermined endpoints and appear only in learned graphs, never in a DAG
or a maximal ancestral graph (MAG).
"""

from __future__ import annotations

from itertools import combinations

TAIL = "tail"
ARROW = "arrow"
CIRCLE = "circle"
MARKS = (TAIL, ARROW, CIRCLE)

OBSERVED = "observed"
LATENT = "latent"
SELECTION = "selection"
NODE_KINDS = (OBSERVED, LATENT, SELECTION)


class MixedGraph:
    """Dense-id mixed graph with per-endpoint edge marks and node-kind labels.

    Node ids are contiguous integers 0..n-1.  Kind labels
    (observed/latent/selection) are carried for model generation only; no
    algorithm in this module interprets them.  Ancestor/anterior sets are
    cached and invalidated on any mutation.
    """

    def __init__(self, n: int, names=None, kinds=None):
        if n < 0:
            raise ValueError("node count must be >= 0")
        self.n = n
        self.names = list(names) if names is not None else [f"V{i}" for i in range(n)]
        self.kinds = list(kinds) if kinds is not None else [OBSERVED] * n
        if len(self.names) != n or len(self.kinds) != n:
            raise ValueError("names/kinds length must match node count")
        if len(set(self.names)) != n:
            raise ValueError("node names must be unique")
        for k in self.kinds:
            if k not in NODE_KINDS:
                raise ValueError(f"unknown node kind: {k}")
        self._edges: dict[tuple[int, int], tuple[str, str]] = {}
        self._adj: dict[int, set[int]] = {v: set() for v in range(n)}
        self._version = 0
        self._cache: dict = {}

    # -- basic structure ----------------------------------------------------

    def _check_node(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise ValueError(f"unknown node id: {v!r}")

    def _key(self, x: int, y: int) -> tuple[int, int]:
        return (x, y) if x < y else (y, x)

    def add_edge(self, x: int, y: int, mark_x: str, mark_y: str) -> None:
        """Add the edge x *-* y with `mark_x` at x and `mark_y` at y."""
        self._check_node(x)
        self._check_node(y)
        if x == y:
            raise ValueError("self-edges are not allowed")
        if mark_x not in MARKS or mark_y not in MARKS:
            raise ValueError(f"unknown mark: {mark_x!r}/{mark_y!r}")
        key = self._key(x, y)
        if key in self._edges:
            raise ValueError(f"edge {key} already present (one edge per pair)")
        self._edges[key] = (mark_x, mark_y) if key == (x, y) else (mark_y, mark_x)
        self._adj[x].add(y)
        self._adj[y].add(x)
        self._mutated()

    def remove_edge(self, x: int, y: int) -> None:
        key = self._key(x, y)
        if key not in self._edges:
            raise ValueError(f"no edge {key}")
        del self._edges[key]
        self._adj[x].discard(y)
        self._adj[y].discard(x)
        self._mutated()

    def has_edge(self, x: int, y: int) -> bool:
        return self._key(x, y) in self._edges

    def marks(self, x: int, y: int) -> tuple[str, str]:
        """Return (mark at x, mark at y) for the edge between x and y."""
        key = self._key(x, y)
        mi, mj = self._edges[key]
        return (mi, mj) if key == (x, y) else (mj, mi)

    def mark_at(self, x: int, y: int) -> str:
        """Mark at x on the edge between x and y."""
        return self.marks(x, y)[0]

    def set_mark(self, at: int, other: int, mark: str) -> None:
        """Set the endpoint mark at node `at` on the edge to `other`."""
        if mark not in MARKS:
            raise ValueError(f"unknown mark: {mark!r}")
        key = self._key(at, other)
        if key not in self._edges:
            raise ValueError(f"no edge {key}")
        mi, mj = self._edges[key]
        self._edges[key] = (mark, mj) if key[0] == at else (mi, mark)
        self._mutated()

    def neighbors(self, v: int):
        self._check_node(v)
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        self._check_node(v)
        return len(self._adj[v])

    def edges(self):
        """Edges as (i, j, mark_i, mark_j) with i < j, in canonical pair order."""
        for (i, j) in sorted(self._edges):
            mi, mj = self._edges[(i, j)]
            yield i, j, mi, mj

    def edge_count(self) -> int:
        return len(self._edges)

    def copy(self) -> "MixedGraph":
        g = MixedGraph(self.n, self.names, self.kinds)
        g._edges = dict(self._edges)
        g._adj = {v: set(s) for v, s in self._adj.items()}
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.names == other.names
            and self.kinds == other.kinds
            and self._edges == other._edges
        )

    def __repr__(self) -> str:
        return f"MixedGraph(n={self.n}, edges={len(self._edges)})"

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown node name: {name}") from None

    def nodes_of_kind(self, kind: str) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.kinds[v] == kind)

    # -- cached closures ----------------------------------------------------

    def _mutated(self) -> None:
        self._version += 1
        self._cache.clear()

    @property
    def has_circle_marks(self) -> bool:
        if "circle" not in self._cache:
            self._cache["circle"] = any(
                CIRCLE in marks for marks in self._edges.values()
            )
        return self._cache["circle"]

    def _incident(self, v: int):
        """Per-node list of (neighbor, mark at v, mark at neighbor)."""
        if "incident" not in self._cache:
            inc = {u: [] for u in range(self.n)}
            for (i, j), (mi, mj) in self._edges.items():
                inc[i].append((j, mi, mj))
                inc[j].append((i, mj, mi))
            for u in inc:
                inc[u].sort()
            self._cache["incident"] = inc
        return self._cache["incident"][v]

    def _parent_sets(self):
        """parents[v] = nodes u with a directed edge u -> v (circle edges ignored)."""
        if "parents" not in self._cache:
            parents = [set() for _ in range(self.n)]
            for (i, j), (mi, mj) in self._edges.items():
                if mi == TAIL and mj == ARROW:
                    parents[j].add(i)
                elif mi == ARROW and mj == TAIL:
                    parents[i].add(j)
            self._cache["parents"] = parents
        return self._cache["parents"]

    def _closure(self, v: int, step_sets) -> frozenset:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in step_sets[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def ancestor_set(self, v: int) -> frozenset:
        """All nodes with a directed path to v, plus v itself (cached)."""
        self._check_node(v)
        cache = self._cache.setdefault("anc", {})
        if v not in cache:
            cache[v] = self._closure(v, self._parent_sets())
        return cache[v]

    def descendant_set(self, v: int) -> frozenset:
        self._check_node(v)
        cache = self._cache.setdefault("desc", {})
        if v not in cache:
            if "children" not in self._cache:
                children = [set() for _ in range(self.n)]
                for u in range(self.n):
                    for p in self._parent_sets()[u]:
                        children[p].add(u)
                self._cache["children"] = children
            cache[v] = self._closure(v, self._cache["children"])
        return cache[v]

    def anterior_set(self, v: int) -> frozenset:
        """Nodes with an anterior path (undirected prefix, then directed) to v."""
        self._check_node(v)
        cache = self._cache.setdefault("ant", {})
        if v not in cache:
            if "undirected" not in self._cache:
                und = [set() for _ in range(self.n)]
                for (i, j), (mi, mj) in self._edges.items():
                    if mi == TAIL and mj == TAIL:
                        und[i].add(j)
                        und[j].add(i)
                self._cache["undirected"] = und
            und = self._cache["undirected"]
            seen = set(self.ancestor_set(v))
            stack = list(seen)
            while stack:
                u = stack.pop()
                for w in und[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            cache[v] = frozenset(seen)
        return cache[v]


def _require_no_circles(g: MixedGraph) -> None:
    if g.has_circle_marks:
        raise ValueError("operation defined only on graphs without circle marks")


def ancestors(g: MixedGraph, x: int) -> frozenset:
    """{W : directed path W -> ... -> x exists} plus x itself."""
    g._check_node(x)
    _require_no_circles(g)
    return g.ancestor_set(x)


def descendants(g: MixedGraph, x: int) -> frozenset:
    g._check_node(x)
    _require_no_circles(g)
    return g.descendant_set(x)


def anteriors(g: MixedGraph, x: int) -> frozenset:
    """All W with an anterior path to x, plus x itself."""
    g._check_node(x)
    _require_no_circles(g)
    return g.anterior_set(x)


def ancestors_of_set(g: MixedGraph, vs) -> frozenset:
    out: set[int] = set()
    for v in vs:
        out |= g.ancestor_set(v)
    return frozenset(out)


def anteriors_of_set(g: MixedGraph, vs) -> frozenset:
    out: set[int] = set()
    for v in vs:
        out |= g.anterior_set(v)
    return frozenset(out)


def validate_ancestral(g: MixedGraph) -> list:
    """Check the ancestral-graph conditions; violations are returned as data.

    Returns an empty list iff (a) no edge has an arrowhead at X while X has a
    directed path to the other endpoint, (b) no node incident to an undirected
    edge carries an arrowhead anywhere, and (c) the directed part is acyclic.
    Each violation is a tuple ("arrow-into-ancestor", x, y), tuple
    ("arrow-at-undirected-node", v) or ("directed-cycle", v).  Circle-marked
    edges carry no claim and are ignored.
    """
    violations = []
    parents = g._parent_sets()

    # (c) directed cycle, via iterative DFS coloring over parent edges
    color = [0] * g.n  # 0 unvisited, 1 on stack, 2 done
    cyclic_nodes = set()
    for root in range(g.n):
        if color[root]:
            continue
        stack = [(root, iter(parents[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for p in it:
                if color[p] == 0:
                    color[p] = 1
                    stack.append((p, iter(parents[p])))
                    advanced = True
                    break
                if color[p] == 1:
                    cyclic_nodes.add(p)
            if not advanced:
                color[v] = 2
                stack.pop()
    for v in sorted(cyclic_nodes):
        violations.append(("directed-cycle", v))

    # ancestor closure over directed edges only (safe even with a cycle)
    anc = [g._closure(v, parents) for v in range(g.n)]

    has_undirected = set()
    has_arrowhead = set()
    for i, j, mi, mj in g.edges():
        if mi == TAIL and mj == TAIL:
            has_undirected.add(i)
            has_undirected.add(j)
        if mi == ARROW:
            has_arrowhead.add(i)
            if i in anc[j] and i != j:
                violations.append(("arrow-into-ancestor", i, j))
        if mj == ARROW:
            has_arrowhead.add(j)
            if j in anc[i] and j != i:
                violations.append(("arrow-into-ancestor", j, i))

    for v in sorted(has_undirected & has_arrowhead):
        violations.append(("arrow-at-undirected-node", v))
    return violations


def validate_maximal(g: MixedGraph, sep=None, subset_cap: int | None = None) -> list:
    """Non-adjacent pairs with no separating set, by exhaustive subset search.

    `sep` is a separation checker sep(g, x, y, zset) -> bool; defaults to the
    reachability m-separation test.  Intended for desk scale (roughly <= 12
    nodes); `subset_cap` optionally limits conditioning-set size.
    """
    if sep is None:
        from .separation import m_separated as sep
    bad = []
    nodes = list(range(g.n))
    for x, y in combinations(nodes, 2):
        if g.has_edge(x, y):
            continue
        others = [v for v in nodes if v != x and v != y]
        top = len(others) if subset_cap is None else min(subset_cap, len(others))
        found = False
        for r in range(top + 1):
            for z in combinations(others, r):
                if sep(g, x, y, set(z)):
                    found = True
                    break
            if found:
                break
        if not found:
            bad.append((x, y))
    return bad


def skeleton(g: MixedGraph) -> MixedGraph:
    """Mark-erasing copy: same adjacencies, every endpoint mark a circle."""
    s = MixedGraph(g.n, g.names, g.kinds)
    for i, j, _, _ in g.edges():
        s.add_edge(i, j, CIRCLE, CIRCLE)
    return s
