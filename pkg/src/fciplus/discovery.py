"""FCI+ discovery: PC adjacency search, skeleton augmentation, bidirected-triple
candidate detection, hierarchy construction, and the outer fixpoint loop.

The learner talks to an independence oracle only.  Surplus edges surviving the
PC stage are exactly the D-sep links of the true MAG; each one eventually
shows up as the middle edge of a bidirected triple in the augmented skeleton,
where it is resolved by querying hierarchy-built candidate separating sets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from .graph import ARROW, CIRCLE, MixedGraph
from .separation import (
    IndependenceOracle,
    IndependenceRecord,
    minimize_sepset,
    single_node_dependence,
)


class IndependenceSet:
    """Minimal independence records, at most one per node pair (first wins)."""

    def __init__(self, records=()):
        self._by_pair: dict[tuple[int, int], IndependenceRecord] = {}
        for rec in records:
            self.add(rec)

    def add(self, rec: IndependenceRecord) -> bool:
        """Store rec unless the pair already has a record; returns True if stored."""
        if rec.pair in self._by_pair:
            return False
        self._by_pair[rec.pair] = rec
        return True

    def get(self, x: int, y: int):
        return self._by_pair.get((x, y) if x < y else (y, x))

    def pairs(self):
        return sorted(self._by_pair)

    def __iter__(self):
        for pair in sorted(self._by_pair):
            yield self._by_pair[pair]

    def __len__(self) -> int:
        return len(self._by_pair)

    def copy(self) -> "IndependenceSet":
        out = IndependenceSet()
        out._by_pair = dict(self._by_pair)
        return out

    def audit_minimal(self, oracle: IndependenceOracle) -> list:
        """Records failing the minimality contract against the given oracle."""
        bad = []
        for rec in self:
            if not oracle.query(rec.x, rec.y, rec.z):
                bad.append((rec, "not independent"))
                continue
            for w in sorted(rec.z):
                if oracle.query(rec.x, rec.y, rec.z - {w}):
                    bad.append((rec, f"node {w} removable"))
                    break
        return bad


class AugmentedSkeleton:
    """Learned skeleton whose marks are circles or invariant arrowheads, plus a
    provenance log mapping every arrowhead to the record and node that produced it.
    """

    def __init__(self, graph: MixedGraph):
        self.graph = graph
        # (w, t) -> list of records whose augmentation placed the arrow at w on (w, t)
        self.provenance: dict[tuple[int, int], list[IndependenceRecord]] = {}

    def copy(self) -> "AugmentedSkeleton":
        out = AugmentedSkeleton(self.graph.copy())
        out.provenance = {k: list(v) for k, v in self.provenance.items()}
        return out

    def place_arrowhead(self, w: int, t: int, rec: IndependenceRecord) -> None:
        self.graph.set_mark(w, t, ARROW)
        entries = self.provenance.setdefault((w, t), [])
        if rec not in entries:
            entries.append(rec)

    def remove_edge(self, x: int, y: int) -> None:
        self.graph.remove_edge(x, y)
        for key in [(x, y), (y, x)]:
            self.provenance.pop(key, None)

    def reset_marks(self) -> None:
        for i, j, mi, mj in list(self.graph.edges()):
            if mi != CIRCLE:
                self.graph.set_mark(i, j, CIRCLE)
            if mj != CIRCLE:
                self.graph.set_mark(j, i, CIRCLE)
        self.provenance.clear()

    def bidirected(self, x: int, y: int) -> bool:
        if not self.graph.has_edge(x, y):
            return False
        mi, mj = self.graph.marks(x, y)
        return mi == ARROW and mj == ARROW

    def provenance_lines(self, names=None) -> list[str]:
        """Text log, one line per arrowhead placement."""
        label = (lambda v: names[v]) if names else str
        lines = []
        for (w, t) in sorted(self.provenance):
            for rec in self.provenance[(w, t)]:
                zs = ",".join(label(v) for v in sorted(rec.z))
                lines.append(
                    f"arrowhead {label(w)} on ({label(w)},{label(t)}) "
                    f"from record ({label(rec.x)},{label(rec.y)}|{{{zs}}})"
                )
        return lines


@dataclass
class Hierarchy:
    """Least fixpoint of repeatedly adding every node that appears in a stored
    minimal separating set between two nodes already included."""

    seed: frozenset
    members: frozenset
    # (record pair, nodes that entered through that record), in firing order
    steps: tuple = ()


@dataclass
class DiscoveryStats:
    queries_pc: int = 0
    queries_augment: int = 0
    queries_search: int = 0
    candidates_examined: int = 0
    links_removed: int = 0
    seconds: float = 0.0

    @property
    def total_queries(self) -> int:
        return self.queries_pc + self.queries_augment + self.queries_search

    def csv_rows(self) -> list[tuple]:
        """Rows for the `stage,queries,candidates,removed,seconds` schema."""
        return [
            ("pc", self.queries_pc, 0, 0, 0.0),
            ("augment", self.queries_augment, 0, 0, 0.0),
            ("search", self.queries_search, self.candidates_examined, self.links_removed, 0.0),
            ("total", self.total_queries, self.candidates_examined, self.links_removed, self.seconds),
        ]


def _complete_circle_graph(n: int, names, kinds) -> MixedGraph:
    g = MixedGraph(n, names, kinds)
    for i, j in combinations(range(n), 2):
        g.add_edge(i, j, CIRCLE, CIRCLE)
    return g


def _pc(o: IndependenceOracle, n_nodes: int, k, names, kinds):
    """PC adjacency search; returns (skeleton, records, effective k).

    k=None picks the practical default after the level-0/1 pruning: the
    largest remaining adjacency size.
    """
    g = _complete_circle_graph(n_nodes, names, kinds)
    adj = {v: set(g.neighbors(v)) for v in range(n_nodes)}
    records = IndependenceSet()
    level = 0
    while k is None or level <= k:
        if k is None and level == 2:
            k = max((len(adj[v]) for v in range(n_nodes)), default=0)
            if level > k:
                break
        testable = False
        for x, y in combinations(range(n_nodes), 2):
            if y not in adj[x]:
                continue
            removed = False
            for a, b in ((x, y), (y, x)):
                pool = sorted(adj[a] - {b})
                if len(pool) >= level:
                    testable = True
                for zc in combinations(pool, level):
                    if o.query(x, y, zc):
                        g.remove_edge(x, y)
                        adj[x].discard(y)
                        adj[y].discard(x)
                        zmin = minimize_sepset(o, x, y, zc)
                        records.add(IndependenceRecord(x, y, zmin, minimal=True))
                        removed = True
                        break
                if removed:
                    break
        if not testable:
            break
        level += 1
    if k is None:
        k = max((len(adj[v]) for v in range(n_nodes)), default=0)
    return AugmentedSkeleton(g), records, k


def pc_skeleton(o: IndependenceOracle, n_nodes: int, k: int, names=None, kinds=None):
    """Standard PC adjacency search up to conditioning-set size k.

    For ascending set size, each remaining edge (X, Y) is tested against
    subsets of the current adjacency of X minus Y, then of Y minus X; on
    independence the edge is removed and the minimized separating set stored.
    The output skeleton contains every true MAG edge; surplus edges can remain
    only between D-separable pairs.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    skel, records, _ = _pc(o, n_nodes, k, names, kinds)
    return skel, records


def _augment_into(s: AugmentedSkeleton, records, o: IndependenceOracle) -> None:
    g = s.graph
    for rec in records:
        members = {rec.x, rec.y} | set(rec.z)
        fringe = sorted(
            {w for m in members for w in g.neighbors(m)} - members
        )
        for w in fringe:
            if single_node_dependence(o, rec.x, rec.y, rec.z, w):
                for t in sorted(members):
                    if g.has_edge(w, t):
                        s.place_arrowhead(w, t, rec)


def augment(s: AugmentedSkeleton, records: IndependenceSet, o: IndependenceOracle) -> AugmentedSkeleton:
    """Add invariant arrowheads: for each record <X indep Y | Z> and each node W
    on a skeleton edge to {X,Y}+Z that creates a single-node dependence, place
    an arrowhead at W on every edge between W and {X,Y}+Z.  Idempotent.
    """
    out = s.copy()
    _augment_into(out, records, o)
    return out


def dsep_candidates(s: AugmentedSkeleton) -> list:
    """Edges that appear as the middle link of a bidirected triple.

    Returns edges (X, Y) with witnesses U, V such that U<->X, X<->Y, Y<->V are
    all bidirected, U != V, U and V non-adjacent, U != Y and V != X; ascending
    pair order.
    """
    g = s.graph
    out = []
    for i, j, mi, mj in g.edges():
        if mi != ARROW or mj != ARROW:
            continue
        found = False
        for u in sorted(g.neighbors(i)):
            if u == j or not s.bidirected(u, i):
                continue
            for v in sorted(g.neighbors(j)):
                if v == i or v == u or not s.bidirected(j, v):
                    continue
                if not g.has_edge(u, v):
                    found = True
                    break
            if found:
                break
        if found:
            out.append((i, j))
    return out


def hierarchy(seed, records: IndependenceSet) -> Hierarchy:
    """Least fixpoint of the separating-set recursion over stored records."""
    seed = frozenset(seed)
    members = set(seed)
    steps = []
    changed = True
    while changed:
        changed = False
        for rec in records:
            if rec.x in members and rec.y in members:
                new = rec.z - members
                if new:
                    members |= new
                    steps.append(((rec.x, rec.y), frozenset(new)))
                    changed = True
    return Hierarchy(seed=seed, members=frozenset(members), steps=tuple(steps))


def _seed_pairs(adj_x, adj_y, k):
    """AA-seed enumeration: ascending combined size, then lexicographic."""
    max_x = min(k, len(adj_x))
    max_y = min(k, len(adj_y))
    for total in range(max_x + max_y + 1):
        for a in range(min(total, max_x) + 1):
            b = total - a
            if b > max_y:
                continue
            for ax in combinations(adj_x, a):
                for ay in combinations(adj_y, b):
                    yield ax, ay


def _resolve_detail(o, x, y, s, records, k):
    adj_x = sorted(set(s.graph.neighbors(x)) - {y})
    adj_y = sorted(set(s.graph.neighbors(y)) - {x})
    for ax, ay in _seed_pairs(adj_x, adj_y, k):
        seed = frozenset({x, y}) | set(ax) | set(ay)
        q = hierarchy(seed, records).members - {x, y}
        if o.query(x, y, q):
            return minimize_sepset(o, x, y, q), ax, ay, frozenset(q)
    return None


def resolve_candidate(o: IndependenceOracle, x: int, y: int, s: AugmentedSkeleton,
                      records: IndependenceSet, k: int):
    """Try to confirm the candidate edge (x, y) as a D-sep link.

    Enumerates adjacent-anterior seed pairs (subsets of the current
    adjacencies, at most k per side) in ascending combined size, queries the
    oracle on the hierarchy each seed generates, and returns the minimized
    separating set of the first success, or None if every seed fails.
    """
    hit = _resolve_detail(o, x, y, s, records, k)
    return hit[0] if hit else None


def fci_plus_run(o: IndependenceOracle, n_nodes: int, k: int | None = None,
                 names=None, kinds=None, full_reaugment: bool = False,
                 trace: list | None = None):
    """Full discovery run: PC search, augmentation, then the candidate loop.

    Candidates are taken in deterministic (ascending pair) order.  A resolved
    candidate removes its edge, stores the new minimal record, re-augments
    (incrementally unless full_reaugment), and clears the failed-candidate
    cache so previously failed edges are rechecked.  The loop ends when every
    current candidate has failed since the last removal.

    Returns (AugmentedSkeleton, IndependenceSet, DiscoveryStats).  k should be
    at least the maximum degree of the true MAG; k=None uses the largest
    adjacency size left after the size-0/1 PC pruning.
    """
    stats = DiscoveryStats()
    t0 = time.perf_counter()

    mark = o.checkpoint()
    s, records, k = _pc(o, n_nodes, k, names, kinds)
    stats.queries_pc = o.checkpoint() - mark

    mark = o.checkpoint()
    _augment_into(s, records, o)
    stats.queries_augment = o.checkpoint() - mark

    mark = o.checkpoint()
    failed: set[tuple[int, int]] = set()
    while True:
        cands = dsep_candidates(s)
        if trace is not None:
            trace.append(("candidates", tuple(cands),
                          frozenset((i, j) for i, j, _, _ in s.graph.edges())))
        progressed = False
        for x, y in cands:
            if (x, y) in failed:
                continue
            stats.candidates_examined += 1
            hit = _resolve_detail(o, x, y, s, records, k)
            if hit is None:
                failed.add((x, y))
                if trace is not None:
                    trace.append(("failed", (x, y)))
                continue
            zmin, ax, ay, q = hit
            s.remove_edge(x, y)
            new_rec = IndependenceRecord(x, y, zmin, minimal=True)
            records.add(new_rec)
            if full_reaugment:
                s.reset_marks()
                _augment_into(s, records, o)
            else:
                touched = [new_rec] + [
                    rec for rec in records
                    if rec is not new_rec and ({x, y} & ({rec.x, rec.y} | set(rec.z)))
                ]
                _augment_into(s, touched, o)
            failed.clear()
            stats.links_removed += 1
            if trace is not None:
                trace.append(("removed", (x, y), zmin, ax, ay, q))
            progressed = True
            break
        if not progressed:
            break
    stats.queries_search = o.checkpoint() - mark
    stats.seconds = time.perf_counter() - t0
    return s, records, stats
