"""Brute-force references: exhaustive D-sep search over all conditioning
subsets, ground-truth D-sep-link analysis, and output comparison.

The exhaustive search deliberately replaces any restricted candidate-set
construction with the full powerset at desk scale: a strictly stronger ground
truth, guarded by a node cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import ARROW, CIRCLE, MixedGraph, anteriors_of_set
from .separation import IndependenceOracle, IndependenceRecord, m_separated
from .discovery import AugmentedSkeleton, IndependenceSet

DEFAULT_NODE_CAP = 16


def exhaustive_dsep_search(o: IndependenceOracle, s: AugmentedSkeleton,
                           records: IndependenceSet, cap: int = DEFAULT_NODE_CAP):
    """Resolve every remaining edge by testing all conditioning subsets.

    For each remaining edge (X, Y), in ascending pair order, tests X indep Y | Z
    for every Z over the other nodes in ascending size (lexicographic within a
    size) until independence or exhaustion; removes the edge on independence.
    Smallest-first enumeration makes the found set minimal by cardinality.
    Returns (updated skeleton, updated records); inputs are not mutated.
    """
    n = s.graph.n
    if n > cap:
        raise ValueError(f"node count {n} exceeds exhaustive-search cap {cap}")
    out = s.copy()
    recs = records.copy()
    for x, y, _, _ in list(s.graph.edges()):
        others = [v for v in range(n) if v != x and v != y]
        found = None
        for r in range(len(others) + 1):
            for z in combinations(others, r):
                if o.query(x, y, z):
                    found = frozenset(z)
                    break
            if found is not None:
                break
        if found is not None:
            out.remove_edge(x, y)
            recs.add(IndependenceRecord(x, y, found, minimal=True))
    return out, recs


# -- ground-truth D-sep analysis (graph side, no oracle counting) -------------


def _minimize_msep(g, x, y, zset, keep=frozenset()):
    """Drop removable nodes (ascending id, restart) while keeping `keep`."""
    current = sorted(zset)
    changed = True
    while changed:
        changed = False
        for w in current:
            if w in keep:
                continue
            reduced = [v for v in current if v != w]
            if m_separated(g, x, y, reduced):
                current = reduced
                changed = True
                break
    return frozenset(current)


def adjacent_anteriors(g: MixedGraph, xs) -> frozenset:
    """Nodes adjacent to and anterior to the given set, excluding the set."""
    xs = frozenset(xs)
    adj = {w for v in xs for w in g.neighbors(v)}
    return frozenset((adj & anteriors_of_set(g, xs)) - xs)


def is_dsep_link(g: MixedGraph, x: int, y: int) -> bool:
    """Non-adjacent, separable, but not by any subset of Adj({x, y})."""
    if g.has_edge(x, y):
        return False
    canonical = anteriors_of_set(g, (x, y)) - {x, y}
    if not m_separated(g, x, y, canonical):
        return False  # not separable at all (non-maximal input)
    pool = sorted(({w for v in (x, y) for w in g.neighbors(v)}) - {x, y})
    for r in range(len(pool) + 1):
        for z in combinations(pool, r):
            if m_separated(g, x, y, z):
                return False
    return True


def dsep_links(g: MixedGraph) -> list:
    return [
        (x, y)
        for x, y in combinations(range(g.n), 2)
        if not g.has_edge(x, y) and is_dsep_link(g, x, y)
    ]


def dsep_standard_form(g: MixedGraph, x: int, y: int):
    """Split a separating set into (adjacent-anterior part, D-sep-node part).

    Minimizes the canonical anterior separator, pads it with the full
    adjacent-anterior set, then eliminates non-adjacent nodes first and
    adjacent-anterior nodes second.  Returns (z_aa, z_ds) or None when x, y are
    inseparable.  The split need not be unique; elimination order is fixed
    ascending for determinism.
    """
    if g.has_edge(x, y):
        return None
    canonical = anteriors_of_set(g, (x, y)) - {x, y}
    if not m_separated(g, x, y, canonical):
        return None
    zmin = _minimize_msep(g, x, y, canonical)
    aa = adjacent_anteriors(g, (x, y))
    rest = zmin - aa
    with_aa = aa | rest
    assert m_separated(g, x, y, with_aa)
    z_ds = _minimize_msep(g, x, y, with_aa, keep=aa) - aa
    z_aa = _minimize_msep(g, x, y, aa | z_ds, keep=z_ds) - z_ds
    return z_aa, z_ds


def bidirected_path_exists(g: MixedGraph, x: int, y: int, min_edges: int = 3) -> bool:
    """Is there a simple path of >= min_edges consecutive bidirected edges?"""
    spouses = {v: set() for v in range(g.n)}
    for i, j, mi, mj in g.edges():
        if mi == ARROW and mj == ARROW:
            spouses[i].add(j)
            spouses[j].add(i)
    stack = [(x, (x,))]
    while stack:
        v, path = stack.pop()
        for t in sorted(spouses[v]):
            if t in path:
                continue
            if t == y:
                if len(path) >= min_edges:
                    return True
                continue
            stack.append((t, path + (t,)))
    return False


# -- output comparison --------------------------------------------------------


@dataclass
class ComparisonReport:
    """Pairwise and endpoint-mark agreement between two learned graphs.

    Pair verdicts partition all node pairs: both-removed, only-one, neither.
    Arrowhead counts treat circles as carrying no claim: a position counts as
    agreement only when both graphs place an arrowhead there, and as a
    conflict when one places an arrowhead where the other places a tail.
    """

    n_nodes: int
    verdicts: dict
    arrow_both: int
    arrow_only_a: int
    arrow_only_b: int
    arrow_conflicts: int
    arrows_matching_truth_a: int
    arrows_contradicting_truth_a: int
    arrows_matching_truth_b: int
    arrows_contradicting_truth_b: int
    query_ratio: float | None = None

    def csv_lines(self) -> list[str]:
        lines = ["metric,value"]
        counts = {"both-removed": 0, "only-one": 0, "neither": 0}
        for verdict in self.verdicts.values():
            counts[verdict] += 1
        for key in ("both-removed", "only-one", "neither"):
            lines.append(f"pairs-{key},{counts[key]}")
        lines.append(f"arrow-both,{self.arrow_both}")
        lines.append(f"arrow-only-a,{self.arrow_only_a}")
        lines.append(f"arrow-only-b,{self.arrow_only_b}")
        lines.append(f"arrow-conflicts,{self.arrow_conflicts}")
        lines.append(f"arrows-matching-truth-a,{self.arrows_matching_truth_a}")
        lines.append(f"arrows-contradicting-truth-a,{self.arrows_contradicting_truth_a}")
        lines.append(f"arrows-matching-truth-b,{self.arrows_matching_truth_b}")
        lines.append(f"arrows-contradicting-truth-b,{self.arrows_contradicting_truth_b}")
        ratio = "" if self.query_ratio is None else f"{self.query_ratio:.6f}"
        lines.append(f"query-ratio,{ratio}")
        return lines

    @property
    def full_agreement(self) -> bool:
        return (
            all(v != "only-one" for v in self.verdicts.values())
            and self.arrow_only_a == 0
            and self.arrow_only_b == 0
            and self.arrow_conflicts == 0
        )


def _truth_marks(a: MixedGraph, truth: MixedGraph):
    matching = contradicting = 0
    for i, j, mi, mj in a.edges():
        if not truth.has_edge(i, j):
            continue
        ti, tj = truth.marks(i, j)
        for mark, tmark in ((mi, ti), (mj, tj)):
            if mark == ARROW:
                if tmark == ARROW:
                    matching += 1
                else:
                    contradicting += 1
    return matching, contradicting


def compare_outputs(a: MixedGraph, b: MixedGraph, truth: MixedGraph,
                    queries_a: int | None = None, queries_b: int | None = None) -> ComparisonReport:
    """Compare two learned graphs over the same node set against ground truth."""
    if not (a.n == b.n == truth.n):
        raise ValueError("graphs must share one node set")
    verdicts = {}
    arrow_both = arrow_only_a = arrow_only_b = conflicts = 0
    for x, y in combinations(range(a.n), 2):
        in_a, in_b = a.has_edge(x, y), b.has_edge(x, y)
        if not in_a and not in_b:
            verdicts[(x, y)] = "both-removed"
        elif in_a != in_b:
            verdicts[(x, y)] = "only-one"
        else:
            verdicts[(x, y)] = "neither"
            ma, mb = a.marks(x, y), b.marks(x, y)
            for pa, pb in zip(ma, mb):
                if pa == ARROW and pb == ARROW:
                    arrow_both += 1
                elif pa == ARROW and pb == CIRCLE:
                    arrow_only_a += 1
                elif pb == ARROW and pa == CIRCLE:
                    arrow_only_b += 1
                elif ARROW in (pa, pb) and (pa, pb).count(CIRCLE) == 0 and pa != pb:
                    conflicts += 1
    ma, ca = _truth_marks(a, truth)
    mb, cb = _truth_marks(b, truth)
    ratio = None
    if queries_a is not None and queries_b:
        ratio = queries_a / queries_b
    return ComparisonReport(
        n_nodes=a.n,
        verdicts=verdicts,
        arrow_both=arrow_both,
        arrow_only_a=arrow_only_a,
        arrow_only_b=arrow_only_b,
        arrow_conflicts=conflicts,
        arrows_matching_truth_a=ma,
        arrows_contradicting_truth_a=ca,
        arrows_matching_truth_b=mb,
        arrows_contradicting_truth_b=cb,
        query_ratio=ratio,
    )
