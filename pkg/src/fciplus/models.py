"""Ground-truth generation: random sparse DAGs with latent/selection nodes,
projection to MAGs, and marginal-MAG construction.

Adjacency in projections is decided by exhaustive subset search at desk scale;
an inducing-path reachability check is the faster equivalent used above that
scale (the two are cross-validated in the test suite).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import (
    ARROW,
    LATENT,
    OBSERVED,
    SELECTION,
    TAIL,
    MixedGraph,
    ancestors_of_set,
    anteriors_of_set,
)
from .separation import m_separated

# exhaustive subset search is the default below this many candidate nodes
_EXHAUSTIVE_LIMIT = 9


@dataclass(frozen=True)
class GenConfig:
    """Random-model parameters; everything is deterministic per seed."""

    n_observed: int
    n_latent: int = 0
    n_selection: int = 0
    max_degree: int = 3
    edge_prob: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if min(self.n_observed, self.n_latent, self.n_selection) < 0:
            raise ValueError("node counts must be >= 0")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must be in [0, 1]")


@dataclass
class CausalModel:
    """A DAG over observed + latent + selection nodes (kind labels on the graph)."""

    graph: MixedGraph

    @property
    def observed(self) -> tuple[int, ...]:
        return self.graph.nodes_of_kind(OBSERVED)

    @property
    def latent(self) -> tuple[int, ...]:
        return self.graph.nodes_of_kind(LATENT)

    @property
    def selection(self) -> tuple[int, ...]:
        return self.graph.nodes_of_kind(SELECTION)

    def validate(self) -> None:
        for i, j, mi, mj in self.graph.edges():
            if {mi, mj} != {TAIL, ARROW}:
                raise ValueError(f"model edge ({i},{j}) is not directed")
        for v in range(self.graph.n):
            anc = self.graph.ancestor_set(v)
            for p in anc:
                if p != v and v in self.graph.ancestor_set(p):
                    raise ValueError("model graph has a directed cycle")


def random_model(cfg: GenConfig) -> CausalModel:
    """Sample an acyclic digraph over a random topological order, resampling
    until the projected MAG's observed degree is within cfg.max_degree.
    """
    n = cfg.n_observed + cfg.n_latent + cfg.n_selection
    names = (
        [f"X{i}" for i in range(cfg.n_observed)]
        + [f"L{i}" for i in range(cfg.n_latent)]
        + [f"S{i}" for i in range(cfg.n_selection)]
    )
    kinds = (
        [OBSERVED] * cfg.n_observed
        + [LATENT] * cfg.n_latent
        + [SELECTION] * cfg.n_selection
    )
    rng = random.Random(cfg.seed)
    for _ in range(1000):
        g = MixedGraph(n, names, kinds)
        order = list(range(n))
        rng.shuffle(order)
        rank = {v: i for i, v in enumerate(order)}
        for i, j in combinations(range(n), 2):
            if rng.random() < cfg.edge_prob:
                a, b = (i, j) if rank[i] < rank[j] else (j, i)
                g.add_edge(a, b, TAIL, ARROW)
        model = CausalModel(g)
        mag = project_to_mag(model, method="fast")
        if n == 0 or max((mag.degree(v) for v in range(mag.n)), default=0) <= cfg.max_degree:
            return model
    raise RuntimeError(
        f"could not satisfy max_degree={cfg.max_degree} within 1000 attempts for {cfg}"
    )


def _inducing_reachable(g, x, y, passable_noncolliders, collider_anchor) -> bool:
    """Reachability form of the inducing-path criterion between x and y.

    A traversal may pass a node as a noncollider only if the node is in
    `passable_noncolliders`, and as a collider only if it is in
    `collider_anchor` (an ancestrally closed set).
    """
    seen = set()
    stack = []
    for t, _, m_t in g._incident(x):
        if t == y:
            return True
        if (t, m_t) not in seen:
            seen.add((t, m_t))
            stack.append((t, m_t))
    while stack:
        w, m_in = stack.pop()
        for t, m_w, m_t in g._incident(w):
            if m_in == ARROW and m_w == ARROW:
                if w not in collider_anchor:
                    continue
            elif w not in passable_noncolliders:
                continue
            if t == y:
                return True
            if (t, m_t) not in seen:
                seen.add((t, m_t))
                stack.append((t, m_t))
    return False


def _separable_exhaustive(g, x, y, pool, base) -> bool:
    """Is there Z subset of pool with x indep y | Z + base, by subset search?"""
    pool = sorted(pool)
    for r in range(len(pool) + 1):
        for z in combinations(pool, r):
            if m_separated(g, x, y, set(z) | base):
                return True
    return False


def _pick_method(method: str, pool_size: int) -> str:
    if method == "auto":
        return "exhaustive" if pool_size <= _EXHAUSTIVE_LIMIT else "fast"
    if method not in ("exhaustive", "fast"):
        raise ValueError(f"unknown method {method!r}")
    return method


def project_to_mag(m: CausalModel, method: str = "auto") -> MixedGraph:
    """Project a causal model to the MAG over its observed nodes.

    X, Y are adjacent iff no subset of the remaining observed nodes d-separates
    them given that subset plus the selection nodes; the mark at X is an
    arrowhead iff X is not an ancestor of {Y} + selection in the DAG.
    """
    dag = m.graph
    obs = list(m.observed)
    lat = set(m.latent)
    sel = set(m.selection)
    method = _pick_method(method, len(obs))
    out = MixedGraph(len(obs), [dag.names[v] for v in obs], [OBSERVED] * len(obs))
    new_id = {v: i for i, v in enumerate(obs)}
    anc_sel = ancestors_of_set(dag, sel) if sel else frozenset()
    for a, b in combinations(obs, 2):
        if method == "exhaustive":
            pool = [v for v in obs if v != a and v != b]
            adjacent = not _separable_exhaustive(dag, a, b, pool, sel)
        else:
            anchor = dag.ancestor_set(a) | dag.ancestor_set(b) | anc_sel
            adjacent = _inducing_reachable(dag, a, b, lat, anchor)
        if adjacent:
            mark_a = TAIL if a in dag.ancestor_set(b) | anc_sel else ARROW
            mark_b = TAIL if b in dag.ancestor_set(a) | anc_sel else ARROW
            out.add_edge(new_id[a], new_id[b], mark_a, mark_b)
    return out


def marginalize_mag(g: MixedGraph, drop, method: str = "auto") -> MixedGraph:
    """Marginal MAG over the kept nodes of an ancestral graph g.

    Kept X, Y are adjacent iff no subset of the other kept nodes m-separates
    them in g; the mark at X is an arrowhead iff X is not anterior to Y in g.
    """
    dropset = set(drop)
    for v in dropset:
        g._check_node(v)
    kept = [v for v in range(g.n) if v not in dropset]
    method = _pick_method(method, len(kept))
    out = MixedGraph(len(kept), [g.names[v] for v in kept], [g.kinds[v] for v in kept])
    new_id = {v: i for i, v in enumerate(kept)}
    for a, b in combinations(kept, 2):
        if method == "exhaustive":
            pool = [v for v in kept if v != a and v != b]
            adjacent = not _separable_exhaustive(g, a, b, pool, set())
        else:
            anchor = g.ancestor_set(a) | g.ancestor_set(b)
            adjacent = _inducing_reachable(g, a, b, dropset, anchor)
        if adjacent:
            mark_a = TAIL if a in g.anterior_set(b) else ARROW
            mark_b = TAIL if b in g.anterior_set(a) else ARROW
            out.add_edge(new_id[a], new_id[b], mark_a, mark_b)
    return out


def move_to_latent(m: CausalModel, drop) -> CausalModel:
    """Copy of the model with the given observed nodes relabeled as latent."""
    g = m.graph.copy()
    for v in drop:
        g._check_node(v)
        if g.kinds[v] != OBSERVED:
            raise ValueError(f"node {v} is not observed")
        g.kinds[v] = LATENT
    return CausalModel(g)


def dag_oracle_conditioning_selection(m: CausalModel):
    """d-separation checker in the model DAG that always conditions on the
    selection nodes; signature matches m_separated over observed ids.
    """
    sel = set(m.selection)

    def check(x, y, z):
        return m_separated(m.graph, x, y, set(z) | sel)

    return check
