"""Hand-checked fixture graphs used by the tests and the docs.

`m5` is the canonical five-node MAG with a single D-sep link: the pair (X, Y)
is separable only by {U, V, Z}, and Z is adjacent to neither X nor Y, so no
adjacency-bounded search can find the set.  `staircase` is a larger instance
whose blocked path maps, after marginalizing the blocking node, onto a chain
of three bidirected edges through two induced edges.
"""

from __future__ import annotations

from .graph import ARROW, LATENT, OBSERVED, TAIL, MixedGraph
from .models import CausalModel


def m5() -> MixedGraph:
    """Five-node MAG: X <-> U <- Z -> V <-> Y plus U -> Y and V -> X.

    Non-adjacent pairs: (X,Z) sep by {V}, (Y,Z) sep by {U}, (U,V) sep by {Z},
    and the D-sep link (X,Y) sep only by {U,V,Z}.
    """
    g = MixedGraph(5, names=["X", "Y", "U", "V", "Z"])
    X, Y, U, V, Z = range(5)
    g.add_edge(X, U, ARROW, ARROW)
    g.add_edge(Z, U, TAIL, ARROW)
    g.add_edge(Z, V, TAIL, ARROW)
    g.add_edge(U, Y, TAIL, ARROW)
    g.add_edge(V, X, TAIL, ARROW)
    g.add_edge(V, Y, ARROW, ARROW)
    return g


def m5_model() -> CausalModel:
    """A causal DAG whose projection over the observed nodes is exactly m5().

    Two latent confounders produce the bidirected edges: L0 over (X, U) and
    L1 over (V, Y).
    """
    g = MixedGraph(
        7,
        names=["X", "Y", "U", "V", "Z", "L0", "L1"],
        kinds=[OBSERVED] * 5 + [LATENT] * 2,
    )
    X, Y, U, V, Z, L0, L1 = range(7)
    for a, b in [(L0, X), (L0, U), (L1, V), (L1, Y), (Z, U), (Z, V), (U, Y), (V, X)]:
        g.add_edge(a, b, TAIL, ARROW)
    return CausalModel(g)


def m5_plus_link() -> MixedGraph:
    """m5 with a genuine X <-> Y edge: the bidirected triple is present but the
    middle edge is real, so no candidate separating set can succeed."""
    g = m5()
    g.add_edge(0, 1, ARROW, ARROW)
    return g


def staircase() -> MixedGraph:
    """Eight-node MAG with D-sep link (X, Y) blocked by the single D-sep node Z.

    The path X <-> Z1 <- W -> Z2 <- Z -> Z3 <-> Z4 <-> Y is unblocked given the
    adjacent anteriors {Z1, Z2, Z3, Z4} and blocked only by Z.  Marginalizing
    {W, Z} induces X <-> Z2 and Z2 <-> Z4, leaving the bidirected chain
    X <-> Z2 <-> Z4 <-> Y.
    """
    g = MixedGraph(8, names=["X", "Y", "Z1", "Z2", "Z3", "Z4", "W", "Z"])
    X, Y, Z1, Z2, Z3, Z4, W, Z = range(8)
    g.add_edge(X, Z1, ARROW, ARROW)
    g.add_edge(W, Z1, TAIL, ARROW)
    g.add_edge(W, Z2, TAIL, ARROW)
    g.add_edge(Z, Z2, TAIL, ARROW)
    g.add_edge(Z, Z3, TAIL, ARROW)
    g.add_edge(Z3, Z4, ARROW, ARROW)
    g.add_edge(Z4, Y, ARROW, ARROW)
    g.add_edge(Z1, Z2, TAIL, ARROW)
    g.add_edge(Z3, Z2, TAIL, ARROW)
    g.add_edge(Z2, Y, TAIL, ARROW)
    g.add_edge(Z3, Y, TAIL, ARROW)
    g.add_edge(Z4, X, TAIL, ARROW)
    return g
