"""m-separation decision procedures, independence oracles, and set minimization.

The production test is a linear-time reachability over (node, entering-mark)
states; the brute-force variant enumerates all simple paths and applies the
blocking definition literally, and is kept only as an oracle for the fast
test.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field

from .graph import ARROW, MixedGraph, ancestors_of_set


def _check_triple(g: MixedGraph, x: int, y: int, z) -> frozenset:
    g._check_node(x)
    g._check_node(y)
    zset = frozenset(z)
    for v in zset:
        g._check_node(v)
    if x == y:
        raise ValueError("x and y must differ")
    if x in zset or y in zset:
        raise ValueError("conditioning set must exclude x and y")
    return zset


def m_separated(g: MixedGraph, x: int, y: int, z) -> bool:
    """True iff no path between x and y is unblocked given z.

    A traversal may pass a node as a collider only if the node is an ancestor
    of z, and as a noncollider only if the node is not in z.  Defined on
    DAGs/MAGs only: circle marks raise.
    """
    zset = _check_triple(g, x, y, z)
    if g.has_circle_marks:
        raise ValueError("m-separation is defined only on graphs without circle marks")
    anc_z = ancestors_of_set(g, zset)
    seen = set()
    queue = deque()
    for t, _, m_t in g._incident(x):
        if t == y:
            return False
        if (t, m_t) not in seen:
            seen.add((t, m_t))
            queue.append((t, m_t))
    while queue:
        w, m_in = queue.popleft()
        w_is_collider_entry = m_in == ARROW
        for t, m_w, m_t in g._incident(w):
            if w_is_collider_entry and m_w == ARROW:
                if w not in anc_z:
                    continue
            elif w in zset:
                continue
            if t == y:
                return False
            if (t, m_t) not in seen:
                seen.add((t, m_t))
                queue.append((t, m_t))
    return True


def m_separated_bruteforce(g: MixedGraph, x: int, y: int, z) -> bool:
    """Path-enumeration oracle for `m_separated`; small graphs only."""
    zset = _check_triple(g, x, y, z)
    if g.has_circle_marks:
        raise ValueError("m-separation is defined only on graphs without circle marks")
    anc_z = ancestors_of_set(g, zset)

    def unblocked(path) -> bool:
        for idx in range(1, len(path) - 1):
            w = path[idx]
            into_prev = g.mark_at(w, path[idx - 1])
            into_next = g.mark_at(w, path[idx + 1])
            if into_prev == ARROW and into_next == ARROW:  # collider
                if w not in anc_z:
                    return False
            elif w in zset:
                return False
        return True

    # DFS over all simple paths from x to y
    stack = [(x, [x])]
    while stack:
        v, path = stack.pop()
        for t in g.neighbors(v):
            if t in path:
                continue
            if t == y:
                if unblocked(path + [y]):
                    return False
            else:
                stack.append((t, path + [t]))
    return True


@dataclass(frozen=True)
class IndependenceRecord:
    """A statement <x indep y | z>, optionally flagged as minimal.

    Minimal means removing any single element of z breaks the independence;
    the flag is audited on demand against an oracle, not at construction.
    """

    x: int
    y: int
    z: frozenset
    minimal: bool = False

    def __post_init__(self):
        if self.x == self.y:
            raise ValueError("x and y must differ")
        object.__setattr__(self, "z", frozenset(self.z))
        if self.x in self.z or self.y in self.z:
            raise ValueError("conditioning set must exclude x and y")
        if self.x > self.y:
            x, y = self.y, self.x
            object.__setattr__(self, "x", x)
            object.__setattr__(self, "y", y)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.x, self.y)


class IndependenceOracle:
    """Counted, memoized conditional-independence query interface.

    Answers are deterministic and symmetric in (x, y).  The counter counts
    distinct un-memoized queries only, so test-count statistics reflect the
    number of independence tests an algorithm actually consumes.  Memo and
    counter updates are lock-protected; queries themselves are pure.
    """

    def __init__(self, fn, n_nodes: int | None = None):
        self._fn = fn
        self.n_nodes = n_nodes
        self._memo: dict = {}
        self._log: list = []
        self._count = 0
        self._lock = threading.Lock()

    def query(self, x: int, y: int, z) -> bool:
        zset = frozenset(z)
        if x == y or x in zset or y in zset:
            raise ValueError("query requires distinct x, y not in z")
        key = (x, y, zset) if x < y else (y, x, zset)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        answer = bool(self._fn(key[0], key[1], zset))
        with self._lock:
            if key not in self._memo:
                self._memo[key] = answer
                self._count += 1
                self._log.append((key[0], key[1], tuple(sorted(zset)), answer))
        return answer

    @property
    def count(self) -> int:
        return self._count

    def checkpoint(self) -> int:
        """Current counter value, for per-stage deltas."""
        return self._count

    def log_csv_lines(self) -> list[str]:
        """Distinct queries as CSV lines `x,y,"z1;z2",answer` (answer 1/0)."""
        return [
            f'{x},{y},"{";".join(str(v) for v in z)}",{1 if ans else 0}'
            for x, y, z, ans in self._log
        ]


def oracle_from_mag(g: MixedGraph) -> IndependenceOracle:
    """Faithful oracle for a MAG: independence iff m-separation in g."""
    return IndependenceOracle(lambda x, y, z: m_separated(g, x, y, z), n_nodes=g.n)


def minimize_sepset(o: IndependenceOracle, x: int, y: int, z) -> frozenset:
    """Shrink a separating set to a minimal one, removing redundant nodes
    one-by-one (ascending id, restarting after each removal; <= |z|^2 queries).
    """
    zset = frozenset(z)
    if not o.query(x, y, zset):
        raise ValueError("minimize_sepset requires x indep y | z to hold")
    current = sorted(zset)
    changed = True
    while changed:
        changed = False
        for w in list(current):
            reduced = [v for v in current if v != w]
            if o.query(x, y, reduced):
                current = reduced
                changed = True
                break
    return frozenset(current)


def single_node_dependence(o: IndependenceOracle, x: int, y: int, z, w: int) -> bool:
    """Given x indep y | z, does adding the single node w break it?"""
    zset = frozenset(z)
    if w == x or w == y or w in zset:
        raise ValueError("w must be outside {x, y} and z")
    return not o.query(x, y, zset | {w})
