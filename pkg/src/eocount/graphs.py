"""Simple undirected graphs and the exact quantities the estimators need:
Laplacian, spanning-tree count, Cheeger constant, degree predicates.

Vertices are 0-based contiguous integers internally; the text/JSON formats use
1-based labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, SizeLimitError

CHEEGER_MAX_N = 22  # exhaustive 2^(n-1) scan


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 (no loops, no multi-edges)."""

    n: int
    edges: frozenset[tuple[int, int]]  # pairs (u, v) with u < v
    degrees: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be nonnegative")
        deg = [0] * self.n
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise DomainError(f"bad edge ({u}, {v}) for n={self.n}")
            deg[u] += 1
            deg[v] += 1
        object.__setattr__(self, "degrees", tuple(deg))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = adjacency_lists(self)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def adjacency_lists(g: Graph) -> list[list[int]]:
    adj = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


# ---------------------------------------------------------------------------
# named families (used by tests and as CLI conveniences)

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(*sizes: int) -> Graph:
    n = sum(sizes)
    labels = []
    for part, s in enumerate(sizes):
        labels.extend([part] * s)
    edges = [(u, v) for u, v in combinations(range(n), 2)
             if labels[u] != labels[v]]
    return Graph.from_edges(n, edges)


def octahedron_graph() -> Graph:
    return complete_multipartite(2, 2, 2)


def circulant_graph(n: int, offsets) -> Graph:
    edges = set()
    for d in offsets:
        d %= n
        if d == 0:
            raise DomainError("zero offset makes a self-loop")
        for i in range(n):
            edges.add((min(i, (i + d) % n), max(i, (i + d) % n)))
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# I/O: plain-text edge list and JSON, both 1-based

def parse_edge_list(text: str) -> Graph:
    """First line is the vertex count, then one 'j k' pair per line, 1-based.

    Blank lines and lines starting with '#' are skipped.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise DomainError("empty graph file")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise DomainError(f"bad edge line: {ln!r}")
        j, k = int(parts[0]), int(parts[1])
        if not (1 <= j <= n and 1 <= k <= n):
            raise DomainError(f"edge ({j}, {k}) out of range 1..{n}")
        edges.append((j - 1, k - 1))
    return Graph.from_edges(n, edges)


def parse_graph_json(obj) -> Graph:
    """{"n": N, "edges": [[j, k], ...]} with 1-based vertex labels."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = int(obj["n"])
    edges = []
    for j, k in obj["edges"]:
        if not (1 <= j <= n and 1 <= k <= n):
            raise DomainError(f"edge ({j}, {k}) out of range 1..{n}")
        edges.append((int(j) - 1, int(k) - 1))
    return Graph.from_edges(n, edges)


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": sorted([u + 1, v + 1] for u, v in g.edges)}


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_graph_json(stripped)
    return parse_edge_list(text)


# ---------------------------------------------------------------------------
# Laplacian and spanning trees

def laplacian(g: Graph) -> list[list[int]]:
    """Laplacian as a nested list of exact ints: degrees on the diagonal,
    -1 at edges.  Its quadratic form is the sum of (x_j - x_k)^2 over edges."""
    L = [[0] * g.n for _ in range(g.n)]
    for v in range(g.n):
        L[v][v] = g.degrees[v]
    for u, v in g.edges:
        L[u][v] = -1
        L[v][u] = -1
    return L


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant; exact for integer matrices."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def spanning_tree_count(g: Graph, delete_index: int = 0) -> int:
    """Number of spanning trees via the matrix-tree theorem.

    Returns 0 for disconnected graphs (the cofactor vanishes).  The deleted
    row/column index does not affect the result.
    """
    if g.n == 0:
        return 0
    if g.n == 1:
        return 1
    if not (0 <= delete_index < g.n):
        raise DomainError("delete_index out of range")
    L = laplacian(g)
    minor = [[L[i][j] for j in range(g.n) if j != delete_index]
             for i in range(g.n) if i != delete_index]
    return _bareiss_det(minor)


# ---------------------------------------------------------------------------
# Cheeger constant

def cheeger_constant(g: Graph) -> Fraction:
    """min over nonempty U with |U| <= n/2 of |boundary(U)| / |U|, exact.

    Exhaustive: subsets are visited in Gray-code order with incremental cut
    updates, so each step costs O(deg).
    """
    n = g.n
    if n < 2:
        raise DomainError("Cheeger constant needs n >= 2")
    if n > CHEEGER_MAX_N:
        raise SizeLimitError(f"exhaustive Cheeger scan capped at n={CHEEGER_MAX_N}")
    adj = adjacency_lists(g)
    # iterate subsets S of {0..n-2}; candidates are S itself (small side) and
    # its complement in [n] (which contains vertex n-1)
    in_set = [False] * n
    cut = 0
    size = 0
    best = None
    half2 = n  # compare 2*|U| <= n
    for step in range(1, 1 << (n - 1)):
        v = (step & -step).bit_length() - 1  # Gray code: flip lowest set bit
        if in_set[v]:
            in_set[v] = False
            size -= 1
            for w in adj[v]:
                cut += 1 if in_set[w] else -1
        else:
            in_set[v] = True
            size += 1
            for w in adj[v]:
                cut += -1 if in_set[w] else 1
        if size >= 1 and 2 * size <= half2:
            r = Fraction(cut, size)
            if best is None or r < best:
                best = r
        co = n - size
        if 2 * co <= half2:
            r = Fraction(cut, co)
            if best is None or r < best:
                best = r
    return best


def all_degrees_even(g: Graph) -> bool:
    return all(d % 2 == 0 for d in g.degrees)
