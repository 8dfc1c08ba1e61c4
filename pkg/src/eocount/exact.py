"""Ground-truth exact counters: Eulerian orientations of small graphs by
pruned backtracking, regular tournaments by a residual-degree recurrence, and
balanced digraph/oriented-graph counts by exhaustive scan.  Also a product
trapezoid quadrature for the circle-integral representations of these counts,
usable as a low-dimensional numeric cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DomainError, SizeLimitError
from .graphs import Graph

EO_MAX_EDGES = 40
RT_MAX_N = 21
BALANCED_SCAN_MAX_N = 5
TORUS_MAX_N = 4

# Exact counts of labelled regular tournaments, for cross-checks and CLI
# reporting.  Entries for n <= 21 are reproduced by rt_count.
RT_KNOWN_COUNTS: dict[int, int] = {
    1: 1,
    3: 2,
    5: 24,
    7: 2640,
    9: 3230080,
    11: 48251508480,
    13: 9307700611292160,
    15: 24061983498249428379648,
    17: 855847205541481495117975879680,
    19: 427102683126284520201657800159366676480,
    21: 3035991776725501434069099002640396043332019814400,
    23: 311112533558482034321687955029997989477274014274150137856000,
    25: 464117534102335907615319841214866228971154350368762035567909798177406976,
    27: 10161379494935951628617799577075865434480255823888279881937948307747797076834831564800,
    29: 3287442487574407143703099545617073045735818609033816899441555600747117933832971553931993016172544000,
    31: 15808031329378794811348365612259484634453232842011608717952713991078379571024621662189552251062395890697517400064000,
    33: 1135533166724134095070627943251557483560333942677033922296317224370416674548473291631865213070402802521103574222617221588286701568000,
    35: 1223864454620140329175709860021247258263958465658118061589271234790021868020119571675308650674216477578535347448622390705831442351970257728013137346560,
    37: 19868186153037961435683620207063930198200744969481152324905085973125018814239611140803845482389539449176375862818455686143415694063802642548474151771534651864859541504000,
}


@dataclass(frozen=True)
class OrientationCount:
    """An exact count together with the method that produced it."""

    value: int
    method: str  # "bruteforce" | "dp" | "integral-approx"


# ---------------------------------------------------------------------------
# Eulerian orientations by backtracking

def eo_count_bruteforce(g: Graph) -> int:
    """Exact number of Eulerian orientations by vertex-major backtracking.

    Edges are processed grouped by vertex so each vertex's balance closes
    early; a branch is pruned as soon as some endpoint cannot return to
    balance.  The first edge is fixed and the result doubled (reversing all
    edges is an involution).
    """
    if g.edge_count > EO_MAX_EDGES:
        raise SizeLimitError(f"brute force capped at {EO_MAX_EDGES} edges")
    if any(d % 2 for d in g.degrees):
        return 0
    if g.edge_count == 0:
        return 1

    # vertex-major edge order: all edges at the smallest incident vertex first
    edges = sorted(g.edges)
    rem = list(g.degrees)   # undirected edges still incident
    imb = [0] * g.n         # out-degree minus in-degree so far
    m = len(edges)

    def count_from(idx: int) -> int:
        if idx == m:
            return 1
        u, v = edges[idx]
        total = 0
        # orient u -> v
        for a, b in ((u, v), (v, u)):
            imb[a] += 1
            imb[b] -= 1
            rem[u] -= 1
            rem[v] -= 1
            if abs(imb[u]) <= rem[u] and abs(imb[v]) <= rem[v]:
                total += count_from(idx + 1)
            imb[a] -= 1
            imb[b] += 1
            rem[u] += 1
            rem[v] += 1
        return total

    # fix the first edge's direction, double at the end
    u, v = edges[0]
    imb[u] += 1
    imb[v] -= 1
    rem[u] -= 1
    rem[v] -= 1
    if abs(imb[u]) > rem[u] or abs(imb[v]) > rem[v]:
        return 0
    return 2 * count_from(1)


# ---------------------------------------------------------------------------
# Regular tournaments by residual-degree recurrence

def rt_count(n: int) -> int:
    """Number of regular tournaments on n labelled vertices (n odd).

    Vertex-elimination recurrence: repeatedly remove a vertex of maximal
    remaining out-degree requirement and choose which opponents beat it.
    States are sorted residual multisets; choices within a block of equal
    residuals are aggregated by binomial weights.
    """
    if n % 2 == 0:
        raise DomainError("regular tournaments need an odd vertex count")
    if not (1 <= n <= RT_MAX_N):
        raise SizeLimitError(f"rt_count capped at n={RT_MAX_N}")
    s = (n - 1) // 2
    layer: dict[tuple[int, ...], int] = {(s,) * n: 1}
    for _ in range(n):
        nxt: dict[tuple[int, ...], int] = {}
        for state, weight in layer.items():
            r0 = state[-1]           # eliminate a max-residual vertex
            rest = state[:-1]
            k = len(rest)
            need = k - r0            # opponents that beat the eliminated vertex
            if need < 0:
                continue
            # blocks of equal residuals
            blocks = []
            i = 0
            while i < k:
                j = i
                while j < k and rest[j] == rest[i]:
                    j += 1
                blocks.append((rest[i], j - i))
                i = j

            def distribute(bi: int, left: int, ways: int, acc: list[int]):
                if left == 0:
                    vals: list[int] = []
                    for (val, cnt), b in zip(blocks, acc + [0] * (len(blocks) - len(acc))):
                        if b:
                            vals.extend([val - 1] * b)
                        vals.extend([val] * (cnt - b))
                    key = tuple(sorted(vals))
                    nxt[key] = nxt.get(key, 0) + ways
                    return
                if bi == len(blocks):
                    return
                val, cnt = blocks[bi]
                cap = min(cnt, left) if val >= 1 else 0
                for b in range(cap + 1):
                    distribute(bi + 1, left - b, ways * comb(cnt, b), acc + [b])

            distribute(0, need, weight, [])
        layer = nxt
    return layer.get((), 0)


# ---------------------------------------------------------------------------
# Balanced digraphs / oriented graphs, exhaustive with pruning

def _balanced_pair_scan(n: int, pair_states) -> int:
    """Count assignments of states to all vertex pairs keeping in = out.

    pair_states: per-pair options as (delta_j, delta_k) imbalance increments.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if n > BALANCED_SCAN_MAX_N:
        raise SizeLimitError(f"exhaustive scan capped at n={BALANCED_SCAN_MAX_N}")
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    m = len(pairs)
    # remaining pair slots touching each vertex, for pruning
    rem = [n - 1] * n
    imb = [0] * n

    def rec(idx: int) -> int:
        if idx == m:
            return 1
        j, k = pairs[idx]
        rem[j] -= 1
        rem[k] -= 1
        total = 0
        for dj, dk in pair_states:
            imb[j] += dj
            imb[k] += dk
            if abs(imb[j]) <= rem[j] and abs(imb[k]) <= rem[k]:
                total += rec(idx + 1)
            imb[j] -= dj
            imb[k] -= dk
        rem[j] += 1
        rem[k] += 1
        return total

    return rec(0)


def eulerian_digraph_count_bruteforce(n: int) -> int:
    """Balanced digraphs on n labelled vertices: each unordered pair carries
    any subset of the two opposite arcs (2-cycles allowed)."""
    # states: none, j->k, k->j, both
    return _balanced_pair_scan(n, [(0, 0), (1, -1), (-1, 1), (0, 0)])


def eulerian_oriented_count_bruteforce(n: int) -> int:
    """Balanced oriented graphs on n labelled vertices: at most one arc per
    unordered pair."""
    return _balanced_pair_scan(n, [(0, 0), (1, -1), (-1, 1)])


# ---------------------------------------------------------------------------
# torus quadrature cross-check

def torus_integral_estimate(g: Graph, w, grid: int = 256) -> float:
    """Quadrature value of the circle-integral representation of the weighted
    orientation count: (2/b)^|E| times the mean over the torus of
    prod_{jk in E} (a + b cos(theta_j - theta_k)).

    w is a pair (a, b) of rationals with a + b = 1, b > 0.  One angle is fixed
    at 0 (the integrand only depends on differences), and the product
    trapezoid rule on a periodic analytic integrand converges spectrally in
    the grid size.
    """
    a, b = Fraction(w[0]), Fraction(w[1])
    if a + b != 1 or b <= 0 or a < 0:
        raise DomainError("weights must satisfy a + b = 1, b > 0, a >= 0")
    if g.n > TORUS_MAX_N:
        raise SizeLimitError(f"quadrature capped at n={TORUS_MAX_N}")
    if grid < 64:
        raise DomainError("grid must be at least 64")
    if g.n == 0:
        return 1.0
    dims = g.n - 1
    theta = 2.0 * np.pi * np.arange(grid) / grid
    af, bf = float(a), float(b)

    def axis_view(v: int):
        # angle of vertex v broadcast over the grid^dims lattice; vertex n-1 pinned at 0
        if v == g.n - 1:
            return 0.0
        shape = [1] * dims
        shape[v] = grid
        return theta.reshape(shape)

    prod = np.ones((grid,) * dims) if dims else np.ones(())
    for u, v in sorted(g.edges):
        prod = prod * (af + bf * np.cos(axis_view(u) - axis_view(v)))
    mean = float(prod.mean())
    scale = float(2 / b) ** g.edge_count
    return scale * mean
