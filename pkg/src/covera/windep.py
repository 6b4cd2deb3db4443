"""Edge-weighted complete graphs and m-independent sets.

A set S is m-independent when every u in S has weight < m inside G[S]. The
greedy m-MAX procedure deletes a maximum-weight vertex until that holds, and
the Caro-Tuza style function f_m lower-bounds the size of what survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil, lcm
from typing import Iterable, Mapping, Sequence

from .designs import Multigraph


class HypothesisViolation(ValueError):
    """An edge joining two vertices of weight >= m has weight < 1."""


@dataclass(frozen=True)
class WeightedGraph:
    vertices: tuple[int, ...]
    weights: Mapping[tuple[int, int], Fraction]

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Mapping[tuple[int, int], object]):
        vertices = tuple(sorted(vertices))
        vset = set(vertices)
        weights = {}
        for (u, w), x in edges.items():
            if u == w:
                raise ValueError("loops are not allowed")
            if u not in vset or w not in vset:
                raise ValueError(f"edge {(u, w)} leaves the vertex set")
            x = Fraction(x)
            if x < 0:
                raise ValueError("weights must be nonnegative")
            if x:
                weights[(u, w) if u < w else (w, u)] = weights.get((min(u, w), max(u, w)), 0) + x
        return cls(vertices, weights)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "WeightedGraph":
        n = len(matrix)
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise ValueError("weight matrix must be symmetric")
                edges[(i, j)] = matrix[i][j]
        return cls.from_edges(range(n), edges)

    @classmethod
    def from_multigraph(cls, g: Multigraph) -> "WeightedGraph":
        return cls.from_edges(range(1, g.v + 1), dict(g.mult))

    def wt_edge(self, u: int, w: int) -> Fraction:
        if u == w:
            return Fraction(0)
        return self.weights.get((u, w) if u < w else (w, u), Fraction(0))

    @cached_property
    def _degrees(self) -> dict[int, Fraction]:
        deg = {u: Fraction(0) for u in self.vertices}
        for (u, w), x in self.weights.items():
            deg[u] += x
            deg[w] += x
        return deg

    def wt(self, u: int, within: Iterable[int] | None = None) -> Fraction:
        """Vertex weight in G, or in G[within] when given."""
        if within is None:
            return self._degrees[u]
        pool = within
        return sum((self.wt_edge(u, w) for w in pool if w != u), Fraction(0))

    def induced(self, s: Iterable[int]) -> "WeightedGraph":
        s = set(s)
        return WeightedGraph(
            tuple(x for x in self.vertices if x in s),
            {e: x for e, x in self.weights.items() if e[0] in s and e[1] in s},
        )


def f_m(m: int, x) -> Fraction:
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    x = Fraction(x)
    if x < 0:
        raise ValueError("f_m is defined for x >= 0")
    if x <= m:
        return 1 - x / (2 * m)
    return Fraction(m + 1) / (2 * x + 2)


def is_m_independent(g: WeightedGraph, m: int, s: Iterable[int]) -> bool:
    s = list(s)
    return all(g.wt(u, s) < m for u in s)


def m_max(g: WeightedGraph, m: int) -> frozenset[int]:
    """Greedy m-MAX; ties go to the smallest vertex label."""
    alive = list(g.vertices)
    weight = {u: g.wt(u) for u in alive}
    while alive:
        top = max(weight[u] for u in alive)
        if top < m:
            break
        victim = min(u for u in alive if weight[u] == top)
        alive.remove(victim)
        for u in alive:
            weight[u] -= g.wt_edge(u, victim)
    return frozenset(alive)


def m_max_all_runs(g: WeightedGraph, m: int) -> tuple[int, int]:
    """(min, max) size of the m-MAX output over every tie-break sequence."""
    verts = g.vertices
    n = len(verts)
    # scale to integers so the memoised recursion avoids Fraction arithmetic
    scale = lcm(1, *(x.denominator for x in g.weights.values()))
    w = [[int(g.wt_edge(a, b) * scale) for b in verts] for a in verts]
    m = m * scale

    @lru_cache(maxsize=None)
    def run(mask: int) -> tuple[int, int]:
        alive = [i for i in range(n) if mask >> i & 1]
        weight = {i: sum(w[i][j] for j in alive if j != i) for i in alive}
        if not alive:
            return 0, 0
        top = max(weight.values())
        if top < m:
            return len(alive), len(alive)
        outs = [run(mask & ~(1 << i)) for i in alive if weight[i] == top]
        return min(o[0] for o in outs), max(o[1] for o in outs)

    return run((1 << n) - 1)


def check_ct_hypothesis(g: WeightedGraph, m: int) -> None:
    heavy = [u for u in g.vertices if g.wt(u) >= m]
    for i, u in enumerate(heavy):
        for w in heavy[i + 1:]:
            if g.wt_edge(u, w) < 1:
                raise HypothesisViolation(
                    f"edge {u}-{w} joins vertices of weight >= {m} but has weight {g.wt_edge(u, w)}"
                )


def caro_tuza_bound(g: WeightedGraph, m: int) -> int:
    check_ct_hypothesis(g, m)
    return ceil(sum((f_m(m, g.wt(u)) for u in g.vertices), Fraction(0)))


def _class_term(g: WeightedGraph, m: int, s: Sequence[int]) -> Fraction:
    mean = sum((g.wt(u) for u in s), Fraction(0)) / len(s)
    return len(s) * f_m(m, mean)


def induced_bound_a(g: WeightedGraph, m: int, s: Iterable[int]) -> int:
    s = sorted(set(s))
    if not s:
        raise ValueError("S must be nonempty")
    check_ct_hypothesis(g, m)
    return ceil(_class_term(g, m, s))


def induced_bound_b(g: WeightedGraph, m: int, s0: Iterable[int], s1: Iterable[int]) -> int:
    s0, s1 = sorted(set(s0)), sorted(set(s1))
    if not s0 or not s1:
        raise ValueError("both classes must be nonempty")
    if set(s0) & set(s1):
        raise ValueError("classes must be disjoint")
    check_ct_hypothesis(g, m)
    return ceil(_class_term(g, m, s0) + _class_term(g, m, s1))


@dataclass(frozen=True)
class CReducedGraph:
    graph: WeightedGraph
    v0: frozenset[int]
    v1: frozenset[int]
    c: Fraction


def c_reduced(g: Multigraph, v0: Iterable[int], v1: Iterable[int], c, d: int, n: int) -> CReducedGraph:
    """Reweight the excess/leave on V0 u V1: mu inside V1, c*mu across, 0 inside V0.

    ``d`` and ``n = r - lambda`` fix the admissible range d/n < c < 1.
    """
    c = Fraction(c)
    v0, v1 = frozenset(v0), frozenset(v1)
    if v0 & v1:
        raise ValueError("V0 and V1 must be disjoint")
    if not (Fraction(d, n) < c < 1):
        raise ValueError(f"c={c} outside ({Fraction(d, n)}, 1)")
    edges = {}
    for (u, w), mu in g.mult.items():
        if u in v1 and w in v1:
            edges[(u, w)] = mu
        elif (u in v0 and w in v1) or (u in v1 and w in v0):
            edges[(u, w)] = c * mu
    return CReducedGraph(WeightedGraph.from_edges(v0 | v1, edges), v0, v1, c)


def h_value(v0: int, v1: int, d: int, k: int, n: int, m: int, x) -> Fraction:
    """Lower bound on the block count as a function of the V0-V1 edge count x."""
    x = Fraction(x)
    hi = min(v0 * d, v1 * (d + k - 1))
    if x < 0 or x > hi:
        raise ValueError(f"x={x} outside [0, {hi}]")
    if x == 0:
        return v0 + v1 * f_m(m, d + k - 1)
    return v0 * f_m(m, d * x / (n * v0)) + v1 * f_m(m, d + k - 1 - (n - d) * x / (n * v1))


def h_pieces(v0: int, v1: int, d: int, k: int, n: int, m: int, x) -> Fraction:
    """Closed piecewise form of h; agrees with :func:`h_value` on its domain."""
    x = Fraction(x)
    if x == 0:
        return v0 + v1 * Fraction(m + 1, 2 * (d + k))
    z = Fraction(n * v1 * (d + k - m - 1), n - d)
    if x >= z:
        return v0 + v1 * (1 - Fraction(d + k - 1, 2 * m)) + (n - 2 * d) * x / (2 * m * n)
    return v0 + Fraction(n * v1 * v1 * (m + 1)) / (2 * n * v1 * (d + k) - 2 * (n - d) * x) - d * x / (
        2 * m * n
    )
