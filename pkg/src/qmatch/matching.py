"""Maximum-weight integral and fractional matchings with exact oracles.

Integral matchings come from the blossom algorithm with a deterministic
lexicographic tie-break. Fractional matchings are solved exactly through
the bipartite double cover, whose matchings project to half-integral
vertices of the fractional matching polytope; half-integrality of the
result is asserted, not assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .errors import InputError, InvariantViolation
from .graph import Graph

WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class IntegralMatching:
    """Vertex-disjoint edge subset; weight is the sum of member weights."""

    edges: tuple[tuple[int, int, float], ...]
    weight: float


@dataclass(frozen=True)
class FractionalMatching:
    """Per-edge values in [0,1] with vertex sums at most 1."""

    values: dict[tuple[int, int], float]
    weight: float


def _nx_graph(n: int, edges) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for (u, v, w) in edges:
        G.add_edge(u, v, weight=w)
    return G


def _nx_max_weight(G: nx.Graph) -> float:
    mate = nx.max_weight_matching(G, maxcardinality=False)
    return float(sum(G[u][v]["weight"] for (u, v) in mate))


def _lex_matching(n: int, edges) -> list[tuple[int, int, float]]:
    """Lexicographically smallest optimal matching, greedily certified.

    Scans edges in canonical order and keeps an edge iff some maximum
    matching contains the kept set plus that edge, tested by re-solving
    on the graph minus the committed endpoints.
    """
    G = _nx_graph(n, edges)
    best = _nx_max_weight(G)
    chosen: list[tuple[int, int, float]] = []
    used: set[int] = set()
    committed = 0.0
    for (u, v, w) in edges:
        if u in used or v in used:
            continue
        rest = [(a, b, c) for (a, b, c) in edges
                if a not in used and b not in used
                and (a, b) != (u, v) and a != u and a != v and b != u and b != v]
        residual = _nx_max_weight(_nx_graph(n, rest))
        if committed + w + residual >= best - WEIGHT_TOL:
            chosen.append((u, v, w))
            used.update((u, v))
            committed += w
    return chosen


def max_weight_matching(g: Graph) -> IntegralMatching:
    """Maximum-weight matching, ties broken to the lex-smallest edge set."""
    if not g.edges:
        return IntegralMatching(edges=(), weight=0.0)
    chosen = _lex_matching(g.n, list(g.edges))
    weight = float(sum(w for (_, _, w) in chosen))
    return IntegralMatching(edges=tuple(chosen), weight=weight)


def brute_force_matching(g: Graph) -> IntegralMatching:
    """Exhaustive maximum over all matchings; oracle for small graphs."""
    if len(g.edges) > 24:
        raise InputError(f"brute force capped at 24 edges, got {len(g.edges)}")
    edges = list(g.edges)
    best_weight = 0.0
    best_set: tuple = ()

    def rec(i: int, used: int, acc: float, picked: tuple):
        nonlocal best_weight, best_set
        if i == len(edges):
            if acc > best_weight + WEIGHT_TOL or (
                    abs(acc - best_weight) <= WEIGHT_TOL and picked < best_set):
                best_weight, best_set = acc, picked
            return
        u, v, w = edges[i]
        if not (used >> u & 1) and not (used >> v & 1):
            rec(i + 1, used | 1 << u | 1 << v, acc + w, picked + ((u, v, w),))
        rec(i + 1, used, acc, picked)

    rec(0, 0, 0.0, ())
    return IntegralMatching(edges=best_set,
                            weight=float(sum(w for (_, _, w) in best_set)))


def max_weight_fractional_matching(g: Graph) -> FractionalMatching:
    """Exact maximum-weight fractional matching (half-integral vertex).

    Each edge (u,v) lifts to two edges (u, n+v) and (v, n+u) of the
    bipartite double cover; an optimal integral matching there projects
    back via m_uv = (x_{u,n+v} + x_{v,n+u}) / 2 to an optimal extreme
    point of the fractional matching polytope.
    """
    n = g.n
    if not g.edges:
        return FractionalMatching(values={}, weight=0.0)
    lifted = []
    for (u, v, w) in g.edges:
        lifted.append((u, n + v, w))
        lifted.append((v, n + u, w))
    lifted.sort()
    chosen = _lex_matching(2 * n, lifted)
    picked = {(a, b) for (a, b, _) in chosen}
    values: dict[tuple[int, int], float] = {}
    weight = 0.0
    for (u, v, w) in g.edges:
        m = (((u, n + v) in picked) + ((v, n + u) in picked)) / 2.0
        if min(abs(m - 0.0), abs(m - 0.5), abs(m - 1.0)) > WEIGHT_TOL:
            raise InvariantViolation(f"fractional value {m} not half-integral")
        values[(u, v)] = m
        weight += w * m
    sums = [0.0] * n
    for (u, v, _) in g.edges:
        sums[u] += values[(u, v)]
        sums[v] += values[(u, v)]
    if max(sums, default=0.0) > 1 + WEIGHT_TOL:
        raise InvariantViolation("fractional matching violates vertex capacity")
    return FractionalMatching(values=values, weight=float(weight))


def in_matching_polytope(g: Graph, x: dict[tuple[int, int], float]) -> bool:
    """Membership test for the integral matching polytope.

    Checks nonnegativity, vertex capacities, and every odd-set
    constraint sum_{e inside S} x_e <= (|S|-1)/2, enumerated
    exhaustively; hence the |V| <= 14 cap.
    """
    if g.n > 14:
        raise InputError(f"polytope check capped at 14 vertices, got {g.n}")
    vals = {}
    for (u, v, _) in g.edges:
        xe = float(x.get((u, v), x.get((v, u), 0.0)))
        if xe < -WEIGHT_TOL:
            return False
        vals[(u, v)] = xe
    sums = [0.0] * g.n
    for (u, v), xe in vals.items():
        sums[u] += xe
        sums[v] += xe
    if any(s > 1 + WEIGHT_TOL for s in sums):
        return False
    touched = sorted({v for e in vals for v in e})
    for size in range(3, len(touched) + 1, 2):
        cap = (size - 1) / 2.0
        for S in itertools.combinations(touched, size):
            inside = set(S)
            tot = sum(xe for (u, v), xe in vals.items()
                      if u in inside and v in inside)
            if tot > cap + WEIGHT_TOL:
                return False
    return True
