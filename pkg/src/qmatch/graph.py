"""Weighted undirected simple graphs: parsing, serialization, generators.

Vertices are 0-indexed. Edges are stored canonically as (u, v, w) with
u < v, sorted lexicographically; downstream tie-breaking relies on this
order. Isolated vertices are allowed and contribute nothing anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

GENERATOR_KINDS = ("path", "cycle", "complete", "star", "random")
WEIGHT_MODES = ("unit", "uniform")


@dataclass(frozen=True)
class Graph:
    """Immutable weighted graph. n vertices, edges as (u, v, w) triples."""

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def neighbors(self, v: int) -> list[int]:
        out = []
        for (a, b, _) in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def edge_index(self) -> dict[tuple[int, int], float]:
        return {(u, v): w for (u, v, w) in self.edges}


def make_graph(n: int, edges) -> Graph:
    """Canonicalize and validate an edge list into a Graph.

    Orients every edge u < v, sorts lexicographically, and rejects
    self-loops, duplicates, non-positive weights, and out-of-range
    endpoints.
    """
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    canon = []
    for (u, v, w) in edges:
        u, v, w = int(u), int(v), float(w)
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if not (0 <= u < v < n):
            raise InputError(f"edge ({u},{v}) out of range for n={n}")
        if not w > 0:
            raise InputError(f"edge ({u},{v}) has non-positive weight {w}")
        canon.append((u, v, w))
    canon.sort()
    for i in range(1, len(canon)):
        if canon[i][:2] == canon[i - 1][:2]:
            raise InputError(f"duplicate edge ({canon[i][0]},{canon[i][1]})")
    return Graph(n=n, edges=tuple(canon))


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    One edge per line as "u v w". Blank lines and '#' comments are
    skipped. n defaults to 1 + max vertex index; a header line
    "n <count>" overrides it (useful for trailing isolated vertices).
    Errors name the offending 1-based line number.
    """
    edges = []
    n_header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: malformed header {raw!r}")
            try:
                n_header = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count {parts[1]!r}")
            continue
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 'u v w', got {raw!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise InputError(f"line {lineno}: could not parse {raw!r}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        if not w > 0:
            raise InputError(f"line {lineno}: non-positive weight {w}")
        if u > v:
            u, v = v, u
        edges.append((u, v, w, lineno))
    seen = {}
    for (u, v, w, lineno) in edges:
        if (u, v) in seen:
            raise InputError(f"line {lineno}: duplicate edge ({u},{v})")
        seen[(u, v)] = w
    n = n_header
    if n is None:
        n = 1 + max((v for (_, v, _, _) in edges), default=-1)
        n = max(n, 0)
    try:
        return make_graph(n, [(u, v, w) for (u, v, w, _) in edges])
    except InputError as exc:
        raise InputError(str(exc))


def serialize_edge_list(g: Graph) -> str:
    """Emit the edge-list format; parse_edge_list round-trips exactly."""
    lines = [f"n {g.n}"]
    for (u, v, w) in g.edges:
        lines.append(f"{u} {v} {format(w, '.17g')}")
    return "\n".join(lines) + "\n"


def total_weight(g: Graph) -> float:
    """Sum of edge weights."""
    return float(sum(w for (_, _, w) in g.edges))


def _edge_weights(rng, count: int, weight_mode: str) -> list[float]:
    if weight_mode == "unit":
        return [1.0] * count
    if weight_mode == "uniform":
        # 1 - random() lands in (0, 1], keeping weights strictly positive
        return [float(1.0 - rng.random()) for _ in range(count)]
    raise InputError(f"unknown weight mode {weight_mode!r}")


def generate(kind: str, n: int, seed: int = 0, weight_mode: str = "unit",
             p: float | None = None) -> Graph:
    """Deterministic graph generators for the test corpus.

    kind is one of path | cycle | complete | star | random. The random
    kind includes each pair independently with probability p. Output is
    a pure function of (kind, n, seed, weight_mode, p).
    """
    if kind not in GENERATOR_KINDS:
        raise InputError(f"unknown generator kind {kind!r}")
    if n < 2:
        raise InputError(f"generator needs n >= 2, got {n}")
    if kind == "cycle" and n < 3:
        raise InputError("cycle needs n >= 3")
    if kind == "random":
        if p is None:
            p = 0.5
        if not (0 < p <= 1):
            raise InputError(f"edge probability must be in (0,1], got {p}")
    kind_code = GENERATOR_KINDS.index(kind)
    rng = np.random.default_rng([seed, n, kind_code])

    if kind == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif kind == "complete":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "star":
        pairs = [(0, i) for i in range(1, n)]
    else:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < p]

    weights = _edge_weights(rng, len(pairs), weight_mode)
    return make_graph(n, [(u, v, w) for (u, v), w in zip(pairs, weights)])
