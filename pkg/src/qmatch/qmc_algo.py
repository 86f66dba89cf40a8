"""Product, matching, and partially-entangled-matching subroutines.

Three lower-bound constructions for the quantum MaxCut objective:
  - a product state from a pluggable provider,
  - singlets on a maximum-weight matching (maximally mixed elsewhere),
  - partially entangled two-qubit states on a matching of a reweighted
    graph, interpolating between the two via an angle theta.
The combined run reports the better of the last two along with upper
bounds and, on small instances, the exact optimum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InputError, InvariantViolation
from .graph import Graph, make_graph, total_weight
from .matching import (IntegralMatching, max_weight_matching,
                       max_weight_fractional_matching)
from . import quantum

DEFAULT_THETA = 1.286
DEFAULT_CAPACITY_FACTOR = 14.0 / 15.0

_SEARCH_STARTS = 64
_SEARCH_SWEEP_CAP = 2000
# stop a start once the per-sweep energy gain falls below this; on
# degenerate flat optima the residual error is about gain * sweeps / 2,
# so 1e-12 with the cap above keeps product energies within ~1e-9
_SEARCH_TOL = 1e-12

PROVIDER_KINDS = ("zero", "file", "exact_search", "random")


@dataclass
class ProductState:
    """One unit Bloch vector per vertex, as an (n, 3) array."""

    blochs: np.ndarray

    def __post_init__(self):
        self.blochs = np.asarray(self.blochs, dtype=float)
        if self.blochs.ndim != 2 or self.blochs.shape[1] != 3:
            raise InputError(f"blochs must be (n, 3), got {self.blochs.shape}")
        norms = np.linalg.norm(self.blochs, axis=1)
        if np.max(np.abs(norms - 1.0), initial=0.0) > 1e-12:
            raise InputError("product state Bloch vectors must be unit length")


@dataclass
class PmatchState:
    """Pair states on matched edges, bare Bloch vectors elsewhere."""

    matching: IntegralMatching
    pair_states: dict[tuple[int, int], np.ndarray]
    singles: dict[int, np.ndarray]
    theta: float


@dataclass
class QmcReport:
    prod_energy: float
    match_energy: float
    pmatch_energy: float
    combined_energy: float
    upper_bounds: dict[str, float]
    exact_lambda_max: float | None
    observed_ratio: float | None


def entangled_pair_state(b_i, b_j, theta: float) -> np.ndarray:
    """Pure two-qubit state with rescaled marginals and boosted energy.

    Given unit Bloch vectors with overlap t = b_i . b_j, returns a pure
    density matrix whose marginals are cos(theta) b_i and cos(theta) b_j
    and whose edge energy is (1 + sin theta)(1 - t) / 2.

    Built in the orthonormal frame (g1, g2, g3) where g1 = b_i and g2
    spans the residual of b_j: the correlation block is
    W diag(1, sin theta, sin theta) V'^T W^T with V' a rotation by the
    angle between the vectors composed with a reflection. The marginal
    rows are assembled from the same frame so the Bloch matrix is
    internally consistent to machine precision even for nearly
    colinear inputs.
    """
    b_i = np.asarray(b_i, dtype=float)
    b_j = np.asarray(b_j, dtype=float)
    for b in (b_i, b_j):
        if abs(np.linalg.norm(b) - 1.0) > 1e-9:
            raise InputError("pair construction needs unit Bloch vectors")
    if not (0.0 <= theta <= math.pi / 2 + 1e-12):
        raise InputError(f"theta must lie in [0, pi/2], got {theta}")
    t = float(b_i @ b_j)
    ct, st = math.cos(theta), math.sin(theta)

    g1 = b_i
    resid = b_j - t * b_i
    tt = float(np.linalg.norm(resid))
    if tt > 1e-13:
        g2 = resid / tt
        g2 = g2 - (g2 @ g1) * g1
        g2 /= np.linalg.norm(g2)
    else:
        # colinear inputs: any perpendicular completes the frame
        k = int(np.argmin(np.abs(b_i)))
        e = np.zeros(3)
        e[k] = 1.0
        g2 = np.cross(b_i, e)
        g2 /= np.linalg.norm(g2)
        tt = 0.0
    g3 = np.cross(g1, g2)

    W = np.column_stack([g1, g2, g3])
    Vp = np.array([[t, -tt, 0.0], [tt, t, 0.0], [0.0, 0.0, -1.0]])
    R = W @ np.diag([1.0, st, st]) @ Vp.T @ W.T
    vj = ct * (t * b_i + tt * g2)  # equals ct * b_j, frame-consistent

    r = np.zeros((4, 4))
    r[0, 0] = 1.0
    r[0, 1:] = vj
    r[1:, 0] = ct * b_i
    r[1:, 1:] = R
    return quantum.bloch_to_density(r)


def reweight(g: Graph, prod: ProductState, theta: float) -> Graph:
    """Graph of positive pairing gains w (sin th (1 - t (1 + sin th)))/2.

    Edges whose clamped reweighting vanishes are dropped; the matching
    on the result decides where pair states are placed.
    """
    if not (0.0 <= theta <= math.pi / 2 + 1e-12):
        raise InputError(f"theta must lie in [0, pi/2], got {theta}")
    st = math.sin(theta)
    kept = []
    for (u, v, w) in g.edges:
        t = float(prod.blochs[u] @ prod.blochs[v])
        wt = w * 0.5 * st * (1.0 - t * (1.0 + st))
        if wt > 0.0:
            kept.append((u, v, wt))
    return make_graph(g.n, kept)


def _pmatch_energy_accounting(g: Graph, prod: ProductState, theta: float,
                              matched_pairs: dict[tuple[int, int], bool],
                              mate_count: dict[int, int]) -> float:
    ct, st = math.cos(theta), math.sin(theta)
    total = 0.0
    for (u, v, w) in g.edges:
        t = float(prod.blochs[u] @ prod.blochs[v])
        if (u, v) in matched_pairs:
            total += w * 0.5 * (1.0 + st) * (1.0 - t)
            continue
        k = mate_count[u] + mate_count[v]
        if k == 0:
            total += w * 0.5 * (1.0 - t)
        elif k == 1:
            total += w * 0.5 * (1.0 - t * ct)
        else:
            total += w * 0.5 * (1.0 - t * ct * ct)
    return total


def _pmatch_trace_check(g: Graph, state: PmatchState, energy: float) -> None:
    """Re-derive the energy from assembled densities; must agree."""
    h = quantum.local_term("qmc")
    marginal: dict[int, np.ndarray] = {}
    for (u, v), rho in state.pair_states.items():
        rho4 = rho.reshape(2, 2, 2, 2)
        marginal[u] = quantum.bloch_of_density(
            np.einsum("ajbj->ab", rho4))
        marginal[v] = quantum.bloch_of_density(
            np.einsum("iaib->ab", rho4))
    for v, b in state.singles.items():
        marginal[v] = b
    total = 0.0
    for (u, v, w) in g.edges:
        if (u, v) in state.pair_states:
            total += w * float(np.trace(h @ state.pair_states[(u, v)]).real)
        else:
            rho = np.kron(quantum.density_from_bloch(marginal[u]),
                          quantum.density_from_bloch(marginal[v]))
            total += w * float(np.trace(h @ rho).real)
    if abs(total - energy) > 1e-10:
        raise InvariantViolation(
            f"pair-state accounting {energy} disagrees with trace {total}")


def run_pmatch(g: Graph, prod: ProductState, theta: float
               ) -> tuple[PmatchState, float]:
    """Partially entangled matching subroutine.

    Places pair states on a maximum-weight matching of the reweighted
    graph; every other vertex keeps its product Bloch vector. The
    analytic per-edge accounting is cross-checked against a direct
    trace evaluation of the assembled state before returning.
    """
    rw = reweight(g, prod, theta)
    matching = max_weight_matching(rw)
    matched_pairs = {(u, v): True for (u, v, _) in matching.edges}
    mate_count = {v: 0 for v in range(g.n)}
    pair_states = {}
    for (u, v, _) in matching.edges:
        mate_count[u] = 1
        mate_count[v] = 1
        pair_states[(u, v)] = entangled_pair_state(
            prod.blochs[u], prod.blochs[v], theta)
    singles = {v: prod.blochs[v] for v in range(g.n) if mate_count[v] == 0}
    energy = _pmatch_energy_accounting(g, prod, theta, matched_pairs,
                                       mate_count)
    state = PmatchState(matching=matching, pair_states=pair_states,
                        singles=singles, theta=theta)
    _pmatch_trace_check(g, state, energy)
    return state, energy


def run_match(g: Graph) -> tuple[IntegralMatching, float]:
    """Singlets on a maximum matching, maximally mixed elsewhere.

    Matched edges score 2w, all other edges w/2, totalling
    (3 M + W) / 2 exactly.
    """
    matching = max_weight_matching(g)
    energy = (3.0 * matching.weight + total_weight(g)) / 2.0
    return matching, energy


def product_energy(g: Graph, prod: ProductState) -> float:
    """Energy sum_e w (1 - b_u . b_v) / 2 of the bare product state."""
    total = 0.0
    for (u, v, w) in g.edges:
        total += w * quantum.product_edge_energy(
            "qmc", prod.blochs[u], prod.blochs[v])
    return total


def run_combined(g: Graph, prod: ProductState,
                 theta: float = DEFAULT_THETA,
                 capacity_factor: float = DEFAULT_CAPACITY_FACTOR
                 ) -> QmcReport:
    """Better of the matching and pair-matching subroutines, with bounds.

    Attaches the two upper bounds W + FM and W + M / capacity_factor,
    and on instances small enough to diagonalize, the exact optimum and
    the observed approximation ratio.
    """
    prod_e = product_energy(g, prod)
    match_m, match_e = run_match(g)
    _, pmatch_e = run_pmatch(g, prod, theta)
    combined = max(match_e, pmatch_e)
    m = match_m.weight
    fm = max_weight_fractional_matching(g).weight
    w_total = total_weight(g)
    bounds = {
        "w_plus_fm": w_total + fm,
        "w_plus_m_over_d": w_total + m / capacity_factor,
    }
    lam = None
    ratio = None
    if g.n <= quantum.MAX_EIG_QUBITS:
        lam = quantum.exact_lambda_max("qmc", g)
        ratio = combined / lam if lam > 0 else 1.0
    return QmcReport(prod_energy=prod_e, match_energy=match_e,
                     pmatch_energy=pmatch_e, combined_energy=combined,
                     upper_bounds=bounds, exact_lambda_max=lam,
                     observed_ratio=ratio)


def _search_product(g: Graph, seed: int) -> np.ndarray:
    """Multistart coordinate ascent for the product-state objective."""
    adj: list[list[tuple[int, float]]] = [[] for _ in range(g.n)]
    for (u, v, w) in g.edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    best_b = None
    best_e = -np.inf
    for k in range(_SEARCH_STARTS):
        rng = np.random.default_rng([seed, k])
        b = rng.standard_normal((g.n, 3))
        b /= np.linalg.norm(b, axis=1, keepdims=True)
        for _ in range(_SEARCH_SWEEP_CAP):
            # each update is an exact coordinate maximization, so the
            # energy gain 0.5 (|s| + b_i . s) is nonnegative and the
            # sweep gain is a sound stopping criterion even on flat
            # unit-weight optima where the vectors themselves drift
            gain = 0.0
            for i in range(g.n):
                if not adj[i]:
                    continue
                s = np.zeros(3)
                for (j, w) in adj[i]:
                    s += w * b[j]
                norm = np.linalg.norm(s)
                if norm < 1e-14:
                    continue
                gain += 0.5 * (norm + float(b[i] @ s))
                b[i] = -s / norm
            if gain < _SEARCH_TOL:
                break
        e = 0.0
        for (u, v, w) in g.edges:
            e += w * 0.5 * (1.0 - float(b[u] @ b[v]))
        if e > best_e:
            best_e = e
            best_b = b.copy()
    return best_b


def product_provider(kind: str, g: Graph, seed: int = 0,
                     bloch_text: str | None = None) -> ProductState:
    """Product-state sources: zero | random | exact_search | file.

    zero points every vertex at (0, 0, 1); random draws unit vectors
    deterministically from the seed; exact_search runs seeded multistart
    coordinate ascent on the product objective; file parses one
    "bx by bz" line per vertex, renormalizing drifts up to 1e-6 with a
    warning and rejecting anything worse.
    """
    if kind not in PROVIDER_KINDS:
        raise InputError(f"unknown provider kind {kind!r}")
    if kind == "zero":
        b = np.tile([0.0, 0.0, 1.0], (g.n, 1))
        return ProductState(blochs=b)
    if kind == "random":
        rng = np.random.default_rng([seed, g.n])
        b = rng.standard_normal((g.n, 3))
        b /= np.linalg.norm(b, axis=1, keepdims=True)
        return ProductState(blochs=b)
    if kind == "exact_search":
        if g.n == 0:
            return ProductState(blochs=np.zeros((0, 3)))
        return ProductState(blochs=_search_product(g, seed))
    if bloch_text is None:
        raise InputError("file provider needs Bloch-vector file contents")
    rows = []
    for lineno, raw in enumerate(bloch_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 'bx by bz', got {raw!r}")
        try:
            rows.append([float(x) for x in parts])
        except ValueError:
            raise InputError(f"line {lineno}: could not parse {raw!r}")
    if len(rows) != g.n:
        raise InputError(f"expected {g.n} Bloch vectors, got {len(rows)}")
    b = np.asarray(rows, dtype=float)
    norms = np.linalg.norm(b, axis=1)
    drift = np.max(np.abs(norms - 1.0), initial=0.0)
    if drift > 1e-6:
        raise InputError(f"Bloch vector norms off by {drift}, limit 1e-6")
    if drift > 1e-12:
        warnings.warn("renormalizing Bloch vectors with norm drift "
                      f"{drift:.3g}")
        b /= norms[:, None]
    return ProductState(blochs=b)
