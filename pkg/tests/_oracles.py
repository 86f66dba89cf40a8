"""Independent oracles shared across the test suite.

Everything here is built from first principles (Bell projectors,
bit-level two-site embedding, dense eigensolves) so it cannot share a
bug with the package implementations it checks.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from qmatch import oracle as oracle_mod

SQ2 = math.sqrt(2.0)

# Bell-projector forms of the two local terms. The package builds them
# from Pauli sums; these come straight from the target states.
_PSI_MINUS = np.array([0.0, 1.0, -1.0, 0.0]) / SQ2
_PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0]) / SQ2


def bell_local_term(kind: str) -> np.ndarray:
    vec = _PSI_MINUS if kind == "qmc" else _PHI_PLUS
    return 2.0 * np.outer(vec, vec.conj()).astype(complex)


def embed_two_site(h4: np.ndarray, u: int, v: int, n: int) -> np.ndarray:
    """Embed a two-qubit operator at sites (u, v) by explicit bit surgery.

    Qubit q owns bit (n-1-q) of the basis index.
    """
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    t = h4.reshape(2, 2, 2, 2)
    pu = n - 1 - u
    pv = n - 1 - v
    for col in range(dim):
        bu = (col >> pu) & 1
        bv = (col >> pv) & 1
        base = col & ~((1 << pu) | (1 << pv))
        for au in (0, 1):
            for av in (0, 1):
                amp = t[au, av, bu, bv]
                if amp != 0:
                    row = base | (au << pu) | (av << pv)
                    out[row, col] += amp
    return out


def dense_graph_hamiltonian(kind: str, g) -> np.ndarray:
    dim = 1 << g.n
    h4 = bell_local_term(kind)
    out = np.zeros((dim, dim), dtype=complex)
    for (u, v, w) in g.edges:
        out += w * embed_two_site(h4, u, v, g.n)
    return out


def dense_lambda_max(kind: str, g) -> float:
    if not g.edges:
        return 0.0
    return float(np.linalg.eigvalsh(dense_graph_hamiltonian(kind, g))[-1])


def partial_traces(rho4: np.ndarray):
    """Single-qubit reduced states of a two-qubit density matrix."""
    t = rho4.reshape(2, 2, 2, 2)
    rho_a = np.trace(t, axis1=1, axis2=3)
    rho_b = np.trace(t, axis1=0, axis2=2)
    return rho_a, rho_b


def bloch_of_qubit(rho2: np.ndarray) -> np.ndarray:
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    return np.real(np.array([np.trace(rho2 @ p) for p in (x, y, z)]))


def random_unit_vector(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


@functools.lru_cache(maxsize=1)
def corpus_with_reports():
    """Full corpus with per-instance capacity-bound reports, computed once."""
    out = []
    for (label, g) in oracle_mod.load_corpus():
        out.append((label, g, oracle_mod.verify_monogamy(g)))
    return out
