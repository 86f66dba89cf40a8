"""Pauli terms, Bloch-vector algebra, statevector simulation, eigensolver.

Qubit q of an n-qubit register maps to bit (n-1-q) of the basis index,
so |q0 q1 ... q_{n-1}> reads left to right. Statevectors are dense
complex arrays of length 2^n; two-qubit densities are bare 4x4 arrays.

The two edge terms are rank-one projectors scaled by 2:
  qmc: (1/2)(II - XX - YY - ZZ), twice the singlet projector
  epr: (1/2)(II + XX - YY + ZZ), twice the projector onto
       the even-parity maximally entangled pair state
Both are PSD with eigenvalues {2, 0, 0, 0}.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

from .errors import InputError
from .graph import Graph

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X, Y, Z)

KINDS = ("qmc", "epr")

MAX_SIM_QUBITS = 20
MAX_EIG_QUBITS = 14

_POWER_SEED = 170499
_POWER_TOL = 1e-10
_POWER_CAP = 50000


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")


def local_term(kind: str) -> np.ndarray:
    """The 4x4 edge Hamiltonian for the given kind."""
    _check_kind(kind)
    sign = -1.0 if kind == "qmc" else 1.0
    h = np.eye(4, dtype=complex)
    h += sign * np.kron(X, X)
    h -= np.kron(Y, Y)
    h += sign * np.kron(Z, Z)
    return 0.5 * h


def density_from_bloch(b) -> np.ndarray:
    """Single-qubit density (1/2)(I + b . sigma); accepts |b| <= 1."""
    b = np.asarray(b, dtype=float)
    return 0.5 * (I2 + b[0] * X + b[1] * Y + b[2] * Z)


def bloch_of_density(rho: np.ndarray) -> np.ndarray:
    """Bloch vector of a single-qubit density matrix."""
    return np.array([np.trace(rho @ P).real for P in (X, Y, Z)])


def product_edge_energy(kind: str, b_i, b_j) -> float:
    """Edge energy of the product state with the given Bloch marginals.

    qmc: (1 - b_i . b_j) / 2
    epr: (1 + b_ix b_jx - b_iy b_jy + b_iz b_jz) / 2
    Linear in each marginal, so sub-unit vectors (mixed marginals) are
    handled by the same formula.
    """
    _check_kind(kind)
    b_i = np.asarray(b_i, dtype=float)
    b_j = np.asarray(b_j, dtype=float)
    if kind == "qmc":
        return float(0.5 * (1.0 - b_i @ b_j))
    return float(0.5 * (1.0 + b_i[0] * b_j[0] - b_i[1] * b_j[1]
                        + b_i[2] * b_j[2]))


def zero_state(n: int) -> np.ndarray:
    """|0...0> on n qubits."""
    if not (1 <= n <= MAX_SIM_QUBITS):
        raise InputError(f"statevector qubit count out of range: {n}")
    psi = np.zeros(2 ** n, dtype=complex)
    psi[0] = 1.0
    return psi


def _bit_shift(n: int, q: int) -> int:
    return n - 1 - q


def apply_edge_rotation(psi: np.ndarray, u: int, v: int,
                        gamma: float) -> np.ndarray:
    """Apply exp(i gamma P_u P_v) with P = (X - Y)/sqrt(2).

    (P_u P_v)^2 = I, so the exponential is cos(gamma) I
    + i sin(gamma) P_u P_v. P|0> = (1-i)/sqrt(2) |1> and
    P|1> = (1+i)/sqrt(2) |0>; all such rotations commute.
    """
    n = int(round(math.log2(psi.size)))
    if psi.size != 2 ** n:
        raise InputError("statevector length is not a power of two")
    if u == v or not (0 <= u < n) or not (0 <= v < n):
        raise InputError(f"bad qubit pair ({u},{v}) for n={n}")
    su, sv = _bit_shift(n, u), _bit_shift(n, v)
    idx = np.arange(psi.size)
    mask = (1 << su) | (1 << sv)
    # per-qubit factor: (1-i)/sqrt(2) leaving |0>, (1+i)/sqrt(2) leaving |1>
    fu = np.where((idx >> su) & 1, (1 + 1j), (1 - 1j)) / math.sqrt(2)
    fv = np.where((idx >> sv) & 1, (1 + 1j), (1 - 1j)) / math.sqrt(2)
    ppsi = np.zeros_like(psi)
    ppsi[idx ^ mask] = fu * fv * psi
    return math.cos(gamma) * psi + 1j * math.sin(gamma) * ppsi


def reduced_density(psi: np.ndarray, u: int, v: int) -> np.ndarray:
    """Two-qubit reduced density matrix on (u, v), as a 4x4 array."""
    n = int(round(math.log2(psi.size)))
    if u == v or not (0 <= u < n) or not (0 <= v < n):
        raise InputError(f"bad qubit pair ({u},{v}) for n={n}")
    tensor = psi.reshape((2,) * n)
    tensor = np.moveaxis(tensor, (u, v), (0, 1))
    mat = tensor.reshape(4, -1)
    return mat @ mat.conj().T


def hamiltonian_energy(kind: str, g: Graph, psi: np.ndarray) -> float:
    """Energy sum_{(u,v)} w <psi| h_uv |psi>, evaluated edge by edge."""
    _check_kind(kind)
    if psi.size != 2 ** g.n:
        raise InputError(f"statevector size {psi.size} != 2^{g.n}")
    if g.n > MAX_SIM_QUBITS:
        raise InputError(f"simulation capped at {MAX_SIM_QUBITS} qubits")
    h = local_term(kind)
    total = 0.0
    for (u, v, w) in g.edges:
        rho = reduced_density(psi, u, v)
        total += w * float(np.trace(h @ rho).real)
    return total


def bloch_to_density(r: np.ndarray) -> np.ndarray:
    """Two-qubit density from its 4x4 real Bloch matrix.

    rho = (1/4) sum_{mu,nu} r[mu,nu] sigma_mu (x) sigma_nu over the
    operator basis (I, X, Y, Z); Hermitian with unit trace by
    construction. Requires r[0,0] == 1.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (4, 4):
        raise InputError(f"Bloch matrix must be 4x4, got {r.shape}")
    if abs(r[0, 0] - 1.0) > 1e-12:
        raise InputError(f"Bloch matrix needs r[0,0] = 1, got {r[0, 0]}")
    rho = np.zeros((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(4):
            if r[mu, nu] != 0.0:
                rho += r[mu, nu] * np.kron(PAULIS[mu], PAULIS[nu])
    return 0.25 * rho


def two_qubit_bloch_matrix(rho: np.ndarray) -> np.ndarray:
    """Inverse of bloch_to_density: r[mu,nu] = Tr[rho sigma_mu (x) sigma_nu]."""
    r = np.zeros((4, 4))
    for mu in range(4):
        for nu in range(4):
            r[mu, nu] = np.trace(rho @ np.kron(PAULIS[mu], PAULIS[nu])).real
    return r


def graph_hamiltonian(kind: str, g: Graph) -> sp.csr_matrix:
    """Sparse 2^n x 2^n Hamiltonian assembled in the computational basis.

    Each qmc edge term acts on the odd-parity pair of basis states of
    its two bits as [[1,-1],[-1,1]]; each epr term acts on the
    even-parity pair as [[1,1],[1,1]].
    """
    _check_kind(kind)
    n = g.n
    dim = 2 ** n
    idx = np.arange(dim)
    rows, cols, data = [], [], []
    for (u, v, w) in g.edges:
        su, sv = _bit_shift(n, u), _bit_shift(n, v)
        bu = (idx >> su) & 1
        bv = (idx >> sv) & 1
        sel = idx[bu != bv] if kind == "qmc" else idx[bu == bv]
        off = -w if kind == "qmc" else w
        rows.append(sel)
        cols.append(sel)
        data.append(np.full(sel.size, w))
        rows.append(sel)
        cols.append(sel ^ ((1 << su) | (1 << sv)))
        data.append(np.full(sel.size, off))
    if not rows:
        return sp.csr_matrix((dim, dim))
    H = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim))
    return H.tocsr()


def exact_lambda_max(kind: str, g: Graph) -> float:
    """Largest eigenvalue of the graph Hamiltonian via power iteration.

    H is PSD (sum of PSD terms), so plain power iteration from a fixed
    seeded start converges to lambda_max. Stops once successive
    Rayleigh quotients differ by < 1e-10 and the residual confirms the
    quotient; the returned quotient never exceeds lambda_max.
    """
    _check_kind(kind)
    if g.n > MAX_EIG_QUBITS:
        raise InputError(f"eigensolve capped at {MAX_EIG_QUBITS} qubits")
    if not g.edges:
        return 0.0
    H = graph_hamiltonian(kind, g)
    rng = np.random.default_rng(_POWER_SEED)
    v = rng.standard_normal(H.shape[0])
    v /= np.linalg.norm(v)
    rq_prev = -np.inf
    scale = float(sum(2.0 * w for (_, _, w) in g.edges))  # crude norm bound
    for _ in range(_POWER_CAP):
        hv = H @ v
        norm = np.linalg.norm(hv)
        if norm == 0.0:
            return 0.0
        rq = float(v @ hv)
        if abs(rq - rq_prev) < _POWER_TOL:
            resid = np.linalg.norm(hv - rq * v)
            if resid <= 1e-6 * max(scale, 1.0):
                return rq
        rq_prev = rq
        v = hv / norm
    return float(v @ (H @ v))
