import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracles
from qmatch.errors import InputError
from qmatch.graph import generate, make_graph
from qmatch import qmc_algo, quantum


def _pair_checks(b_i, b_j, theta, tol=1e-10):
    rho = qmc_algo.entangled_pair_state(b_i, b_j, theta)
    t = float(np.dot(b_i, b_j))
    # positive semidefinite, unit trace, pure
    vals = np.linalg.eigvalsh(rho)
    assert vals[0] >= -tol
    assert np.trace(rho).real == pytest.approx(1.0, abs=tol)
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=tol)
    # marginals are the inputs shrunk by cos(theta)
    rho_a, rho_b = _oracles.partial_traces(rho)
    assert np.allclose(_oracles.bloch_of_qubit(rho_a),
                       math.cos(theta) * b_i, atol=tol)
    assert np.allclose(_oracles.bloch_of_qubit(rho_b),
                       math.cos(theta) * b_j, atol=tol)
    # energy against the independent projector Hamiltonian
    h = _oracles.bell_local_term("qmc")
    energy = float(np.real(np.trace(h @ rho)))
    want = (1.0 + math.sin(theta)) * (1.0 - t) / 2.0
    assert energy == pytest.approx(want, abs=tol)
    return rho


def test_pair_state_generic(rng):
    for _ in range(50):
        b_i = _oracles.random_unit_vector(rng)
        b_j = _oracles.random_unit_vector(rng)
        theta = float(rng.uniform(0.0, math.pi / 2.0))
        _pair_checks(b_i, b_j, theta)


def test_pair_state_colinear_cases(rng):
    z = np.array([0.0, 0.0, 1.0])
    for theta in (0.0, 0.3, 1.0, math.pi / 2.0):
        _pair_checks(z, z, theta)
        _pair_checks(z, -z, theta)
    for _ in range(10):
        b = _oracles.random_unit_vector(rng)
        _pair_checks(b, b, 0.7)
        _pair_checks(b, -b, 0.7)


def test_pair_state_nearly_colinear(rng):
    # perpendicular component around the degeneracy threshold
    b_i = np.array([0.0, 0.0, 1.0])
    for eps in (1e-14, 1e-12, 1e-10, 1e-8, 1e-6):
        raw = np.array([eps, 0.0, 1.0])
        b_j = raw / np.linalg.norm(raw)
        _pair_checks(b_i, b_j, 0.9)
        _pair_checks(b_i, -b_j, 0.9)


def test_pair_state_antipodal_max_entanglement():
    # opposite unit vectors at theta = pi/2 give the singlet, energy 2
    z = np.array([0.0, 0.0, 1.0])
    rho = qmc_algo.entangled_pair_state(z, -z, math.pi / 2.0)
    h = _oracles.bell_local_term("qmc")
    assert float(np.real(np.trace(h @ rho))) == pytest.approx(2.0, abs=1e-12)


def test_pair_state_input_validation():
    z = np.array([0.0, 0.0, 1.0])
    with pytest.raises(InputError):
        qmc_algo.entangled_pair_state(2 * z, z, 0.3)
    with pytest.raises(InputError):
        qmc_algo.entangled_pair_state(z, z, -0.1)
    with pytest.raises(InputError):
        qmc_algo.entangled_pair_state(z, z, math.pi)


def test_reweight_antipodal_max():
    # t = -1 at theta = pi/2 scales weights by 3/2
    g = make_graph(2, [(0, 1, 2.0)])
    prod = qmc_algo.ProductState(np.array([[0.0, 0.0, 1.0],
                                           [0.0, 0.0, -1.0]]))
    gw = qmc_algo.reweight(g, prod, math.pi / 2.0)
    assert gw.edges == ((0, 1, 3.0),)


def test_reweight_clips_aligned_pairs():
    g = make_graph(2, [(0, 1, 2.0)])
    prod = qmc_algo.ProductState(np.array([[0.0, 0.0, 1.0],
                                           [0.0, 0.0, 1.0]]))
    gw = qmc_algo.reweight(g, prod, 1.0)
    assert gw.edges == ()  # nonpositive gain drops the edge


def test_run_match_path3(path3):
    matching, energy = qmc_algo.run_match(path3)
    assert matching.weight == 1.0
    assert energy == pytest.approx(2.5, abs=1e-12)


def test_run_match_exact_energy_model():
    # (3 M + W) / 2 checked against a direct simulation of the
    # matched-singlet product state on a 4-cycle
    g = generate("cycle", 4)
    matching, energy = qmc_algo.run_match(g)
    assert energy == pytest.approx((3 * matching.weight
                                    + qmc_algo.total_weight(g)) / 2.0,
                                   abs=1e-12)
    dense = _oracles.dense_graph_hamiltonian("qmc", g)
    sing = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    # matching on C4 is {(0,1), (2,3)}; qubit order matches kron order
    psi = np.kron(sing, sing)
    ref = float(np.real(psi.conj() @ dense @ psi))
    assert energy == pytest.approx(ref, abs=1e-12)
    assert set(e[:2] for e in matching.edges) == {(0, 1), (2, 3)}


def test_pmatch_beats_match_on_path3(path3):
    prod = qmc_algo.product_provider("exact_search", path3)
    state, energy = qmc_algo.run_pmatch(path3, prod,
                                        theta=qmc_algo.DEFAULT_THETA)
    _, match_energy = qmc_algo.run_match(path3)
    assert energy > match_energy
    assert energy == pytest.approx(2.6002, abs=1e-3)


def test_pmatch_zero_provider_collapses_to_product(path3):
    prod = qmc_algo.product_provider("zero", path3)
    state, energy = qmc_algo.run_pmatch(path3, prod, theta=1.0)
    assert state.matching.weight == 0.0
    assert energy == 0.0


def test_combined_single_edge(single_edge):
    prod = qmc_algo.product_provider("exact_search", single_edge)
    rep = qmc_algo.run_combined(single_edge, prod)
    assert rep.combined_energy == pytest.approx(2.0, abs=1e-9)
    assert rep.exact_lambda_max == pytest.approx(2.0, abs=1e-9)
    assert rep.match_energy == pytest.approx(2.0, abs=1e-12)


def test_combined_reports_both_bounds(path3):
    prod = qmc_algo.product_provider("zero", path3)
    rep = qmc_algo.run_combined(path3, prod)
    assert rep.upper_bounds["w_plus_fm"] == pytest.approx(3.0, abs=1e-9)
    assert rep.upper_bounds["w_plus_m_over_d"] == pytest.approx(
        2.0 + 1.0 / (14.0 / 15.0), abs=1e-9)
    assert rep.combined_energy >= rep.match_energy - 1e-12


def test_combined_ratio_on_triangle(triangle):
    prod = qmc_algo.product_provider("exact_search", triangle)
    rep = qmc_algo.run_combined(triangle, prod)
    assert rep.exact_lambda_max == pytest.approx(3.0, abs=1e-8)
    assert rep.observed_ratio >= 0.5
    assert rep.combined_energy <= rep.exact_lambda_max + 1e-9


def test_exact_search_product_energy_path3(path3):
    prod = qmc_algo.product_provider("exact_search", path3)
    assert qmc_algo.product_energy(path3, prod) == pytest.approx(2.0,
                                                                 abs=1e-9)


def test_exact_search_triangle_frustrated(triangle):
    prod = qmc_algo.product_provider("exact_search", triangle)
    assert qmc_algo.product_energy(triangle, prod) == pytest.approx(
        2.25, abs=1e-8)


def test_provider_zero_and_random(path3, rng):
    z = qmc_algo.product_provider("zero", path3)
    assert np.allclose(z.blochs, [[0, 0, 1]] * 3)
    r1 = qmc_algo.product_provider("random", path3, seed=4)
    r2 = qmc_algo.product_provider("random", path3, seed=4)
    r3 = qmc_algo.product_provider("random", path3, seed=5)
    assert np.array_equal(r1.blochs, r2.blochs)
    assert not np.array_equal(r1.blochs, r3.blochs)
    assert np.allclose(np.linalg.norm(r1.blochs, axis=1), 1.0, atol=1e-12)


def test_provider_file(path3):
    text = "0 0 1\n0 0 -1\n1 0 0\n"
    prod = qmc_algo.product_provider("file", path3, bloch_text=text)
    assert np.allclose(prod.blochs, [[0, 0, 1], [0, 0, -1], [1, 0, 0]])
    with pytest.raises(InputError):
        qmc_algo.product_provider("file", path3, bloch_text="0 0 1\n")
    with pytest.raises(InputError):
        qmc_algo.product_provider("file", path3,
                                  bloch_text="0 0 2\n0 0 1\n0 0 1\n")


def test_provider_unknown(path3):
    with pytest.raises(InputError):
        qmc_algo.product_provider("sdp", path3)


def test_pmatch_energy_accounting_against_simulation():
    # assemble the global pmatch state explicitly for a 4-vertex graph and
    # compare the accounted energy to a dense trace
    g = generate("random", 4, seed=8, weight_mode="uniform", p=0.9)
    prod = qmc_algo.product_provider("exact_search", g, seed=2)
    theta = 1.1
    state, energy = qmc_algo.run_pmatch(g, prod, theta=theta)
    matched = {}
    for (u, v, _) in state.matching.edges:
        matched[u] = v
        matched[v] = u
    ops = []
    done = set()
    for q in range(g.n):
        if q in done:
            continue
        if q in matched:
            p = matched[q]
            a, b = min(q, p), max(q, p)
            ops.append(((a, b), state.pair_states[(a, b)]))
            done.update((a, b))
        else:
            # unmatched vertices keep their full product-state vector
            ops.append(((q,), quantum.density_from_bloch(prod.blochs[q])))
            done.add(q)
    # kron the blocks in ascending qubit order, then permute explicitly
    full = None
    order = []
    for qs, op in sorted(ops, key=lambda x: x[0]):
        full = op if full is None else np.kron(full, op)
        order.extend(qs)
    dim = 1 << g.n
    if order == list(range(g.n)):
        rho = full
    else:
        pmat = np.zeros((dim, dim))
        for idx in range(dim):
            bits = [(idx >> (g.n - 1 - k)) & 1 for k in range(g.n)]
            src = sum(bits[order[k]] << (g.n - 1 - k) for k in range(g.n))
            pmat[idx, src] = 1.0
        rho = pmat @ full @ pmat.T
    dense = _oracles.dense_graph_hamiltonian("qmc", g)
    ref = float(np.real(np.trace(dense @ rho)))
    assert energy == pytest.approx(ref, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2000))
def test_combined_never_below_match(seed):
    g = generate("random", 6, seed=seed, weight_mode="uniform", p=0.6)
    prod = qmc_algo.product_provider("random", g, seed=seed)
    rep = qmc_algo.run_combined(g, prod)
    assert rep.combined_energy >= rep.match_energy - 1e-12
    assert rep.combined_energy >= rep.prod_energy - 1e-12
