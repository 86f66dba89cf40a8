"""End-to-end acceptance checks, one test per criterion.

Run with `pytest -v tests/test_acceptance.py` to get a single pass/fail
line per criterion. Criteria that depend on heavy shared computation
(corpus eigensolves) reuse the memoized oracles in _oracles.py.
"""

import math
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

import _oracles
from qmatch import certify, epr_algo, oracle, qmc_algo, quantum
from qmatch.graph import generate, make_graph
from qmatch.matching import (max_weight_fractional_matching,
                             max_weight_matching)

PHI = (1.0 + math.sqrt(5.0)) / 2.0
CLI = [sys.executable, "-m", "qmatch"]


def test_criterion_01_epr_certificate_golden_half():
    t0 = time.perf_counter()
    alpha = certify.certify_epr_min()
    elapsed = time.perf_counter() - t0
    assert alpha == pytest.approx((1.0 + math.sqrt(5.0)) / 4.0, abs=1e-8)
    # the minimum must sit on the boundary x in {0, 1}
    end0 = certify.epr_ratio_objective(0.0)
    end1 = certify.epr_ratio_objective(1.0)
    assert min(end0, end1) == pytest.approx(alpha, abs=1e-12)
    xs = np.linspace(0.0, 1.0, 20_001)
    assert np.min(certify.epr_ratio_objective(xs)[1:-1]) >= alpha - 1e-12
    assert elapsed < 1.0


def test_criterion_02_qmc_certificates():
    t0 = time.perf_counter()
    cert = certify.certify_qmc_ratio()
    assert cert.alpha >= 0.611
    assert abs(cert.argmax_theta - 1.286) < 0.01
    assert abs(cert.argmax_mu - 0.861) < 0.01
    unit = certify.certify_qmc_ratio(
        certify.CertifyConfig(capacity_factor=1.0))
    assert unit.alpha >= 0.614
    assert abs(unit.argmax_theta - 1.288) < 0.01
    assert abs(unit.argmax_mu - 0.881) < 0.01
    assert time.perf_counter() - t0 < 60.0


def test_criterion_03_path3_worked_example():
    g = generate("path", 3)
    assert quantum.exact_lambda_max("qmc", g) == pytest.approx(3.0, abs=1e-8)
    assert quantum.exact_lambda_max("epr", g) == pytest.approx(3.0, abs=1e-8)
    # product state from the all-|0> provider
    prod = qmc_algo.product_provider("zero", g)
    epr_prod = sum(w * quantum.product_edge_energy("epr", prod.blochs[u],
                                                   prod.blochs[v])
                   for (u, v, w) in g.edges)
    assert epr_prod == pytest.approx(2.0, abs=1e-12)
    _, match_energy = qmc_algo.run_match(g)
    assert match_energy == pytest.approx(2.5, abs=1e-12)
    # two-rotation circuit with the published angles
    psi = quantum.apply_edge_rotation(quantum.zero_state(3), 0, 1, 0.554)
    assert quantum.hamiltonian_energy("epr", g, psi) == pytest.approx(
        2.618, abs=1e-3)
    rep = epr_algo.run_epr(g)
    assert rep.certified_lower_bound == pytest.approx(PHI + PHI / 2.0,
                                                      abs=1e-9)
    assert rep.ratio_certified >= 0.809


def test_criterion_04_single_edge():
    g = make_graph(2, [(0, 1, 1.0)])
    rep = epr_algo.run_epr(g)
    assert rep.certified_lower_bound == pytest.approx(PHI, abs=1e-9)
    assert rep.exact_energy == pytest.approx(PHI, abs=1e-9)
    lam = quantum.exact_lambda_max("epr", g)
    assert lam == pytest.approx(2.0, abs=1e-9)
    assert rep.ratio_certified == PHI / 2.0  # exact, not approximate
    prod = qmc_algo.product_provider("exact_search", g)
    qrep = qmc_algo.run_combined(g, prod)
    assert qrep.combined_energy == pytest.approx(2.0, abs=1e-9)
    assert qrep.exact_lambda_max == pytest.approx(2.0, abs=1e-9)


def test_criterion_05_pair_state_property_suite():
    rng = np.random.default_rng(5)
    h = _oracles.bell_local_term("qmc")
    for _ in range(1000):
        b_i = _oracles.random_unit_vector(rng)
        b_j = _oracles.random_unit_vector(rng)
        theta = float(rng.uniform(0.0, math.pi / 2.0))
        rho = qmc_algo.entangled_pair_state(b_i, b_j, theta)
        vals = np.linalg.eigvalsh(rho)
        assert vals[0] >= -1e-10
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-10)
        rho_a, rho_b = _oracles.partial_traces(rho)
        assert np.allclose(_oracles.bloch_of_qubit(rho_a),
                           math.cos(theta) * b_i, atol=1e-10)
        assert np.allclose(_oracles.bloch_of_qubit(rho_b),
                           math.cos(theta) * b_j, atol=1e-10)
        t = float(b_i @ b_j)
        want = (1.0 + math.sin(theta)) * (1.0 - t) / 2.0
        got = float(np.real(np.trace(h @ rho)))
        assert got == pytest.approx(want, abs=1e-10)


def test_criterion_06_circuit_invariants():
    rng = np.random.default_rng(6)
    for seed in range(50):
        n = int(rng.integers(3, 11))
        p = float(rng.uniform(0.3, 0.9))
        g = generate("random", n, seed=seed, weight_mode="uniform", p=p)
        fm = max_weight_fractional_matching(g)
        gammas = epr_algo.compute_gammas(fm, epr_algo.DEFAULT_THETA)
        psi = epr_algo.circuit_state(g, gammas)
        order = list(g.edges)
        rng.shuffle(order)
        psi2 = quantum.zero_state(g.n)
        for (u, v, _) in order:
            if gammas[(u, v)]:
                psi2 = quantum.apply_edge_rotation(psi2, u, v,
                                                   gammas[(u, v)])
        assert np.max(np.abs(psi - psi2)) < 1e-12
        exact = quantum.hamiltonian_energy("epr", g, psi)
        certified = sum(
            w * epr_algo.matching_edge_bound(epr_algo.DEFAULT_THETA,
                                             fm.values[(u, v)])
            for (u, v, w) in g.edges)
        assert exact >= certified - 1e-9


def test_criterion_07_monogamy_suite():
    t0 = time.perf_counter()
    reports = _oracles.corpus_with_reports()
    elapsed = time.perf_counter() - t0
    assert len(reports) > 200
    bad = [label for (label, _, rep) in reports if not rep.ok]
    assert bad == []
    assert elapsed < 600.0


def test_criterion_08_overlap_oracle_agreement():
    for s in (-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0):
        series = certify.rounded_overlap(s)
        mean, se = certify.rounded_overlap_mc(s, samples=1_000_000, seed=8)
        assert abs(series - mean) <= 3.0 * max(se, 1e-15), (
            f"s={s}: series {series} vs MC {mean} +- {se}")
    assert certify.rounded_overlap(0.0) == pytest.approx(0.0, abs=1e-10)
    assert certify.rounded_overlap(1.0) == pytest.approx(1.0, abs=1e-10)
    assert certify.rounded_overlap(-1.0) == pytest.approx(-1.0, abs=1e-10)


def test_criterion_09_corpus_end_to_end_ratio():
    reports = _oracles.corpus_with_reports()
    worst = (None, 1.0)
    findings = []
    for (label, g, rep) in reports:
        if not g.edges:
            continue
        # sanity chain: half-integrality keeps FM within 3M/2
        m = max_weight_matching(g)
        fm = max_weight_fractional_matching(g)
        assert fm.weight <= 1.5 * m.weight + 1e-9, label
        prod = qmc_algo.product_provider("exact_search", g, seed=0)
        combined = qmc_algo.run_combined(g, prod).combined_energy
        ratio = combined / rep.lambda_qmc if rep.lambda_qmc > 0 else 1.0
        if ratio < worst[1]:
            worst = (label, ratio)
        if ratio < 0.611:
            findings.append((label, ratio))
    for (label, ratio) in findings:
        warnings.warn(f"observed ratio {ratio:.6f} below 0.611 on {label}")
    assert worst[1] >= 0.5, worst


def test_criterion_10_cli_determinism(tmp_path):
    g1 = tmp_path / "g1.txt"
    rc = subprocess.run(CLI + ["gen", "random", "8", "--seed", "11",
                               "--weight-mode", "uniform",
                               "--out", str(g1)])
    assert rc.returncode == 0
    invocations = [
        ["gen", "random", "6", "--seed", "2", "--weight-mode", "uniform"],
        ["epr", str(g1)],
        ["qmc", str(g1), "--provider", "random", "--seed", "7"],
        ["qmc", str(g1), "--provider", "exact_search"],
        ["exact", str(g1), "--kind", "qmc"],
        ["certify", "epr"],
        ["certify", "convexity"],
        ["sweep", "epr", str(g1), "--theta", "0.1:0.5:0.1"],
    ]
    for args in invocations:
        a = subprocess.run(CLI + args, capture_output=True)
        b = subprocess.run(CLI + args, capture_output=True)
        assert a.returncode == b.returncode == 0, (args, a.stderr)
        assert a.stdout == b.stdout, args
