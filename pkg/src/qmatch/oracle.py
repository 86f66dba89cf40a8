"""Ground-truth harness: corpus loading, bound verification, ratios.

The corpus is a fixed manifest of generator specs checked into the
package data; every instance is small enough for the exact eigensolver,
so the entanglement-capacity bounds and the end-to-end approximation
ratios can be checked against the true optimum.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

from .errors import InputError
from .graph import Graph, generate, total_weight
from .matching import max_weight_matching, max_weight_fractional_matching
from .quantum import exact_lambda_max
from .epr_algo import EprRunConfig, run_epr
from .qmc_algo import product_provider, run_combined

BOUND_TOL = 1e-7
CAPACITY_FACTOR = 14.0 / 15.0


def corpus_manifest_text() -> str:
    """Contents of the packaged corpus manifest."""
    ref = importlib.resources.files("qmatch").joinpath("data/corpus.txt")
    return ref.read_text()


def parse_manifest(text: str) -> list[tuple[str, dict]]:
    """Parse manifest lines "kind n seed weight_mode [p]" into
    (label, generator kwargs) pairs."""
    specs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (4, 5):
            raise InputError(f"line {lineno}: expected 4 or 5 fields")
        try:
            kind, n, seed, mode = (parts[0], int(parts[1]), int(parts[2]),
                                   parts[3])
            kwargs = {"kind": kind, "n": n, "seed": seed,
                      "weight_mode": mode}
            label = f"{kind}-n{n}-s{seed}-{mode}"
            if len(parts) == 5:
                kwargs["p"] = float(parts[4])
                label += f"-p{parts[4]}"
        except ValueError:
            raise InputError(f"line {lineno}: malformed manifest entry "
                             f"{line!r}")
        if mode not in ("unit", "uniform"):
            raise InputError(f"line {lineno}: unknown weight mode {mode!r}")
        specs.append((label, kwargs))
    return specs


def load_corpus(manifest_text: str | None = None
                ) -> list[tuple[str, Graph]]:
    """Materialize the corpus deterministically from its manifest."""
    if manifest_text is None:
        manifest_text = corpus_manifest_text()
    return [(label, generate(**kwargs))
            for (label, kwargs) in parse_manifest(manifest_text)]


@dataclass(frozen=True)
class MonogamyReport:
    """Exact optima versus the two efficiently computable upper bounds."""

    lambda_qmc: float
    lambda_epr: float
    total_weight: float
    matching_weight: float
    fractional_weight: float
    pair_bound: float
    capacity_bound: float
    ok_pair_qmc: bool
    ok_pair_epr: bool
    ok_capacity: bool

    @property
    def ok(self) -> bool:
        return self.ok_pair_qmc and self.ok_pair_epr and self.ok_capacity


def verify_monogamy(g: Graph) -> MonogamyReport:
    """Check lambda_max <= W + FM (both kinds) and, for the quantum
    MaxCut kind, lambda_max <= W + M / (14/15)."""
    if g.n > 12:
        raise InputError(f"monogamy verification capped at 12 vertices")
    lam_qmc = exact_lambda_max("qmc", g)
    lam_epr = exact_lambda_max("epr", g)
    w = total_weight(g)
    m = max_weight_matching(g).weight
    fm = max_weight_fractional_matching(g).weight
    pair_bound = w + fm
    capacity_bound = w + m / CAPACITY_FACTOR
    return MonogamyReport(
        lambda_qmc=lam_qmc, lambda_epr=lam_epr, total_weight=w,
        matching_weight=m, fractional_weight=fm, pair_bound=pair_bound,
        capacity_bound=capacity_bound,
        ok_pair_qmc=lam_qmc <= pair_bound + BOUND_TOL,
        ok_pair_epr=lam_epr <= pair_bound + BOUND_TOL,
        ok_capacity=lam_qmc <= capacity_bound + BOUND_TOL)


def end_to_end_ratio(g: Graph, seed: int = 0) -> float:
    """Worst observed achieved-over-optimal ratio across both problems.

    Runs the rotation circuit for the EPR objective and the combined
    subroutine (with the searched product state) for quantum MaxCut,
    dividing each achieved energy by the exact optimum. Empty graphs
    score 1.
    """
    if g.n > 12:
        raise InputError(f"end-to-end check capped at 12 vertices")
    if not g.edges:
        return 1.0
    epr_rep = run_epr(g, EprRunConfig())
    lam_epr = exact_lambda_max("epr", g)
    epr_energy = epr_rep.exact_energy
    if epr_energy is None:
        epr_energy = epr_rep.certified_lower_bound
    ratio_epr = epr_energy / lam_epr if lam_epr > 0 else 1.0
    prod = product_provider("exact_search", g, seed)
    qmc_rep = run_combined(g, prod)
    ratio_qmc = qmc_rep.observed_ratio
    if ratio_qmc is None:
        ratio_qmc = 1.0
    return min(ratio_epr, ratio_qmc)
