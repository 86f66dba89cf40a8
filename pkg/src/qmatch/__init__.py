"""Matching-based approximation algorithms for two-qubit Hamiltonians.

The package builds product and partially entangled states for
antiferromagnet-style (singlet-projector) and parallel-pair
(EPR-projector) instances on weighted graphs, certifies the resulting
approximation ratios numerically, and exposes exact small-instance
oracles for validation.
"""

__version__ = "0.1.0"

from .errors import InputError, InvariantViolation
from .graph import (Graph, generate, make_graph, parse_edge_list,
                    serialize_edge_list, total_weight)
from .matching import (FractionalMatching, IntegralMatching,
                       brute_force_matching, in_matching_polytope,
                       max_weight_fractional_matching, max_weight_matching)
from .quantum import (apply_edge_rotation, bloch_to_density,
                      density_from_bloch, exact_lambda_max,
                      graph_hamiltonian, hamiltonian_energy, local_term,
                      product_edge_energy, zero_state)
from .epr_algo import (EprReport, EprRunConfig, angle_edge_bound,
                       compute_gammas, matching_edge_bound, run_epr)
from .qmc_algo import (ProductState, QmcReport, entangled_pair_state,
                       product_provider, reweight, run_combined, run_match,
                       run_pmatch)
from .certify import (CertifyConfig, ConvexityReport, RatioCertificate,
                      certify_epr_min, certify_qmc_ratio,
                      check_epr_convexity, moment_upper_bound,
                      parse_moments, rounded_overlap, rounded_overlap_mc)
from .oracle import (MonogamyReport, end_to_end_ratio, load_corpus,
                     verify_monogamy)

__all__ = [
    "__version__",
    "InputError", "InvariantViolation",
    "Graph", "generate", "make_graph", "parse_edge_list",
    "serialize_edge_list", "total_weight",
    "FractionalMatching", "IntegralMatching", "brute_force_matching",
    "in_matching_polytope", "max_weight_fractional_matching",
    "max_weight_matching",
    "apply_edge_rotation", "bloch_to_density", "density_from_bloch",
    "exact_lambda_max", "graph_hamiltonian", "hamiltonian_energy",
    "local_term", "product_edge_energy", "zero_state",
    "EprReport", "EprRunConfig", "angle_edge_bound", "compute_gammas",
    "matching_edge_bound", "run_epr",
    "ProductState", "QmcReport", "entangled_pair_state",
    "product_provider", "reweight", "run_combined", "run_match",
    "run_pmatch",
    "CertifyConfig", "ConvexityReport", "RatioCertificate",
    "certify_epr_min", "certify_qmc_ratio", "check_epr_convexity",
    "moment_upper_bound", "parse_moments", "rounded_overlap",
    "rounded_overlap_mc",
    "MonogamyReport", "end_to_end_ratio", "load_corpus",
    "verify_monogamy",
]
