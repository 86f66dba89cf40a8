"""Command-line surface with reproducible, machine-readable output.

Subcommands: gen | epr | qmc | exact | certify | verify | sweep.
Reports are JSON (17 significant digits for floats) or CSV; identical
invocations with identical seeds emit byte-identical output. Exit code
0 on success, 1 on input errors, 2 when a certified invariant fails.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .errors import InputError, InvariantViolation
from .graph import generate, parse_edge_list, serialize_edge_list, total_weight
from .matching import (in_matching_polytope, max_weight_matching,
                       max_weight_fractional_matching)
from . import quantum
from .epr_algo import EprRunConfig, run_epr
from .qmc_algo import (DEFAULT_THETA as QMC_THETA,
                       DEFAULT_CAPACITY_FACTOR, product_provider,
                       run_combined)
from . import certify as certify_mod
from . import oracle as oracle_mod


# ---------------------------------------------------------------------------
# serialization


def _render_json(obj) -> str:
    """JSON with floats at 17 significant digits, insertion-ordered."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, dict):
        parts = [f"{json.dumps(str(k))}: {_render_json(v)}"
                 for k, v in obj.items()]
        return "{" + ", ".join(parts) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if v is True or v is False:
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append([prefix, obj])


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, report: dict) -> None:
    if getattr(args, "format", "json") == "csv":
        rows: list[list] = []
        _flatten("", report, rows)
        _emit(args, _render_csv(["key", "value"], rows))
    else:
        _emit(args, _render_json(report) + "\n")


def _graph_block(g) -> dict:
    return {"n": g.n, "edges": [[u, v, w] for (u, v, w) in g.edges]}


def _report(graph_block, algorithm: str, params: dict, energies: dict,
            bounds: dict, ratio: dict, seed: int) -> dict:
    return {"graph": graph_block, "algorithm": algorithm, "params": params,
            "energies": energies, "bounds": bounds, "ratio": ratio,
            "seed": seed, "version": __version__}


def _load_graph(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}")
    return parse_edge_list(text)


def _read_file(path: str, what: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {what} {path}: {exc}")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args) -> int:
    g = generate(args.kind, args.n, seed=args.seed,
                 weight_mode=args.weight_mode, p=args.p)
    _emit(args, serialize_edge_list(g))
    return 0


def _cmd_epr(args) -> int:
    g = _load_graph(args.graph)
    cfg = EprRunConfig(theta=args.theta)
    rep = run_epr(g, cfg)
    fm = max_weight_fractional_matching(g)
    report = _report(
        _graph_block(g), "epr",
        {"theta": args.theta,
         "fractional_matching": [[u, v, fm.values[(u, v)]]
                                 for (u, v, _) in g.edges],
         "gammas": [[u, v, rep.gammas[(u, v)]] for (u, v, _) in g.edges]},
        {"certified_lower_bound": rep.certified_lower_bound,
         "exact_energy": rep.exact_energy},
        {"w_plus_fm": rep.upper_bound},
        {"certified": rep.ratio_certified},
        args.seed)
    _emit_report(args, report)
    return 0


def _cmd_qmc(args) -> int:
    g = _load_graph(args.graph)
    bloch_text = None
    if args.provider == "file":
        if not args.bloch_file:
            raise InputError("--provider file needs --bloch-file")
        bloch_text = _read_file(args.bloch_file, "Bloch-vector file")
    prod = product_provider(args.provider, g, seed=args.seed,
                            bloch_text=bloch_text)
    rep = run_combined(g, prod, theta=args.theta, capacity_factor=args.d)
    matching = max_weight_matching(g)
    bounds = dict(rep.upper_bounds)
    ratio = {"observed": rep.observed_ratio}
    if args.moments_file:
        moments = certify_mod.parse_moments(
            _read_file(args.moments_file, "moments file"))
        bounds["moment_upper_bound"] = certify_mod.moment_upper_bound(
            g, moments)
        if g.n <= 14:
            x = certify_mod.moment_matching_vector(g, moments, args.d)
            ratio["moment_in_polytope"] = in_matching_polytope(g, x)
    report = _report(
        _graph_block(g), "qmc",
        {"theta": args.theta, "capacity_factor": args.d,
         "provider": args.provider,
         "matching": [[u, v, w] for (u, v, w) in matching.edges]},
        {"product": rep.prod_energy, "match": rep.match_energy,
         "pmatch": rep.pmatch_energy, "combined": rep.combined_energy,
         "lambda_max": rep.exact_lambda_max},
        bounds, ratio, args.seed)
    _emit_report(args, report)
    return 0


def _cmd_exact(args) -> int:
    g = _load_graph(args.graph)
    lam = quantum.exact_lambda_max(args.kind, g)
    report = _report(_graph_block(g), "exact", {"kind": args.kind},
                     {"lambda_max": lam}, {}, {}, args.seed)
    _emit_report(args, report)
    return 0


def _cmd_certify(args) -> int:
    if args.target == "epr":
        alpha = certify_mod.certify_epr_min()
        report = _report(None, "certify-epr", {},
                         {"objective_at_zero":
                          certify_mod.epr_ratio_objective(0.0),
                          "objective_at_one":
                          certify_mod.epr_ratio_objective(1.0)},
                         {}, {"alpha": alpha}, args.seed)
        _emit_report(args, report)
        return 0
    if args.target == "qmc":
        cfg = certify_mod.CertifyConfig(capacity_factor=args.d)
        cert = certify_mod.certify_qmc_ratio(cfg)
        report = _report(
            None, "certify-qmc",
            {"capacity_factor": cfg.capacity_factor,
             "theta_grid": cfg.theta_grid, "mu_grid": cfg.mu_grid,
             "s_grid": cfg.s_grid, "refine_iters": cfg.refine_iters},
            {},
            {},
            {"alpha": cert.alpha, "argmax_theta": cert.argmax_theta,
             "argmax_mu": cert.argmax_mu, "worst_s": cert.worst_s,
             "worst_branch": cert.worst_branch},
            args.seed)
        _emit_report(args, report)
        return 0
    if args.target in ("convexity", "appendix-b"):
        rep = certify_mod.check_epr_convexity()
        report = _report(
            None, "certify-convexity", {},
            {"f_at_zero": rep.f_at_zero, "f_at_one": rep.f_at_one,
             "max_f": rep.max_f, "min_f_second": rep.min_f_second,
             "g_at_end": rep.g_at_end},
            {}, {"ok": rep.ok}, args.seed)
        _emit_report(args, report)
        if not rep.ok:
            raise InvariantViolation("convexity spot checks failed")
        return 0
    # moments
    if not args.graph:
        raise InputError("certify moments needs a graph file")
    if not args.moments_file:
        raise InputError("certify moments needs --moments-file")
    g = _load_graph(args.graph)
    moments = certify_mod.parse_moments(
        _read_file(args.moments_file, "moments file"))
    bound = certify_mod.moment_upper_bound(g, moments)
    in_poly = None
    if g.n <= 14:
        x = certify_mod.moment_matching_vector(g, moments, args.d)
        in_poly = in_matching_polytope(g, x)
    report = _report(
        _graph_block(g), "certify-moments", {"capacity_factor": args.d},
        {}, {"moment_upper_bound": bound}, {"in_polytope": in_poly},
        args.seed)
    _emit_report(args, report)
    if in_poly is False:
        raise InvariantViolation(
            "moment-induced edge mass leaves the matching polytope")
    return 0


def _cmd_verify(args) -> int:
    if args.manifest:
        manifest = _read_file(args.manifest, "manifest")
    else:
        manifest = oracle_mod.corpus_manifest_text()
    corpus = oracle_mod.load_corpus(manifest)
    header = ["instance", "n", "edges", "total_weight", "matching",
              "fractional", "lambda_qmc", "lambda_epr", "pair_bound",
              "capacity_bound", "ok"]
    rows = []
    violations = 0
    for (label, g) in corpus:
        rep = oracle_mod.verify_monogamy(g)
        rows.append([label, g.n, len(g.edges), rep.total_weight,
                     rep.matching_weight, rep.fractional_weight,
                     rep.lambda_qmc, rep.lambda_epr, rep.pair_bound,
                     rep.capacity_bound, rep.ok])
        if not rep.ok:
            violations += 1
    if getattr(args, "format", "csv") == "json":
        body = {"algorithm": "verify", "params": {"instances": len(corpus)},
                "rows": [dict(zip(header, row)) for row in rows],
                "seed": args.seed, "version": __version__}
        _emit(args, _render_json(body) + "\n")
    else:
        _emit(args, _render_csv(header, rows))
    if violations:
        raise InvariantViolation(
            f"{violations} corpus instance(s) violate the capacity bounds")
    return 0


def _parse_theta_range(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError(f"theta range must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise InputError(f"theta range must be numeric, got {spec!r}")
    if step <= 0 or stop < start:
        raise InputError(f"bad theta range {spec!r}")
    out = []
    k = 0
    while True:
        t = start + k * step
        if t > stop + 1e-12:
            break
        out.append(t)
        k += 1
    return out


def _cmd_sweep(args) -> int:
    g = _load_graph(args.graph)
    thetas = _parse_theta_range(args.theta)
    rows = []
    if args.mode == "epr":
        header = ["theta", "exact_energy", "certified_lower_bound"]
        for t in thetas:
            if t <= 0:
                t = 1e-12  # angle 0 means no rotation; keep config valid
            rep = run_epr(g, EprRunConfig(theta=t))
            rows.append([t, rep.exact_energy, rep.certified_lower_bound])
    else:
        header = ["theta", "pmatch_energy", "combined_energy"]
        bloch_text = None
        if args.provider == "file":
            if not args.bloch_file:
                raise InputError("--provider file needs --bloch-file")
            bloch_text = _read_file(args.bloch_file, "Bloch-vector file")
        prod = product_provider(args.provider, g, seed=args.seed,
                                bloch_text=bloch_text)
        for t in thetas:
            if not (0.0 <= t <= math.pi / 2):
                raise InputError(
                    f"pair-state sweep needs theta in [0, pi/2], got {t}")
            rep = run_combined(g, prod, theta=t, capacity_factor=args.d)
            rows.append([t, rep.pmatch_energy, rep.combined_energy])
    if getattr(args, "format", "csv") == "json":
        body = {"algorithm": f"sweep-{args.mode}", "params": {"theta": args.theta},
                "rows": [dict(zip(header, row)) for row in rows],
                "seed": args.seed, "version": __version__}
        _emit(args, _render_json(body) + "\n")
    else:
        _emit(args, _render_csv(header, rows))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _add_common(p, fmt_default="json"):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=fmt_default)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qmatch",
                     description="matching-based approximation algorithms "
                                 "for two-qubit Hamiltonian optimization")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a corpus graph as edge-list text")
    p.add_argument("kind", choices=("path", "cycle", "complete", "star",
                                    "random"))
    p.add_argument("n", type=int)
    p.add_argument("--weight-mode", choices=("unit", "uniform"),
                   default="unit")
    p.add_argument("--p", type=float, default=None,
                   help="edge probability for the random kind")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("epr", help="run the rotation circuit with bounds")
    p.add_argument("graph")
    p.add_argument("--theta", type=float,
                   default=EprRunConfig().theta)
    _add_common(p)
    p.set_defaults(func=_cmd_epr)

    p = sub.add_parser("qmc", help="run the combined matching subroutines")
    p.add_argument("graph")
    p.add_argument("--provider",
                   choices=("zero", "file", "exact_search", "random"),
                   default="exact_search")
    p.add_argument("--bloch-file", default=None)
    p.add_argument("--moments-file", default=None)
    p.add_argument("--theta", type=float, default=QMC_THETA)
    p.add_argument("--d", type=float, default=DEFAULT_CAPACITY_FACTOR)
    _add_common(p)
    p.set_defaults(func=_cmd_qmc)

    p = sub.add_parser("exact", help="largest eigenvalue of the instance")
    p.add_argument("graph")
    p.add_argument("--kind", choices=("qmc", "epr"), default="qmc")
    _add_common(p)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("certify", help="numeric ratio certificates")
    p.add_argument("target", choices=("epr", "qmc", "convexity",
                                      "appendix-b", "moments"))
    p.add_argument("graph", nargs="?", default=None)
    p.add_argument("--moments-file", default=None)
    p.add_argument("--d", type=float, default=DEFAULT_CAPACITY_FACTOR)
    _add_common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("verify", help="corpus capacity-bound verification")
    p.add_argument("--manifest", default=None)
    _add_common(p, fmt_default="csv")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="scan theta and tabulate energies")
    p.add_argument("mode", choices=("epr", "qmc"))
    p.add_argument("graph")
    p.add_argument("--theta", required=True, help="range start:stop:step")
    p.add_argument("--provider",
                   choices=("zero", "file", "exact_search", "random"),
                   default="exact_search")
    p.add_argument("--bloch-file", default=None)
    p.add_argument("--d", type=float, default=DEFAULT_CAPACITY_FACTOR)
    _add_common(p, fmt_default="csv")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
