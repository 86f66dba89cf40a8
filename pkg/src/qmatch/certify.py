"""Numeric certificates for the approximation guarantees.

Three independent certifications:
  - the golden-ratio floor of the fractional-matching circuit, by
    minimizing the per-edge bound over the matching value;
  - convexity spot checks of the auxiliary function behind that
    minimization;
  - the product/matching minimax ratio for the quantum MaxCut
    algorithm, by grid search with local refinement over the
    interpolation angle and the mixing weight against an adversarial
    edge-overlap parameter.

The expected overlap produced by random 3-dimensional Gaussian
projection rounding is implemented as a hypergeometric-type series and
must be validated against the Monte Carlo rounding oracle shipped
alongside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, InvariantViolation
from .epr_algo import GOLDEN_RATIO, DEFAULT_THETA
from .graph import Graph

_OVERLAP_COEF = 8.0 / (3.0 * math.pi)


# ---------------------------------------------------------------------------
# expected rounded overlap


def _series_2f1(a: float, b: float, c: float, z: np.ndarray) -> np.ndarray:
    """Gauss hypergeometric series, elementwise; needs |z| bounded away
    from 1 (callers stay at |z| <= 1/2 where 60 terms reach 1e-17)."""
    z = np.asarray(z, dtype=float)
    acc = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(400):
        term = term * ((a + k) * (b + k)) / ((c + k) * (1.0 + k)) * z
        acc = acc + term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(acc), 1e-30)):
            break
    return acc


def _hyp_overlap_kernel(z: np.ndarray) -> np.ndarray:
    """2F1(1/2, 1/2; 5/2; z) on [0, 1], split for series convergence.

    For z > 1/2 the standard linear transformation moves the argument
    to 1 - z <= 1/2:
      (3 pi / 8) 2F1(1/2,1/2;-1/2;1-z) + (1-z)^{3/2} 2F1(2,2;5/2;1-z).
    """
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    lo = z <= 0.5
    if np.any(lo):
        out[lo] = _series_2f1(0.5, 0.5, 2.5, z[lo])
    hi = ~lo
    if np.any(hi):
        w = 1.0 - z[hi]
        out[hi] = (3.0 * math.pi / 8.0) * _series_2f1(0.5, 0.5, -0.5, w) \
            + w ** 1.5 * _series_2f1(2.0, 2.0, 2.5, w)
    return out


def rounded_overlap(s):
    """Expected Bloch overlap after Gaussian projection rounding.

    For unit vectors with inner product s, projecting onto 3
    independent Gaussian directions and normalizing yields Bloch
    vectors whose expected inner product is
    (8 / 3 pi) s 2F1(1/2, 1/2; 5/2; s^2): odd, with values 0 and +-1
    reproduced exactly at s = 0 and s = +-1, and |value| <= |s|.
    Accepts scalars or arrays.
    """
    arr = np.asarray(s, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-12):
        raise InputError("overlap argument must lie in [-1, 1]")
    arr = np.clip(arr, -1.0, 1.0)
    val = _OVERLAP_COEF * arr * _hyp_overlap_kernel(arr ** 2)
    if np.isscalar(s) or getattr(s, "ndim", 1) == 0:
        return float(val)
    return val


def rounded_overlap_mc(s: float, samples: int = 1_000_000,
                       seed: int = 0) -> tuple[float, float]:
    """Monte Carlo rounding oracle: (mean, standard error).

    Simulates the projection directly: the images of two unit vectors
    with inner product s under a 3-row Gaussian matrix are jointly
    Gaussian with correlation s per row, so draw them as such,
    normalize, and average the inner products.
    """
    if not -1.0 <= s <= 1.0:
        raise InputError("overlap argument must lie in [-1, 1]")
    rng = np.random.default_rng(seed)
    dots = np.empty(samples)
    chunk = 200_000
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        g1 = rng.standard_normal((k, 3))
        g2 = rng.standard_normal((k, 3))
        a = g1
        b = s * g1 + math.sqrt(max(1.0 - s * s, 0.0)) * g2
        a = a / np.linalg.norm(a, axis=1, keepdims=True)
        b = b / np.linalg.norm(b, axis=1, keepdims=True)
        dots[done:done + k] = np.einsum("ij,ij->i", a, b)
        done += k
    mean = float(np.mean(dots))
    stderr = float(np.std(dots, ddof=1) / math.sqrt(samples))
    return mean, stderr


# ---------------------------------------------------------------------------
# golden-ratio certificate


def epr_ratio_objective(x):
    """Per-edge certified energy over its capacity share, at default theta.

    T(theta, x) / (1 + x) with theta = log(golden ratio) / 2; equals
    (1 + sqrt 5) / 4 exactly at both endpoints and exceeds it inside.
    """
    arr = np.asarray(x, dtype=float)
    a = np.exp(-DEFAULT_THETA * (1.0 - arr))
    inner = np.clip(1.0 - np.exp(-2.0 * DEFAULT_THETA * arr), 0.0, None)
    t = 0.5 * (1.0 + a * a + 2.0 * np.sqrt(inner) * a)
    val = t / (1.0 + arr)
    if np.isscalar(x) or getattr(x, "ndim", 1) == 0:
        return float(val)
    return val


def certify_epr_min(grid_points: int = 100_001) -> float:
    """Minimum of the per-edge ratio objective over the matching value.

    Grid scan on [0, 1] followed by golden-section refinement around
    the incumbent; returns the smallest evaluated value.
    """
    xs = np.linspace(0.0, 1.0, grid_points)
    vals = epr_ratio_objective(xs)
    i = int(np.argmin(vals))
    best = float(vals[i])
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, grid_points - 1)]
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = epr_ratio_objective(c), epr_ratio_objective(d)
    for _ in range(80):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = epr_ratio_objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = epr_ratio_objective(d)
    return min(best, fc, fd)


@dataclass(frozen=True)
class ConvexityReport:
    """Spot checks that the pair-bound auxiliary function is convex and
    pinned to zero at both endpoints (hence nonpositive between)."""

    f_at_zero: float
    f_at_one: float
    max_f: float
    min_f_second: float
    g_monotone: bool
    g_at_end: float
    ok: bool


def _f_gap(x):
    """Difference whose nonpositivity pins the ratio minimum to {0, 1}."""
    c = GOLDEN_RATIO
    return (c * c * (x + c) ** 2 - 4.0 * c * x - 4.0
            + c ** (2.0 * x - 2.0) - 2.0 * c ** x * (x + c))


def _f_second(x):
    c = GOLDEN_RATIO
    L = math.log(c)
    cx = c ** x
    return (2.0 * c * c + 4.0 * L * L * c ** (2.0 * x - 2.0)
            - 2.0 * L * L * cx * (x + c) - 4.0 * L * cx)


def check_epr_convexity(grid_points: int = 20_001) -> ConvexityReport:
    """Verify the auxiliary inequality behind the golden-ratio floor.

    With c = golden ratio and L = log c, checks on fine grids that
    f(x) = c^2 (x+c)^2 - 4 c x - 4 + c^{2x-2} - 2 c^x (x+c)
    vanishes at x = 0 and 1 and stays nonpositive, that its second
    derivative is nonnegative, and that the substituted second
    derivative g(z) = f''(log_c z) decreases on [1, c] toward a
    positive value at z = c.
    """
    c = GOLDEN_RATIO
    L = math.log(c)
    x = np.linspace(0.0, 1.0, grid_points)
    f = _f_gap(x)
    fpp = _f_second(x)
    z = np.linspace(1.0, c, grid_points)
    gz = 2.0 * c * c + 4.0 * L * L * z * z / (c * c) \
        - 2.0 * L * z * np.log(z) - 2.0 * L * L * c * z - 4.0 * L * z
    g_end_closed = 2.0 * (c - L) ** 2 - 4.0 * c * L * L
    g_end = float(gz[-1])
    f0, f1 = float(f[0]), float(f[-1])
    monotone = bool(np.all(np.diff(gz) <= 1e-12))
    ok = (abs(f0) <= 1e-10 and abs(f1) <= 1e-10
          and float(np.max(f)) <= 1e-10
          and float(np.min(fpp)) >= -1e-10
          and monotone and g_end > 0.0
          and abs(g_end - g_end_closed) <= 1e-10)
    return ConvexityReport(f_at_zero=f0, f_at_one=f1,
                           max_f=float(np.max(f)),
                           min_f_second=float(np.min(fpp)),
                           g_monotone=monotone, g_at_end=g_end, ok=ok)


# ---------------------------------------------------------------------------
# quantum MaxCut minimax certificate


@dataclass(frozen=True)
class CertifyConfig:
    capacity_factor: float = 14.0 / 15.0
    theta_grid: float = 1e-3
    mu_grid: float = 1e-3
    s_grid: float = 1e-4
    refine_iters: int = 20

    def __post_init__(self):
        if not (0.0 < self.capacity_factor <= 1.0):
            raise InputError("capacity factor must lie in (0, 1]")
        for name in ("theta_grid", "mu_grid", "s_grid"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")


@dataclass(frozen=True)
class RatioCertificate:
    alpha: float
    argmax_theta: float
    argmax_mu: float
    worst_s: float
    worst_branch: str  # "pair_bound" or "product_bound"


class _BranchTables:
    """Adversary grids: s in [-1, 0) for the pair-bound branch and
    s in [0, 1/3) for the product-bound branch, with the overlap,
    clamp, and denominators precomputed."""

    def __init__(self, d: float, s_grid: float):
        s1 = np.arange(-1.0, 0.0, s_grid)
        s1 = np.unique(np.concatenate([s1, [-1.0 / 3.0]]))  # clamp kink
        s2 = np.arange(0.0, 1.0 / 3.0, s_grid)
        self.d = d
        self.s1, self.s2 = s1, s2
        self.F1 = rounded_overlap(s1)
        self.F2 = rounded_overlap(s2)
        self.q1 = np.maximum(-(1.0 + 3.0 * s1) / 2.0, 0.0)
        self.inv1 = 1.0 / (1.0 - 3.0 * s1)
        self.inv2 = 1.0 / (1.0 - 3.0 * s2)
        self.em1 = (1.0 + 3.0 * d * self.q1) * self.inv1
        self.em2 = self.inv2.copy()  # clamp is zero for s >= -1/3

    def pair_bound(self, theta: float) -> np.ndarray:
        """Per-edge ratio bound when both endpoints sit in pair states."""
        st, ct = math.sin(theta), math.cos(theta)
        gain = self.d * ct * (1.0 - self.F1 * (1.0 + ct)) * self.q1
        return (1.0 - self.F1 * st * st + gain) * self.inv1

    def single_bound(self, theta: float, s, F, q) -> np.ndarray:
        """Variant with one rescaled endpoint (ordering checks only)."""
        st, ct = math.sin(theta), math.cos(theta)
        gain = self.d * ct * (1.0 - F * (1.0 + ct)) * q
        return (1.0 - F * st + gain) / (1.0 - 3.0 * s)

    def product_bound(self, theta: float, which: int) -> np.ndarray:
        """Variant with neither endpoint rescaled (the s >= 0 branch)."""
        ct = math.cos(theta)
        if which == 1:
            F, q, inv = self.F1, self.q1, self.inv1
        else:
            F, q, inv = self.F2, 0.0, self.inv2
        gain = self.d * ct * (1.0 - F * (1.0 + ct)) * q
        return (1.0 - F + gain) * inv


def _theta_arrays(tbl: _BranchTables, theta: float):
    return tbl.pair_bound(theta), tbl.product_bound(theta, 2)


def _objective_cached(tbl: _BranchTables, a1: np.ndarray, a2: np.ndarray,
                      mu: float):
    b1 = mu * a1 + (1.0 - mu) * tbl.em1
    b2 = mu * a2 + (1.0 - mu) * tbl.em2
    i1 = int(np.argmin(b1))
    i2 = int(np.argmin(b2))
    if b1[i1] <= b2[i2]:
        return float(b1[i1]), float(tbl.s1[i1]), "pair_bound"
    return float(b2[i2]), float(tbl.s2[i2]), "product_bound"


def _objective(tbl: _BranchTables, theta: float, mu: float):
    a1, a2 = _theta_arrays(tbl, theta)
    return _objective_cached(tbl, a1, a2, mu)


def _best_mu(tbl: _BranchTables, theta: float, mu_grid: float) -> tuple:
    """Golden-section over the mixing weight (the objective is a
    minimum of affine functions of mu, hence concave), snapped onto the
    configured grid afterwards."""
    a1, a2 = _theta_arrays(tbl, theta)
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 0.0, 1.0
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc = _objective_cached(tbl, a1, a2, c)[0]
    fd = _objective_cached(tbl, a1, a2, d)[0]
    for _ in range(40):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = _objective_cached(tbl, a1, a2, c)[0]
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = _objective_cached(tbl, a1, a2, d)[0]
    mid = 0.5 * (a + b)
    best = None
    for mu in (math.floor(mid / mu_grid) * mu_grid,
               math.ceil(mid / mu_grid) * mu_grid):
        mu = min(max(mu, 0.0), 1.0)
        val, s, branch = _objective_cached(tbl, a1, a2, mu)
        if best is None or val > best[0]:
            best = (val, mu, s, branch)
    return best


def _verify_branch_claims(tbl: _BranchTables, thetas: np.ndarray) -> None:
    """Grid-verify the ordering of the three per-edge bounds and the
    floor of the s >= 0 branch; both are relied on by the simplified
    minimax."""
    if np.min(tbl.em2) < 1.0 - 1e-12:
        raise InvariantViolation("matching ratio dips below 1 at s >= 0")
    for theta in thetas:
        pm1 = tbl.pair_bound(theta)
        ps1 = tbl.single_bound(theta, tbl.s1, tbl.F1, tbl.q1)
        pp1 = tbl.product_bound(theta, 1)
        if np.any(pm1 - ps1 > 1e-10) or np.any(ps1 - pp1 > 1e-10):
            raise InvariantViolation("bound ordering fails for s < 0")
        pm2_pair = 1.0 - tbl.F2 * math.sin(theta) ** 2
        pm2_single = 1.0 - tbl.F2 * math.sin(theta)
        pm2_prod = 1.0 - tbl.F2
        if np.any(pm2_prod - pm2_single > 1e-10) or \
                np.any(pm2_single - pm2_pair > 1e-10):
            raise InvariantViolation("bound ordering fails for s >= 0")
        if np.min(tbl.product_bound(theta, 2)) < 1.0 - 1e-12:
            raise InvariantViolation("product bound dips below 1 at s >= 0")


def _refine_worst_s(tbl: _BranchTables, theta: float, mu: float,
                    s: float, branch: str) -> tuple[float, float]:
    """Local trisection in s around the grid argmin, to keep the
    reported minimum conservative."""
    d = tbl.d
    st, ct = math.sin(theta), math.cos(theta)

    def val(sv: float) -> float:
        F = rounded_overlap(sv)
        q = max(-(1.0 + 3.0 * sv) / 2.0, 0.0)
        inv = 1.0 / (1.0 - 3.0 * sv)
        if branch == "pair_bound":
            e = (1.0 - F * st * st + d * ct * (1.0 - F * (1.0 + ct)) * q) * inv
            em = (1.0 + 3.0 * d * q) * inv
        else:
            e = (1.0 - F + d * ct * (1.0 - F * (1.0 + ct)) * q) * inv
            em = (1.0 + 3.0 * d * q) * inv
        return mu * e + (1.0 - mu) * em

    lo, hi = (-1.0, 0.0) if branch == "pair_bound" else (0.0, 1.0 / 3.0)
    width = tbl.s1[1] - tbl.s1[0] if branch == "pair_bound" else \
        (tbl.s2[1] - tbl.s2[0] if tbl.s2.size > 1 else 1e-4)
    a = max(lo, s - width)
    b = min(hi - 1e-15, s + width)
    best_s, best_v = s, val(s)
    for _ in range(40):
        m1 = a + (b - a) / 3.0
        m2 = b - (b - a) / 3.0
        v1, v2 = val(m1), val(m2)
        if v1 < best_v:
            best_s, best_v = m1, v1
        if v2 < best_v:
            best_s, best_v = m2, v2
        if v1 <= v2:
            b = m2
        else:
            a = m1
    return best_s, best_v


def certify_qmc_ratio(cfg: CertifyConfig = CertifyConfig()
                      ) -> RatioCertificate:
    """Grid-with-refinement evaluation of the minimax ratio.

    Maximizes over the interpolation angle and the mixing weight the
    adversarial minimum over the edge-overlap parameter, split into the
    s < 0 branch (pair bound) and the s >= 0 branch (product bound).
    The clamp kink at s = -1/3 sits on the grid explicitly. Reported
    numbers are actually-evaluated points, never interpolations. Branch
    ordering and the s >= 0 floor are re-verified on the grid; a
    failure raises InvariantViolation.
    """
    tbl = _BranchTables(cfg.capacity_factor, cfg.s_grid)
    thetas = np.arange(0.0, math.pi / 2.0 + cfg.theta_grid, cfg.theta_grid)
    thetas = thetas[thetas <= math.pi / 2.0 + 1e-12]
    check_thetas = thetas[:: max(1, len(thetas) // 64)]
    _verify_branch_claims(tbl, check_thetas)

    best = None  # (alpha, theta, mu, s, branch)
    for theta in thetas:
        val, mu, s, branch = _best_mu(tbl, theta, cfg.mu_grid)
        if best is None or val > best[0]:
            best = (val, float(theta), mu, s, branch)

    alpha, theta, mu, s, branch = best
    dt = cfg.theta_grid
    dm = cfg.mu_grid
    for _ in range(cfg.refine_iters):
        dt *= 2.0 / 3.0
        dm *= 2.0 / 3.0
        for th in (theta - dt, theta, theta + dt):
            th = min(max(th, 0.0), math.pi / 2.0)
            for m in (mu - dm, mu, mu + dm):
                m = min(max(m, 0.0), 1.0)
                val, sv, br = _objective(tbl, th, m)
                if val > alpha:
                    alpha, theta, mu, s, branch = val, th, m, sv, br
    worst_s, refined = _refine_worst_s(tbl, theta, mu, s, branch)
    if refined < alpha:
        alpha = refined
    else:
        worst_s = s
    return RatioCertificate(alpha=alpha, argmax_theta=theta, argmax_mu=mu,
                            worst_s=worst_s, worst_branch=branch)


# ---------------------------------------------------------------------------
# externally supplied moment files


def parse_moments(text: str) -> dict[tuple[int, int], float]:
    """Parse per-edge overlap moments: lines of "u v s"."""
    out: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 'u v s', got {raw!r}")
        try:
            u, v, s = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise InputError(f"line {lineno}: could not parse {raw!r}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if (u, v) in out:
            raise InputError(f"line {lineno}: duplicate edge ({u},{v})")
        out[(u, v)] = s
    return out


def moment_upper_bound(g: Graph,
                       moments: dict[tuple[int, int], float]) -> float:
    """Optimal-energy upper bound sum_e w (1 - 3 s) / 2 from moments.

    Every edge needs a moment in [-1, 1/3]; larger values would make
    the per-edge bound vanish or go negative and are rejected.
    """
    total = 0.0
    for (u, v, w) in g.edges:
        if (u, v) not in moments:
            raise InputError(f"moment missing for edge ({u},{v})")
        s = moments[(u, v)]
        if not (-1.0 <= s <= 1.0 / 3.0):
            raise InputError(f"moment for edge ({u},{v}) out of [-1,1/3]: {s}")
        total += w * (1.0 - 3.0 * s) / 2.0
    return float(total)


def moment_matching_vector(g: Graph, moments: dict[tuple[int, int], float],
                           capacity_factor: float = 14.0 / 15.0
                           ) -> dict[tuple[int, int], float]:
    """Per-edge mass d ((1 - 3 s)/2 - 1)^+ induced by the moments.

    For genuine relaxation moments this vector lies in the integral
    matching polytope; callers check membership on small graphs.
    """
    out = {}
    for (u, v, _) in g.edges:
        if (u, v) not in moments:
            raise InputError(f"moment missing for edge ({u},{v})")
        gval = (1.0 - 3.0 * moments[(u, v)]) / 2.0
        out[(u, v)] = capacity_factor * max(gval - 1.0, 0.0)
    return out
