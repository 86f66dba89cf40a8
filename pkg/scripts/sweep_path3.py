#!/usr/bin/env python3
"""Sweep the rotation scale on the 3-vertex path and report the peak.

The exact simulated energy of the rotation circuit passes through a
maximum close to the square of the golden ratio; the certified bound
stays below it and tops out near the default scale.
"""

import math

from qmatch.epr_algo import EprRunConfig, run_epr
from qmatch.graph import generate


def main() -> None:
    g = generate("path", 3)
    print(f"{'theta':>7s} {'gamma':>8s} {'exact':>10s} {'certified':>10s}")
    best = (0.0, 0.0)
    theta = 0.01
    while theta <= 1.2 + 1e-9:
        rep = run_epr(g, EprRunConfig(theta=theta))
        gamma = max(rep.gammas.values())
        if rep.exact_energy > best[1]:
            best = (theta, rep.exact_energy)
        print(f"{theta:7.3f} {gamma:8.4f} {rep.exact_energy:10.6f} "
              f"{rep.certified_lower_bound:10.6f}")
        theta += 0.01
    phi = (1 + math.sqrt(5)) / 2
    print(f"\npeak exact energy {best[1]:.6f} at theta {best[0]:.3f} "
          f"(phi^2 = {phi * phi:.6f})")


if __name__ == "__main__":
    main()
