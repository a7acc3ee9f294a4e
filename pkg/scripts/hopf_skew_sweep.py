"""Sweep k and compare the listed skew-symmetric Hopf solutions with direct residuals.

For each k the script builds the tube with cot r = k (listed as a solution
when k >= 2) and the geodesic sphere with cot r = k (listed only at k = 1),
then prints their directly computed skew residuals side by side.

    python3 scripts/hopf_skew_sweep.py --kmin 0.5 --kmax 6 --steps 12
"""

import argparse
import math

import numpy as np

from gtwlab.case_analysis import hopf_skew_trace
from gtwlab.gtw import TorsionFamily, condition_residuals
from gtwlab.hypersurface_models import geodesic_sphere, tube_a2


def skew(model, k):
    return condition_residuals(TorsionFamily(model, k)).skew_residual


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmin", type=float, default=0.5)
    ap.add_argument("--kmax", type=float, default=6.0)
    ap.add_argument("--steps", type=int, default=12)
    ap.add_argument("--m", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'k':>8} {'listed':>8} {'tube skew':>14} {'sphere skew':>14} {'(k^2+1)/k^3':>14}")
    for k in np.linspace(args.kmin, args.kmax, args.steps):
        k = float(k)
        r = math.atan2(1.0, k)
        listed = [c.branch for c in hopf_skew_trace(k, m=args.m).candidates if c.claimed_solution]
        tube = skew(tube_a2(r, 1, args.m, r_min=0.01), k)
        sphere = skew(geodesic_sphere(r, args.m, r_min=0.01), k)
        # lambda = -1/k, alpha = k - 1/k: |(lambda - k)(1 + alpha lambda)| = (k^2 + 1) / k^3
        closed = (k * k + 1) / k**3
        print(f"{k:8.4f} {len(listed):8d} {tube:14.6g} {sphere:14.3g} {closed:14.6g}")


if __name__ == "__main__":
    main()
