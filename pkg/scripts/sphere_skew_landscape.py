"""Skew residual of geodesic spheres over an (r, k) grid.

The computed residual is compared with |cot r - k| cot^2 r, whose zero set
is the curve cot r = k. Prints the largest gap and the grid points where the
residual vanishes.

    python3 scripts/sphere_skew_landscape.py --nr 25 --nk 25
"""

import argparse
import math

import numpy as np

from gtwlab.gtw import TorsionFamily, condition_residuals
from gtwlab.hypersurface_models import geodesic_sphere


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nr", type=int, default=25)
    ap.add_argument("--nk", type=int, default=25)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0, help="jitter for r, 0 disables it")
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    cots = np.linspace(0.2, 4.0, args.nr)
    if args.seed:
        cots = cots + rng.uniform(-0.01, 0.01, size=cots.shape)
    ks = np.unique(np.concatenate([np.linspace(-4, 4, args.nk), cots[::4]]))
    ks = ks[np.abs(ks) >= 0.01]

    gap, zeros = 0.0, []
    for c in cots:
        mdl = geodesic_sphere(math.atan2(1.0, c), args.m, r_min=0.01)
        for k in ks:
            s = condition_residuals(TorsionFamily(mdl, float(k))).skew_residual
            gap = max(gap, abs(s - abs(c - k) * c * c))
            if s <= 1e-9:
                zeros.append((float(c), float(k)))
    print(f"{len(cots)} radii x {len(ks)} k values, max |computed - closed form| = {gap:.3g}")
    print(f"{len(zeros)} zero cells; all on cot r = k: {all(abs(c - k) <= 1e-9 for c, k in zeros)}")


if __name__ == "__main__":
    main()
