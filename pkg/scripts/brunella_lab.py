"""Build the glued lcK potential for a few contractions and report the checks.

Writes per-point minimum Levi eigenvalues to CSV if --csv-dir is given.

    python3 scripts/brunella_lab.py --samples 2000 --csv-dir /tmp/lab
"""

import argparse
import csv
import json
from fractions import Fraction
from pathlib import Path

from hopfkit.contraction import ResonantMap
from hopfkit.metrics import build_potential, precondition_domain, verify_homothety, verify_positivity
from hopfkit.resonance import Multipliers

F = Fraction
CASES = {
    "iso": ResonantMap.diagonal([F(1, 2), F(1, 2)]),
    "aniso": ResonantMap.diagonal([F(1, 2), F(1, 3)]),
    "resonant": ResonantMap(Multipliers.of(F(1, 4), F(1, 2)), ((0, (0, 2), 1),)),
    "resonant_big": ResonantMap(Multipliers.of(F(1, 4), F(1, 2)), ((0, (0, 2), 40),)),
    "dim3": ResonantMap(Multipliers.of(F(1, 8), F(1, 4), F(1, 2)), ((0, (0, 1, 1), 2), (1, (0, 0, 2), -1))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--step", type=float, default=1e-4)
    ap.add_argument("--margin", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv-dir", default=None)
    args = ap.parse_args()
    rows = []
    for name, g in CASES.items():
        gp, mu = precondition_domain(g, seed=args.seed)
        pot = build_potential(gp, margin=args.margin, seed=args.seed, dilation=mu)
        pts = pot.annulus_samples(args.samples, seed=args.seed)
        pos = verify_positivity(pot.psi, pts, h=args.step)
        hom = verify_homothety(pot, h=args.step)
        sp = pot.spec
        rows.append({
            "case": name, "dilation": str(mu[0]) if len(set(mu)) == 1 else [str(x) for x in mu],
            "s": round(sp.s, 5), "A": round(sp.A, 4), "c": round(sp.c, 4), "eta": round(sp.eta, 5),
            "min_eig": pos.min_eigenvalue, "smooth_err": pos.max_smoothness_error,
            "homothety_err": hom.max_relative_error, "passed": pos.passed and hom.max_relative_error < 1e-3,
        })
        if args.csv_dir:
            out = Path(args.csv_dir)
            out.mkdir(parents=True, exist_ok=True)
            with open(out / f"{name}.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["radius", "min_eig"])
                for z, e in zip(pts, pos.eigenvalues):
                    w.writerow([float((abs(z) ** 2).sum() ** 0.5), float(e)])
    for r in rows:
        print(json.dumps(r))


if __name__ == "__main__":
    main()
