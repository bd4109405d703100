"""Survey of resonant Lie algebras over random multipliers built from Gaussian primes.

Prints one row per lambda: dim g_lambda, reduced dim, nilradical size,
h^0 = h^1 of d_lambda, and the algebraic dimension.

    python3 scripts/resonance_survey.py --count 20 --seed 1
"""

import argparse
import random
from fractions import Fraction

from hopfkit.contraction import ResonantMap, tangent_cohomology
from hopfkit.exact import GR
from hopfkit.invariants import algebraic_dimension
from hopfkit.lie_algebra import build_model
from hopfkit.resonance import Multipliers

BASES = [GR(Fraction(1, 2), Fraction(1, 2)), GR(Fraction(1, 3)), GR(Fraction(2, 5), Fraction(1, 5)), GR(0, Fraction(1, 2))]


def sample(rng, n):
    b1, b2 = rng.sample(BASES, 2)
    out = []
    for _ in range(n):
        a, b = rng.randint(0, 2), rng.randint(0, 1)
        out.append(b1 ** max(a, 1 - b) * b2**b)
    return Multipliers(tuple(out))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    header = f"{'lambda':<48} {'dim':>4} {'red':>4} {'nil':>4} {'h0':>4} {'a(W)':>5}"
    print(header)
    print("-" * len(header))
    for _ in range(args.count):
        lam = sample(rng, rng.randint(2, args.max_n))
        model = build_model(lam)
        h = tangent_cohomology(ResonantMap(lam)).h0
        a = algebraic_dimension(lam).rank
        label = "(" + ", ".join(str(x) for x in lam) + ")"
        print(f"{label:<48} {model.dim:>4} {model.reduced_dim:>4} {len(model.nilradical):>4} {h:>4} {a:>5}")


if __name__ == "__main__":
    main()
