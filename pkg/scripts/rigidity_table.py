"""Table of the symmetric rigidity constructions: σ2 before/after and the tooth λ1."""
import argparse
import itertools

from steklov.curated import symmetric_pair
from steklov.spectral import lambda1, steklov_spectrum
from steklov.theorems import verify_rigidity_full, verify_rigidity_sigma2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--l", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--t", type=int, nargs="+", default=[1, 2, 3, 4])
    args = ap.parse_args()

    print(f"{'r':>2} {'l':>2} {'t':>2} {'sigma2(G)':>10} {'sigma2(G~)':>11} {'lambda1':>8}  equal  full  sigma2")
    for r, l, t in itertools.product(args.r, args.l, args.t):
        p = symmetric_pair(r, l, t)
        s_base = steklov_spectrum(p.base).sigma(2)
        s_amb = steklov_spectrum(p.ambient).sigma(2)
        lam = lambda1(p.tooth, {p.root})
        full = verify_rigidity_full(p.ambient, p.base)
        s2 = verify_rigidity_sigma2(p.ambient, p.base)
        print(
            f"{r:>2} {l:>2} {t:>2} {s_base:10.6f} {s_amb:11.6f} {lam:8.4f}  "
            f"{str(abs(s_amb - s_base) < 1e-8):5s}  {full.verdict:4s}  {s2.verdict}"
        )


if __name__ == "__main__":
    main()
