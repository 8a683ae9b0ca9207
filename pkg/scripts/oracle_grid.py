"""Print the eigensolver error against every closed-form family in the grid."""
import argparse

import numpy as np

from steklov import families
from steklov.spectral import steklov_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=families.FAMILIES, help="restrict to one family")
    ap.add_argument("--worst", type=int, default=10, help="how many of the largest errors to list")
    args = ap.parse_args()

    rows = []
    for name, params in families.oracle_grid():
        if args.family and name != args.family:
            continue
        g, oracle = families.make_family(name, params)
        err = float(np.max(np.abs(steklov_spectrum(g).eigenvalues - oracle.sigma)))
        rows.append((err, name, params, g.n))
    rows.sort(key=lambda r: -r[0])
    print(f"{len(rows)} graphs, max error {rows[0][0]:.2e}")
    for err, name, params, n in rows[: args.worst]:
        print(f"{err:10.2e}  {name:13s} n={n:<4d} {params}")


if __name__ == "__main__":
    main()
