"""Distance of the propagated momentum density from the Raman-Nath comb versus epsilon.

Prints one row per epsilon for the preset 3a parameters, for both the
linearized and the sinusoidal potential.  tv_analytic compares with the closed
form; tv_raman_nath compares with the epsilon = 0 propagation of the same
potential.

    python3 scripts/oracle_scan.py --eps 0 1e-6 1e-4 1e-3 3e-3 1e-2
"""

import argparse

from dressedwave.cavity import fock
from dressedwave.dressed import PhysicalParams
from dressedwave.oracle import raman_nath_check


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eps", type=float, nargs="+", default=[0.0, 1e-6, 1e-4, 1e-3, 3e-3, 1e-2])
    parser.add_argument("--d", type=float, default=1.0)
    parser.add_argument("--gt", type=float, default=50.0)
    parser.add_argument("--k-dx", type=float, default=1.0)
    args = parser.parse_args()

    params = PhysicalParams.from_d(args.d, args.gt)
    print(f"{'potential':<11}{'epsilon':>10}{'tv_analytic':>14}{'tv_raman_nath':>15}{'dt':>11}")
    for linearized in (True, False):
        rows = raman_nath_check(params, fock(0), "A", args.k_dx, sorted(args.eps), linearized=linearized)
        for row in rows:
            print(f"{'linear' if linearized else 'sin(kx)':<11}{row['epsilon']:>10.1e}"
                  f"{row['tv_analytic']:>14.3e}{row['tv_raman_nath']:>15.3e}{row['dt']:>11.2e}")


if __name__ == "__main__":
    main()
