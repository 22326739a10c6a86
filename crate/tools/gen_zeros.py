#!/usr/bin/env python3
"""Write the first N zeta zero ordinates, one per line, 12 decimals.

Usage: gen_zeros.py N OUT
"""
import sys
from decimal import Decimal

import mpmath


def main():
    n = int(sys.argv[1])
    out = sys.argv[2]
    mpmath.mp.dps = 20
    with open(out, "w") as fh:
        for k in range(1, n + 1):
            gamma = Decimal(str(mpmath.zetazero(k).imag))
            fh.write("{}\n".format(gamma.quantize(Decimal("1e-12"))))
            fh.flush()


if __name__ == "__main__":
    main()
