#!/usr/bin/env python3
"""
main.py – Entry point for the weierstrass-int command line.

Usage
-----
    # Reduce the worked example over g2 = 0, g3 = -4
    python main.py reduce --g2 0 --g3 -4 "(p'-4)/p^2"

    # Integrate a power of p, with zeta when needed
    python main.py integrate --g2 4 --g3 1 "p^4"

    # Table of integrals of p^n with a CSV export
    python main.py power-table --g2 4 --g3 1 --n 6 --csv data

    # q with nonconstant coefficients
    python main.py split --q "4*t^3 - z*t" --assume-hypothesis "1/(p*(4*p^2 - z))"
"""

from __future__ import annotations

import sys

from weierstrass_int.cli import main

if __name__ == "__main__":
    sys.exit(main())
