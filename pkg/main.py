"""
Exact products of linear differential operators
===============================================

Command-line harness for verifying and benchmarking multiplication algorithms
in K[X]<d> and K[X]<theta> over prime fields and the rationals.

Subcommands:
------------
1. verify: check every algorithm against the naive product
2. bench: time runs and count ground-field operations and block products
3. convert: rewrite a JSON operator document between d and theta
"""

import sys

from app.bench_cli import main


if __name__ == "__main__":
    sys.exit(main())
