"""Run the coding-difference sweep over small components.

    python demos/sweep.py [max_period] [exponent]

checks every component of period <= max_period (default 5) against the
angles k/(2^e - 1) and k/2^e (default e = 10).
"""

import sys
import time
from fractions import Fraction

from pseudomonodromy.components import pair_periodic_angles
from pseudomonodromy.verify import corollary_sweep

max_period = int(sys.argv[1]) if len(sys.argv) > 1 else 5
e = int(sys.argv[2]) if len(sys.argv) > 2 else 10

pool = pair_periodic_angles(max_period)
angles = sorted({Fraction(k, 2**e - 1) for k in range(2**e - 1)} | {Fraction(k, 2**e) for k in range(2**e)})

t = time.perf_counter()
cases, failures = corollary_sweep(pool, max_period, angles)
print(f"{cases} cases, {len(failures)} failures, {time.perf_counter() - t:.1f} s")
for f in failures[:20]:
    print(" ", f)
