"""Approximate lp-norm optimization versus the exact optimum.

Norms are compared through integer p-th powers; the printed guarantee is on
that powered quantity.
"""

import math
import random

from nonlinear_matching import MAX, MIN, brute_force_solve, lp_norm, make_instance, max_norm, min_norm
from nonlinear_matching.core import norm_power

rng = random.Random(7)
n, d = 5, 3
inst = make_instance(n, d, [[[rng.randint(0, 3) for _ in range(n)] for _ in range(n)] for _ in range(d)])

for p in (1, 2, math.inf):
    lo, hi = min_norm(inst, p), max_norm(inst, p)
    _, ymin = brute_force_solve(inst, lp_norm(p, MIN))
    _, ymax = brute_force_solve(inst, lp_norm(p, MAX))
    print(f"p={p}: min_norm {lo.projection} P={lo.powered_value} (opt P={norm_power(ymin, p)}, "
          f"factor <= {lo.powered_ratio});  max_norm {hi.projection} P={hi.powered_value} "
          f"(opt P={norm_power(ymax, p)}, factor <= {hi.powered_ratio})")
