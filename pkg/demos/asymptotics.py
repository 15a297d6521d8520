"""
Where the series converges
==========================

For large n the recurrence settles to c_{n+1} = (1+rho^2) c_n - rho^2 c_{n-1},
whose generating function is 1/((1 - xi)(1 - rho^2 xi)).  The series about
xi = 0 converges for xi < 1.
"""

import numpy as np

from lame3trf.asymptotics import (convergence_domain, lame_asymptotic_limit, lame_asymptotic_small_rho,
                                  small_rho_domain, tail_generating_sum)
from lame3trf.frobenius import LameParams, recurrence_coeffs

p = LameParams(0.5, 1.3, 2.7)
for n in (10, 50, 200, 1000):
    A, B = recurrence_coeffs(p, 0.0, n)
    print(f"n={n:5d}  A_n - (1+rho^2) = {A - 1.25: .2e}   B_n + rho^2 = {B + 0.25: .2e}")

print("\n  xi   limit      tail sum   small-rho form   inside")
for xi in np.linspace(0, 0.9, 7):
    small = f"{lame_asymptotic_small_rho(p, xi):9.5f}" if small_rho_domain(xi, 0.5).inside else "        -"
    print(f"{xi:4.2f}  {lame_asymptotic_limit(p, xi):9.5f}  {tail_generating_sum(0.5, xi):9.5f}"
          f"  {small}       {convergence_domain(xi, 0.5).inside}")

# the small-rho form has a smaller region
rho = 0.1
edge = 1 / (1 + rho ** 2)
print(f"\nrho={rho}: small-rho region ends at xi={edge:.6f};",
      "0.9900 inside:", small_rho_domain(0.99, rho).inside,
      " 0.9901 inside:", small_rho_domain(0.9901, rho).inside)
