"""
Nested sums against the plain recurrence
========================================

Both solutions about xi = 0 come from c_{n+1} = A_n c_n + B_n c_{n-1}.
Grouping the terms by the number of A-steps gives the nested sum; expanding
it back into powers of xi must give the same coefficients.
"""

import numpy as np

from lame3trf.frobenius import LameParams, eval_series, frobenius_coefficients
from lame3trf.series3trf import Kind, SolutionSpec, expand_to_xi_coeffs, lf_infinite, ls_infinite

p = LameParams(rho=0.5, h=1.3, alpha=2.7)

# each A-step raises the xi power by one, so orders up to m need m outer levels
for n_mu in (8, 12):
    spec = SolutionSpec(Kind.FIRST, n_mu=n_mu, n_inner=12)
    d = expand_to_xi_coeffs(p, spec, 12).coeffs
    c = frobenius_coefficients(p, 0.0, 12).coeffs
    rel = np.abs(d - c) / np.abs(c)
    print(f"n_mu={n_mu:2d}: worst relative coefficient error {rel.max():.2e} (order {rel.argmax()})")

# values: the nested sums converge quickly for small xi
deep = SolutionSpec(n_mu=30, n_inner=30)
print("\n   xi      first kind         recurrence")
for xi in (0.05, 0.1, 0.2, 0.3):
    print(f"{xi:5.2f}  {lf_infinite(p, deep, xi):.15f}  {eval_series(frobenius_coefficients(p, 0.0, 200), xi):.15f}")

print("\n   xi      second kind        recurrence")
for xi in (0.05, 0.1, 0.2, 0.3):
    print(f"{xi:5.2f}  {ls_infinite(p, deep, xi):.15f}  {eval_series(frobenius_coefficients(p, 0.5, 200), xi):.15f}")
