"""
Nine local solutions
====================

The equation in xi is a Heun equation, so each Heun transformation gives
another local solution.  Each one lives where its own variable is small;
the residual of the z-form equation checks it.
"""

from scipy.optimize import brentq

from lame3trf.elliptic import complete_K, xi_of_z
from lame3trf.errors import DomainError
from lame3trf.frobenius import LameParams, ode_residual_xi_fd, ode_residual_z
from lame3trf.heunlocal import DESCRIPTORS, Regime, heun_asymptotic, heun_domain, local_solution

p = LameParams(0.5, 1.3, 2.7)
points = {1: 0.2, 2: 0.2, 3: 0.8, 4: 0.8, 5: 10.0, 6: 0.3, 7: 0.3, 8: 0.9, 9: 0.9}

for d in DESCRIPTORS:
    xi = points[d.id]
    f = lambda x, d=d: local_solution(d, p, x)
    try:
        val = f(xi)
    except DomainError as exc:
        print(f"{d.id}: {exc}")
        continue
    if xi < 1:
        z = brentq(lambda t: xi_of_z(t, p.rho) - xi, 0, complete_K(p.rho))
        res = ode_residual_z(f, p, z)
    else:
        res = ode_residual_xi_fd(f, p, xi)
    margin = heun_domain(d, Regime.GENERIC, xi, p.rho).margin
    limit = heun_asymptotic(d, Regime.GENERIC, p, xi)
    print(f"{d.id}: variable {d.variable:14s} xi={xi:5.2f} value={val: .10f} "
          f"residual={res: .1e} margin={margin:.3f} limit={limit:.4f}")
    for key, fix in d.corrections.items():
        print(f"    corrected {key}: {fix.note}")
