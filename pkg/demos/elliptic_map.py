"""
From z to xi
============

The series live in xi = sn^2(z, rho).  This walks one quarter period and
shows the map is monotone from 0 up to 1.
"""

import numpy as np

from lame3trf.elliptic import complete_K, jacobi_sn, xi_of_z

rho = 0.5
K = complete_K(rho)
print(f"K({rho}) = {K:.15f}")

# sn rises from 0 at z = 0 to 1 at the quarter period
for frac in np.linspace(0, 1, 6):
    z = frac * K
    print(f"z = {frac:.1f} K   sn = {jacobi_sn(z, rho): .12f}   xi = {xi_of_z(z, rho):.12f}")

# period 4K, odd in z
z = 0.37
print("sn(z + 4K) - sn(z) =", jacobi_sn(z + 4 * K, rho) - jacobi_sn(z, rho))
print("sn(-z) + sn(z)     =", jacobi_sn(-z, rho) + jacobi_sn(z, rho))
