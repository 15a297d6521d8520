"""
The one-A-step block as an integral
===================================

For the polynomial family the mu^1 block is a double sum; it can also be
written as two Euler-type integrals and a contour integral around v = 0.
Gauss-Legendre handles t and s, the trapezoid rule handles the circle.
"""

from lame3trf.frobenius import LameParams
from lame3trf.integralform import QuadratureSpec, y1_integral, y1_series_reference
from lame3trf.series3trf import Branch, Type1Quantization, quantized_alpha

q = Type1Quantization(2, 1, Branch.PLUS, 0.5)
p = LameParams(0.6, -2.1, quantized_alpha(q))
xi = 0.15

ref = y1_series_reference(p, q, xi)
print(f"double sum      {ref:.15f}")
for n_gl, n_contour in ((16, 64), (32, 128), (64, 256)):
    val = y1_integral(p, q, xi, QuadratureSpec(n_gl, n_contour))
    print(f"{n_gl:3d} x {n_gl:3d} x {n_contour:3d}  {val:.15f}   rel err {abs(val - ref) / abs(ref):.1e}")

# Cauchy: any radius inside the annulus of analyticity gives the same value
for r in (0.3, 0.5, 0.7):
    print(f"radius {r}: {y1_integral(p, q, xi, QuadratureSpec(contour_radius=r)):.15f}")
