"""
B-terminated solutions
======================

When alpha sits on the lattice 2(2 a_j + j + lam) (or its mirror
-2(2 a_j + j + lam) - 1) every other eta-chain stops after finitely many
terms.  The mu-direction is still infinite.
"""

from lame3trf.frobenius import LameParams, eval_series, frobenius_coefficients
from lame3trf.hypergeo import nonpositive_integer
from lame3trf.series3trf import (Branch, Type1Quantization, lame_series, level_limits, lf_poly_type1,
                                 quantized_alpha)

cases = [
    Type1Quantization(0, 2),
    Type1Quantization(1, 1, Branch.MINUS),
    Type1Quantization(2, 1, Branch.PLUS, 0.5),
]
for q in cases:
    alpha = quantized_alpha(q)
    p = LameParams(0.6, 1.1, alpha)
    print(f"\n{q.branch.value} branch, j={q.j}, a_j={q.alpha_j}, lam={q.lam}: alpha = {alpha}")
    print("  floor-rule caps per level:", level_limits(q, 5))

    # an upper Pochhammer parameter -m stops the level-k chain at index m
    series = lame_series(p, q.lam)
    stops = []
    for k in range(6):
        lv = series.level(k)
        ends = [m for m in (nonpositive_integer(lv.a), nonpositive_integer(lv.b)) if m is not None]
        stops.append(min(ends) if ends else "-")
    print("  chain stops per level:        ", stops)

    for xi in (0.1, 0.3):
        val = lf_poly_type1(p, q, 30, xi)
        ref = eval_series(frobenius_coefficients(p, q.lam, 200), xi)
        print(f"  xi={xi}: {val:.15f}  (recurrence {ref:.15f})")
