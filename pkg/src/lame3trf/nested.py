"""Dynamic-programming evaluator for nested three-term-recurrence sums.

A solution of c_{n+1} = A_n c_n + B_n c_{n-1} regrouped by the number of
A-steps has the shape

    y = sum_n  sum_{i_0 <= i_1 <= ... <= i_n}
            P_0(i_0) F_0(i_0) P_1(i_0, i_1) F_1(i_1) ... P_n(i_{n-1}, i_n)
            * u^n * v^{i_n},

where ``u`` is the variable attached to A-steps, ``v`` the one attached to
B-steps, F_k the A-factor at level k and P_k a Pochhammer ratio

    P_k(i, j) = prod_{m=i}^{j-1} (a_k + m)(b_k + m) / ((c_k + m)(d_k + m)).

Ratios are always built as running products over the index gap, so a
terminating upper parameter simply zeroes the tail and nothing overflows.
The cost is O(n_outer * n_inner) per evaluation.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class Level:
    """Upper (a, b) and lower (c, d) Pochhammer parameters of one level."""

    a: float
    b: float
    c: float
    d: float

    def ratios(self, n):
        m = np.arange(n)
        return (self.a + m) * (self.b + m) / ((self.c + m) * (self.d + m))


@dataclass(frozen=True)
class NestedSeries:
    """Level parameters and A-factors of one nested-sum family.

    ``level(k)`` returns the :class:`Level` of level k and
    ``afactor(k, i)`` the A-factor at level k evaluated on an index array.
    """

    level: Callable[[int], Level]
    afactor: Callable[[int, np.ndarray], np.ndarray]


def level_tables(series, u, v, n_outer, n_inner, limits=None):
    """Table S[k, i]: sum over all chains ending at level k with last index i.

    ``limits`` optionally caps the index range per level (entries beyond the
    cap are zero); ``None`` entries mean "no cap beyond n_inner".
    """
    idx = np.arange(n_inner + 1)
    S = np.zeros((n_outer + 1, n_inner + 1), dtype=np.result_type(u, v, float))
    for k in range(n_outer + 1):
        r = series.level(k).ratios(n_inner) * v
        if k == 0:
            feed = np.zeros(n_inner + 1, dtype=S.dtype)
            feed[0] = 1.0
        else:
            feed = S[k - 1] * series.afactor(k - 1, idx) * u
        row = S[k]
        row[0] = feed[0]
        for i in range(1, n_inner + 1):
            row[i] = row[i - 1] * r[i - 1] + feed[i]
        cap = None if limits is None else limits[k]
        if cap is not None:
            row[max(cap + 1, 0):] = 0.0
    return S


def blocks(series, u, v, n_outer, n_inner, limits=None):
    """Partial values y_0, ..., y_{n_outer}, one per number of A-steps."""
    return level_tables(series, u, v, n_outer, n_inner, limits).sum(axis=1)


def evaluate(series, u, v, n_outer, n_inner, limits=None):
    return blocks(series, u, v, n_outer, n_inner, limits).sum()


def power_coefficients(series, u_coef, v_coef, n_outer, n_inner, order, limits=None):
    """Coefficients d_0..d_order of the nested sum as a power series in x.

    Here u = u_coef * x and v = v_coef * x^2, so the (k, i) cell of the table
    contributes to x^(k + 2 i) alone.
    """
    S = level_tables(series, u_coef, v_coef, n_outer, n_inner, limits)
    d = np.zeros(order + 1, dtype=S.dtype)
    for k in range(min(n_outer, order) + 1):
        i_max = min(n_inner, (order - k) // 2)
        d[k:k + 2 * i_max + 1:2] += S[k, :i_max + 1]
    return d


def chain_sum(series, u, v, indices: Sequence[int]):
    """Single explicit chain value, used by tests to cross-check the tables."""
    a0 = series.level(0)
    total = 1.0
    for m in range(indices[0]):
        total *= (a0.a + m) * (a0.b + m) / ((a0.c + m) * (a0.d + m)) * v
    for k in range(1, len(indices)):
        total *= series.afactor(k - 1, np.array([indices[k - 1]]))[0] * u
        lv = series.level(k)
        for m in range(indices[k - 1], indices[k]):
            total *= (lv.a + m) * (lv.b + m) / ((lv.c + m) * (lv.d + m)) * v
    return total
