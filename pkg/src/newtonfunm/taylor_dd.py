"""Divided differences inside a cluster, computed from a local Taylor model.

Near a cluster with center ``c`` the function is replaced by

    h(x) = sum_{a=0}^{k+gamma} c_a (x - c)^a.

The divided difference of ``h`` over the shifted points ``xi_i .. xi_{i+m}``
(``xi = mu - c``) equals ``sum_{a>=m} c_a * H_{a-m}(xi_i, ..., xi_{i+m})``
where ``H_r`` is the complete homogeneous symmetric polynomial of degree r.
Nothing is divided by a difference of close points.
"""
import enum
import math
from typing import Protocol, Sequence

import numpy as np

from .errors import CoefficientUnavailable


class AnalyticFunction(Protocol):
    def value(self, lam: complex) -> complex: ...

    def taylor_coefficient(self, center: complex, alpha: int) -> complex: ...


class Exp:
    """``lam -> exp(t * lam)``; the default ``t = 1`` is the plain exponential."""

    def __init__(self, t=1.0):
        self.t = t

    def value(self, lam):
        return complex(np.exp(self.t * complex(lam)))

    def taylor_coefficient(self, center, alpha):
        return complex(np.exp(self.t * complex(center))) * self.t ** alpha / math.factorial(alpha)

    def taylor_coefficients(self, center, order):
        base = complex(np.exp(self.t * complex(center)))
        out, term = [], base
        for a in range(order + 1):
            out.append(term)
            term = term * self.t / (a + 1)
        return out

    def __repr__(self):
        return f"Exp(t={self.t!r})"


class Polynomial:
    """Polynomial with coefficients in ascending powers."""

    def __init__(self, coefficients):
        coeffs = [complex(c) for c in coefficients]
        if not coeffs:
            coeffs = [0j]
        self.coefficients = coeffs

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def value(self, lam):
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * lam + c
        return acc

    def taylor_coefficients(self, center, order):
        # repeated synthetic division by (x - center)
        work = list(self.coefficients)
        shifted = []
        for _ in range(len(work)):
            for i in range(len(work) - 2, -1, -1):
                work[i] += center * work[i + 1]
            shifted.append(work[0])
            work = work[1:]
        shifted += [0j] * max(0, order + 1 - len(shifted))
        return shifted[:order + 1]

    def taylor_coefficient(self, center, alpha):
        return self.taylor_coefficients(center, alpha)[alpha]

    def __call__(self, lam):
        return self.value(lam)

    def __repr__(self):
        return f"Polynomial({self.coefficients!r})"


def taylor_coefficients(f, center, order):
    """``[c_0, ..., c_order]`` of ``f`` about ``center``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    center = complex(center)
    if hasattr(f, "taylor_coefficients"):
        coeffs = list(f.taylor_coefficients(center, order))
    else:
        coeffs = [f.taylor_coefficient(center, a) for a in range(order + 1)]
    coeffs = [complex(c) for c in coeffs]
    if len(coeffs) != order + 1 or not all(np.isfinite(c) for c in coeffs):
        raise CoefficientUnavailable(f"{f!r} has no finite Taylor coefficients up to {order}")
    return coeffs


def complete_homogeneous(alpha: int, offsets: Sequence[complex]) -> complex:
    """Complete homogeneous symmetric polynomial of degree ``alpha``.

    Uses H_r(x_1..x_p) = H_r(x_1..x_{p-1}) + x_p * H_{r-1}(x_1..x_p), which
    needs only additions and multiplications.
    """
    return complete_homogeneous_all(alpha, offsets)[alpha]


def complete_homogeneous_all(max_alpha, offsets):
    """``[H_0, ..., H_max_alpha]`` of the same offsets."""
    if max_alpha < 0:
        raise ValueError("alpha must be >= 0")
    h = [1.0 + 0j] + [0j] * max_alpha
    for x in offsets:
        for r in range(1, max_alpha + 1):
            h[r] = h[r] + x * h[r - 1]
    return h


def principal_triangle(coefficients, offsets):
    """Divided-difference triangle of ``sum_a coefficients[a] * x**a``.

    ``offsets`` are the cluster points minus the expansion center, as complex
    numbers or ``mpmath.mpc``.  The coefficients may live in any ring that
    supports ``+`` and scaling by such a number.  ``tri[m][i]`` is the
    difference over offsets i..i+m.
    """
    k = len(offsets)
    degree = len(coefficients) - 1
    xi = list(offsets)
    tri = []
    for m in range(k):
        row = []
        for i in range(k - m):
            if m > degree:
                row.append(0 * coefficients[0])
                continue
            sig = complete_homogeneous_all(degree - m, xi[i:i + m + 1])
            acc = coefficients[m]
            for a in range(m + 1, degree + 1):
                acc = acc + coefficients[a] * sig[a - m]
            row.append(acc)
        tri.append(row)
    return tri


def principal_dd(f, cluster_points, gamma=5, center=None):
    """Principal divided differences of ``f`` over one cluster.

    ``f`` is replaced by its Taylor polynomial of degree ``k + gamma`` about
    the mean of the points (or ``center`` if given).
    """
    pts = [complex(z) for z in cluster_points]
    k = len(pts)
    if k < 1:
        raise ValueError("cluster must contain at least one point")
    if gamma < -1:
        raise ValueError("gamma must be >= -1")
    if center is None:
        center = complex(np.mean(pts))
    coeffs = taylor_coefficients(f, center, k + gamma)
    return principal_triangle(coeffs, [z - center for z in pts])


class EntryKind(enum.Enum):
    PRINCIPAL = "principal"
    NON_PRINCIPAL = "non_principal"
    CROSS = "cross"


def classify_entry(i, m, partition, cluster=None):
    """Classify table entry (i, m), the difference over points i..i+m.

    Relative to ``cluster`` (default: the cluster holding point ``i``) the
    entry is principal when both ends lie in it, non-principal when it starts
    inside and ends beyond it, and cross otherwise.
    """
    n = partition.n
    if i < 0 or m < 0 or i + m >= n:
        raise IndexError(f"entry ({i}, {m}) outside a table of size {n}")
    if cluster is None:
        cluster = partition.cluster_of(i)
    if cluster.start <= i < cluster.stop:
        return EntryKind.PRINCIPAL if i + m < cluster.stop else EntryKind.NON_PRINCIPAL
    return EntryKind.CROSS
