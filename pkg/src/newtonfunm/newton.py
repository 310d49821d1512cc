"""Approximate Newton interpolating polynomial and its evaluation at matrices.

The pipeline for ``f(A)``:

1. split the eigenvalues into delta-chain clusters and reorder them so that
   each cluster is contiguous;
2. per cluster, compute the in-cluster divided differences from the Taylor
   model of ``f`` about the cluster mean;
3. fill the rest of the table by the ordinary recurrence (all of those
   denominators are at least ``delta``);
4. evaluate the Newton form with the first column as coefficients.
"""
from dataclasses import dataclass
from numbers import Number
from typing import Callable

import numpy as np

from .clustering import DEFAULT_DELTA, DEFAULT_GAMMA, reorder_spectrum, split_clusters
from .divided_diff import merge_principal
from .errors import DimensionMismatch
from .linalg import as_matrix, as_vector
from .taylor_dd import principal_triangle, taylor_coefficients


@dataclass(frozen=True)
class FunmParams:
    delta: float = DEFAULT_DELTA
    gamma: int = DEFAULT_GAMMA

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.gamma < -1:
            raise ValueError("gamma must be >= -1")


@dataclass(frozen=True)
class NewtonPolynomial:
    """``p(x) = c_0 + c_1 (x - mu_0) + c_2 (x - mu_0)(x - mu_1) + ...``"""

    points: tuple
    coefficients: tuple
    partition: object = None

    def __post_init__(self):
        if len(self.points) != len(self.coefficients) or not self.points:
            raise ValueError("need the same positive number of points and coefficients")

    @property
    def n(self):
        return len(self.points)

    def __call__(self, lam):
        return eval_scalar(self, lam)


def newton_coefficients(eigenvalues, params: FunmParams,
                        cluster_coefficients: Callable, scalar=complex):
    """Cluster, reorder and build the merged table.

    ``cluster_coefficients(index, cluster)`` returns the Taylor coefficients
    ``c_0 .. c_{k+gamma}`` of the local model about ``cluster.center``.
    Points and offsets are converted with ``scalar`` (e.g. to ``mpmath.mpc``
    for extended precision).  Returns ``(points, partition, first_column)``
    with the points in cluster-contiguous order.
    """
    partition = split_clusters(eigenvalues, params.delta, params.gamma)
    spectrum = reorder_spectrum(eigenvalues, partition)
    pts = [scalar(complex(z)) for z in spectrum.values]
    triangles = []
    for j, cl in enumerate(partition.clusters):
        center = scalar(cl.center)
        offsets = [z - center for z in pts[cl.start:cl.stop]]
        triangles.append(principal_triangle(cluster_coefficients(j, cl), offsets))
    return pts, partition, merge_principal(pts, partition, triangles).first_column


def build_newton(f, eigenvalues, params: FunmParams = FunmParams()) -> NewtonPolynomial:
    points, partition, column = newton_coefficients(
        eigenvalues, params,
        lambda j, cl: taylor_coefficients(f, cl.center, cl.taylor_degree))
    return NewtonPolynomial(points=tuple(points), coefficients=tuple(column),
                            partition=partition)


def eval_scalar(p: NewtonPolynomial, lam):
    c, mu = p.coefficients, p.points
    acc = c[-1]
    for j in range(p.n - 2, -1, -1):
        acc = acc * (lam - mu[j]) + c[j]
    return acc


def eval_matrix(p: NewtonPolynomial, a):
    """``p(A)`` by the nested Newton-basis Horner scheme (n - 1 products)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {a.shape}")
    eye = np.eye(a.shape[0], dtype=complex)
    c, mu = p.coefficients, p.points
    out = c[-1] * eye
    for j in range(p.n - 2, -1, -1):
        out = out @ a - mu[j] * out + c[j] * eye
    return out


def _is_numeric(coeffs):
    return all(isinstance(c, Number) for c in coeffs)


def eval_matrix_vector(p: NewtonPolynomial, a, b):
    """``p(A) b`` using only matrix-vector products.

    With complex coefficients the result is a complex vector.  With ring
    coefficients (e.g. symbolic ones) the result is a list of ring elements,
    one per component.
    """
    a, b = as_matrix(a), as_vector(b)
    n = a.shape[0]
    if a.shape != (n, n) or b.shape[0] != n:
        raise DimensionMismatch(f"cannot apply {a.shape} matrix to length-{b.shape[0]} vector")
    c, mu = p.coefficients, p.points
    if _is_numeric(c):
        v = c[-1] * b
        for j in range(p.n - 2, -1, -1):
            v = a @ v - mu[j] * v + c[j] * b
        return v

    rows = [[complex(x) for x in row] for row in a]
    bb = [complex(x) for x in b]
    v = [c[-1] * bk for bk in bb]
    for j in range(p.n - 2, -1, -1):
        new = []
        for r in range(n):
            acc = c[j] * bb[r] - v[r] * mu[j]
            for k in range(n):
                if rows[r][k] != 0:
                    acc = acc + v[k] * rows[r][k]
            new.append(acc)
        v = new
    return v


def eval_bilinear(p: NewtonPolynomial, a, b, d, scalar=complex):
    """``sum_i d_i (p(A) b)_i`` without forming ``p(A)``.

    The Newton products ``N_j b = (A - mu_{j-1}) ... (A - mu_0) b`` are
    numbers, so the result is ``sum_j c_j <d, N_j b>`` and the coefficients
    (possibly ring elements) are only scaled and added ``n`` times.
    ``scalar`` sets the arithmetic for the products (e.g. ``mpmath.mpc``).
    """
    a, b, d = as_matrix(a), as_vector(b), as_vector(d)
    n = a.shape[0]
    if a.shape != (n, n) or b.shape[0] != n or d.shape[0] != n:
        raise DimensionMismatch("A, b and d must have matching sizes")
    rows = [[scalar(complex(x)) for x in row] for row in a]
    w = [scalar(complex(x)) for x in b]
    dd = [scalar(complex(x)) for x in d]
    c, mu = p.coefficients, p.points
    total = 0
    for j in range(p.n):
        s = sum((dd[i] * w[i] for i in range(n)), scalar(0j))
        total = total + c[j] * s
        if j + 1 < p.n:
            w = [sum((rows[r][k] * w[k] for k in range(n)), scalar(0j)) - mu[j] * w[r]
                 for r in range(n)]
    return total


def funm(a, eigenvalues, f, params: FunmParams = FunmParams()):
    """Approximate ``f(A)`` given the eigenvalues of ``A`` with multiplicity."""
    a = as_matrix(a)
    if len(eigenvalues) != a.shape[0]:
        raise DimensionMismatch(f"{len(eigenvalues)} eigenvalues for a {a.shape} matrix")
    return eval_matrix(build_newton(f, eigenvalues, params), a)
