"""Closed-form impulse response ``t -> <d, exp(A t) b>`` of a small LTI system.

The Newton pipeline is run with symbolic Taylor coefficients: near cluster j
the coefficient of ``(x - c_j)**a`` in the expansion of ``exp(x t)`` is the
function ``t**a exp(c_j t) / a!``.  Every later step is linear with
t-independent complex weights, so the response comes out as a finite linear
combination of those basis functions.

Weights of distinct basis functions cannot cancel symbolically, so when two
clusters are close the intermediate weights grow like ``1/gap**m`` and only
cancel once the formula is evaluated.  The weights are therefore computed in
extended precision (``mpmath``, 40 digits by default) and rounded to complex
at the end.
"""
import cmath
import math
from dataclasses import dataclass
from numbers import Number

import mpmath
import numpy as np

from .clustering import ClusterPartition
from .errors import DimensionMismatch
from .jsonio import (FormatError, complex_from_json, complex_to_json, matrix_from_json,
                     spectrum_from_json, vector_from_json)
from .linalg import as_matrix, as_vector
from .newton import FunmParams, NewtonPolynomial, eval_bilinear, funm, newton_coefficients
from .taylor_dd import Exp

DROP_RELATIVE = 1e-14
DEFAULT_DPS = 40
_SCALARS = (Number, mpmath.mpc, mpmath.mpf)


@dataclass(frozen=True)
class BasisFunction:
    """``t -> t**power * exp(center * t) / power!`` attached to a cluster (1-based)."""

    cluster: int
    power: int
    center: complex

    def __lt__(self, other):
        return (self.cluster, self.power) < (other.cluster, other.power)

    def __call__(self, t):
        return t ** self.power * cmath.exp(self.center * t) / math.factorial(self.power)


def _canonical(terms):
    return {b: w for b, w in terms.items() if w != 0}


def _drop_small(terms):
    if not terms:
        return {}
    cut = DROP_RELATIVE * max(abs(w) for w in terms.values())
    return {b: w for b, w in terms.items() if w != 0 and abs(w) >= cut}


class SymbolicCoefficient:
    """Linear combination of basis functions with complex weights.

    Supports ``+``, ``-``, and multiplication or division by a complex
    number (or ``mpmath.mpc``).  Dividing by another symbolic value is not
    defined.  Exact zero weights are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = _canonical(dict(terms or {}))

    @classmethod
    def basis(cls, fn):
        return cls({fn: 1.0 + 0j})

    def _combine(self, other, sign):
        if isinstance(other, _SCALARS) and other == 0:
            return self
        if not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        out = dict(self.terms)
        for b, w in other.terms.items():
            out[b] = out.get(b, 0j) + sign * w
        return SymbolicCoefficient(out)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return SymbolicCoefficient({b: -w for b, w in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return SymbolicCoefficient({b: w * other for b, w in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a symbolic coefficient by zero")
        return SymbolicCoefficient({b: w / other for b, w in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, _SCALARS) and other == 0:
            return not self.terms
        return isinstance(other, SymbolicCoefficient) and self.terms == other.terms

    __hash__ = None

    def __call__(self, t):
        return sum((complex(w) * b(t) for b, w in self.terms.items()), 0j)

    def __repr__(self):
        return f"SymbolicCoefficient({format_terms(self.terms)!r})"


@dataclass(frozen=True)
class ImpulseSystem:
    A: np.ndarray
    b: np.ndarray
    d: np.ndarray
    eigenvalues: tuple

    def __post_init__(self):
        a, b, d = as_matrix(self.A), as_vector(self.b), as_vector(self.d)
        n = a.shape[0]
        if a.shape != (n, n):
            raise DimensionMismatch(f"A must be square, got {a.shape}")
        if b.shape[0] != n or d.shape[0] != n:
            raise DimensionMismatch("b and d must have the order of A")
        if len(self.eigenvalues) != n:
            raise DimensionMismatch(f"{len(self.eigenvalues)} eigenvalues for order {n}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "eigenvalues", tuple(complex(z) for z in self.eigenvalues))


@dataclass(frozen=True)
class SymbolicResponse:
    terms: dict
    partition: ClusterPartition = None

    def __call__(self, t):
        return eval_symbolic(self, t)


def symbolic_taylor_coefficients(cluster, order, label):
    """Coefficients ``t**a exp(c t) / a!`` for ``a = 0..order`` as symbols."""
    return [SymbolicCoefficient.basis(BasisFunction(label, a, complex(cluster.center)))
            for a in range(order + 1)]


def _mpc(z):
    return mpmath.mpc(z.real, z.imag)


def impulse_response(system: ImpulseSystem, params: FunmParams = FunmParams(),
                     dps=DEFAULT_DPS) -> SymbolicResponse:
    """Symbolic ``<d, exp(A t) b>``.

    ``dps`` is the working precision (decimal digits) for the weights;
    ``None`` runs everything in double precision.
    """
    if dps is None:
        return _impulse_response(system, params, complex)
    with mpmath.workdps(dps):
        return _impulse_response(system, params, _mpc)


def _impulse_response(system, params, scalar):
    points, partition, column = newton_coefficients(
        list(system.eigenvalues), params,
        lambda j, cl: symbolic_taylor_coefficients(cl, cl.taylor_degree, j + 1),
        scalar=scalar)
    p = NewtonPolynomial(points=tuple(points), coefficients=tuple(column), partition=partition)
    y = eval_bilinear(p, system.A, system.b, system.d, scalar)
    if not isinstance(y, SymbolicCoefficient):
        y = SymbolicCoefficient()
    terms = _drop_small({b: complex(w) for b, w in y.terms.items()})
    return SymbolicResponse(terms=terms, partition=partition)


def numeric_response(system: ImpulseSystem, t, params: FunmParams = FunmParams()):
    """``<d, f_t(A) b>`` from the numeric pipeline with ``f_t(x) = exp(x t)``."""
    m = funm(system.A, list(system.eigenvalues), Exp(t), params)
    return complex(system.d @ (m @ system.b))


def eval_symbolic(resp: SymbolicResponse, t):
    return sum((w * b(t) for b, w in resp.terms.items()), 0j)


MINUS = "\u2212"


def _fmt_real(x, precision):
    text = f"{abs(x):.{precision}g}"
    return MINUS + text if x < 0 else text


def _fmt_number(z, precision):
    z = complex(z)
    if z.imag == 0:
        return _fmt_real(z.real, precision)
    if z.real == 0:
        return _fmt_real(z.imag, precision) + "i"
    sign = "+" if z.imag >= 0 else MINUS
    return f"{_fmt_real(z.real, precision)}{sign}{abs(z.imag):.{precision}g}i"


def _fmt_weight(w, precision):
    text = _fmt_number(w, precision)
    return text if complex(w).imag == 0 else f"({text})"


def format_terms(terms, precision=6):
    if not terms:
        return "0"
    parts = []
    for b in sorted(terms):
        piece = [_fmt_weight(terms[b], precision)]
        if b.power == 1:
            piece.append("t")
        elif b.power > 1:
            piece.append(f"t^{b.power}/{b.power}!")
        piece.append(f"e^{{({_fmt_number(b.center, precision)})t}}")
        parts.append("·".join(piece))
    return " + ".join(parts)


def format_response(resp: SymbolicResponse, precision=6):
    """Readable formula, terms sorted by (cluster, power)."""
    return format_terms(resp.terms, precision)


def response_to_json(resp: SymbolicResponse):
    terms = [{"cluster": b.cluster, "power": b.power, "center": complex_to_json(b.center),
              "weight": complex_to_json(resp.terms[b])} for b in sorted(resp.terms)]
    out = {"terms": terms}
    if resp.partition is not None:
        out["clusters"] = [
            {"cluster": j + 1, "size": c.size, "center": complex_to_json(c.center),
             "degree_slack": c.degree_slack}
            for j, c in enumerate(resp.partition.clusters)
        ]
    return out


def response_from_json(obj):
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
        raise FormatError("terms", "expected an object with a list of terms")
    terms = {}
    for i, t in enumerate(obj["terms"]):
        try:
            b = BasisFunction(int(t["cluster"]), int(t["power"]),
                              complex_from_json(t["center"], f"terms[{i}].center"))
            terms[b] = complex_from_json(t["weight"], f"terms[{i}].weight")
        except (KeyError, TypeError) as exc:
            raise FormatError(f"terms[{i}]", f"malformed term ({exc})") from None
    return SymbolicResponse(terms=terms)


def system_from_json(obj):
    if not isinstance(obj, dict):
        raise FormatError("system", "expected an object with A, b, d, spectrum")
    for key in ("A", "b", "d", "spectrum"):
        if key not in obj:
            raise FormatError(key, "missing")
    a = matrix_from_json(obj["A"], "A")
    b = vector_from_json(obj["b"], "b")
    d = vector_from_json(obj["d"], "d")
    mu = spectrum_from_json(obj["spectrum"], "spectrum")
    try:
        return ImpulseSystem(A=a, b=b, d=d, eigenvalues=tuple(mu))
    except DimensionMismatch as exc:
        raise FormatError("system", str(exc)) from None
