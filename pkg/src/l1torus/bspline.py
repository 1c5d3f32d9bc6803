"""B-splines as functions of their knots.

M_m(u | x_0, ..., x_m) denotes the B-spline of order m normalized so that
its integral over the line equals 1/m!.  It equals the divided difference
over the knots of x -> (x - u)_+^(m-1) / (m-1)!, with the order-1 case the
right-continuous box  M_1(u) = 1/(x_1 - x_0) on [x_0, x_1).  Evaluation here
uses the knot-insertion recurrence

    (x_{m+1} - x_0) M_{m+1}(u | x_0..x_{m+1})
        = (u - x_0) M_m(u | x_0..x_m) + (x_{m+1} - u) M_m(u | x_1..x_{m+1})

with the convention that any term with a zero span is zero.  The divided
difference definition is kept as an independent oracle in the test suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divdiff import KnotVector


class PoleError(ArithmeticError):
    """Knot configuration on which the field has a pole (order 1, equal knots)."""


@dataclass(frozen=True)
class BsplineSpec:
    """Order m >= 1 together with its m + 1 knots."""

    order: int
    knots: KnotVector

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.knots) != self.order + 1:
            raise ValueError("an order-m B-spline needs exactly m + 1 knots")


def bspline_eval(spec: BsplineSpec, u: float) -> float:
    """Value of M_m(u | knots); zero outside [x_0, x_m].

    All knots equal is rejected: the B-spline degenerates to a point mass.
    """
    x = np.asarray(spec.knots.knots, dtype=float)
    m = spec.order
    if x[0] == x[-1]:
        raise ValueError("all knots coincide; the B-spline is not a function")
    u = float(u)
    gaps = x[1:] - x[:-1]
    with np.errstate(divide="ignore"):
        vals = np.where((gaps > 0) & (x[:-1] <= u) & (u < x[1:]),
                        np.divide(1.0, gaps, where=gaps > 0, out=np.zeros_like(gaps)),
                        0.0)
    for k in range(2, m + 1):
        span = x[k:] - x[:-k]
        num = (u - x[:-k]) * vals[:-1] + (x[k:] - u) * vals[1:]
        vals = np.divide(num, span, where=span > 0, out=np.zeros_like(span))
    # The recurrence yields the raw divided difference of (x - u)_+^(m-1),
    # whose integral is 1/m; dividing by (m-1)! lands on the 1/m! contract.
    return float(vals[0]) / math.factorial(m - 1)


def knot_field_batch(d: int, u: float, cos_knots: np.ndarray) -> np.ndarray:
    """Vectorized M_{d-1}(u | rows of cos_knots) for a batch of knot rows.

    ``cos_knots`` has shape (batch, d) with rows sorted ascending.  Rows on
    which the field has a pole or degenerates must be filtered by the caller;
    zero spans simply contribute zero terms here.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    x = np.asarray(cos_knots, dtype=float)
    if x.ndim != 2 or x.shape[1] != d:
        raise ValueError("cos_knots must have shape (batch, d)")
    if abs(u) >= 1.0:
        return np.zeros(x.shape[0])
    gaps = x[:, 1:] - x[:, :-1]
    inv = np.divide(1.0, gaps, where=gaps > 0, out=np.zeros_like(gaps))
    vals = np.where((x[:, :-1] <= u) & (u < x[:, 1:]), inv, 0.0)
    for k in range(2, d):
        span = x[:, k:] - x[:, :-k]
        num = (u - x[:, :-k]) * vals[:, :-1] + (x[:, k:] - u) * vals[:, 1:]
        vals = np.divide(num, span, where=span > 0, out=np.zeros_like(span))
    return vals[:, 0] / math.factorial(d - 2)


def bspline_knot_field(d: int, u: float, theta) -> float:
    """M_{d-1}(u | cos theta_1, ..., cos theta_d) as a function on the torus.

    Returns 0 for |u| >= 1 (the knots lie in [-1, 1]).  For d = 2 a pair of
    equal knots is a genuine pole and raises :class:`PoleError`.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    t = np.asarray(theta, dtype=float).ravel()
    if t.size != d:
        raise ValueError("theta must supply d angles")
    knots = np.sort(np.cos(t))
    if abs(u) >= 1.0:
        return 0.0
    if d == 2 and knots[0] == knots[1]:
        raise PoleError("order-1 field with equal knots has a pole")
    if knots[0] == knots[-1]:
        raise ValueError("all knots coincide; the field is not a function")
    return bspline_eval(BsplineSpec(d - 1, KnotVector(knots)), u)
