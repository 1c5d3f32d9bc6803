"""Divided differences with confluent (repeated) knots.

The divided difference [x_0, ..., x_m]f is computed from a Newton table.
When knots coincide, the table entry for a block of equal knots is the
Taylor coefficient f^(j)(x)/j!, which requires derivative access on f; the
:class:`SmoothFn` wrapper carries that capability.  Knots closer than a
coalescence threshold are merged into a multiple knot before tabulation,
because raw difference quotients lose all significant digits as knots
collide (the map theta -> cos(theta) produces such near-collisions
routinely).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

COALESCE_TOL = 1e-9


class DerivativeOrderError(ValueError):
    """Raised when confluent knots demand derivatives the function lacks."""


class SmoothFn:
    """A univariate function together with derivative oracles.

    Parameters
    ----------
    value : callable
        Maps a float to a float.
    derivative : callable, optional
        ``derivative(u, j)`` returns the j-th derivative at u (j >= 1).
        When omitted the function exposes values only.
    max_order : int or None
        Highest derivative order available; None means unlimited (only
        meaningful when ``derivative`` is given).
    """

    def __init__(self, value: Callable[[float], float],
                 derivative: Callable[[float, int], float] | None = None,
                 max_order: int | None = None):
        self._value = value
        self._derivative = derivative
        if derivative is None:
            max_order = 0
        self.max_order = max_order

    def __call__(self, u: float) -> float:
        return self._value(u)

    def deriv(self, u: float, order: int) -> float:
        """Derivative of the given order at u; order 0 is the value."""
        if order == 0:
            return self._value(u)
        if self._derivative is None or (self.max_order is not None and order > self.max_order):
            raise DerivativeOrderError(
                f"derivative of order {order} is not available"
            )
        return self._derivative(u, order)

    @classmethod
    def from_poly(cls, p) -> "SmoothFn":
        """Wrap a numpy polynomial (any basis); derivatives are exact."""
        chain = [p]

        def derivative(u: float, order: int) -> float:
            while len(chain) <= order:
                chain.append(chain[-1].deriv())
            return float(chain[order](u))

        return cls(lambda u: float(p(u)), derivative, max_order=None)


@dataclass(frozen=True)
class KnotVector:
    """A sorted tuple of knots; repeats encode multiplicities."""

    knots: tuple

    def __init__(self, values: Sequence[float]):
        vals = tuple(sorted(float(v) for v in values))
        if not vals:
            raise ValueError("a knot vector needs at least one knot")
        object.__setattr__(self, "knots", vals)

    def __len__(self) -> int:
        return len(self.knots)

    @property
    def order(self) -> int:
        """m for a knot vector x_0 <= ... <= x_m."""
        return len(self.knots) - 1

    def coalesced(self, tol: float = COALESCE_TOL) -> list[tuple[float, int]]:
        """Group knots into (site, multiplicity) pairs.

        Consecutive knots within ``tol`` of the previous group member are
        chained into one group; the site is the group mean.
        """
        groups: list[list[float]] = [[self.knots[0]]]
        for x in self.knots[1:]:
            if x - groups[-1][-1] <= tol:
                groups[-1].append(x)
            else:
                groups.append([x])
        return [(math.fsum(g) / len(g), len(g)) for g in groups]


def divided_difference(fn: SmoothFn, knots, coalesce_tol: float = COALESCE_TOL) -> float:
    """Divided difference [x_0, ..., x_m]f over the given knots.

    ``knots`` may be a :class:`KnotVector` or any sequence of reals.  Knots
    within ``coalesce_tol`` are merged and evaluated through the Taylor
    entries f^(j)(x)/j!; a knot of multiplicity mu needs derivatives up to
    order mu - 1.
    """
    kv = knots if isinstance(knots, KnotVector) else KnotVector(knots)
    groups = kv.coalesced(coalesce_tol)
    z: list[float] = []
    gidx: list[int] = []
    for g, (site, mult) in enumerate(groups):
        z.extend([site] * mult)
        gidx.extend([g] * mult)
    m = len(z) - 1
    need = max(mult for _, mult in groups) - 1
    if fn.max_order is not None and need > fn.max_order:
        raise DerivativeOrderError(
            f"knot multiplicity {need + 1} requires derivatives up to order {need}"
        )
    col = [fn(zi) for zi in z]
    for j in range(1, m + 1):
        nxt = []
        for i in range(m + 1 - j):
            if gidx[i + j] == gidx[i]:
                nxt.append(fn.deriv(z[i], j) / math.factorial(j))
            else:
                nxt.append((col[i + 1] - col[i]) / (z[i + j] - z[i]))
        col = nxt
    return float(col[0])


def divided_difference_cos(fn: SmoothFn, theta, coalesce_tol: float = COALESCE_TOL) -> float:
    """Divided difference of f over the knots cos(theta_1), ..., cos(theta_d)."""
    t = np.asarray(theta, dtype=float).ravel()
    if t.size == 0:
        raise ValueError("theta must contain at least one angle")
    return divided_difference(fn, KnotVector(np.cos(t)), coalesce_tol)
