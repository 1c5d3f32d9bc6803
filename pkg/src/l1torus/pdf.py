"""Positive definiteness of l1-invariant kernels on the torus.

A coefficient sequence with nonnegative values everywhere synthesizes a
positive definite function.  Strict positive definiteness additionally
requires, for every pair 0 <= n < l, some m >= 0 with a strictly positive
coefficient at index n + m*l or (l - n) + m*l.  For residue-class tails this
reduces to an exact divisor-cover certificate: writing R for the positive
residue set modulo q, the tail settles the pair (n, l) precisely when
n mod g lies in (R union -R) mod g with g = gcd(l, q), so strictness holds
iff every divisor g of q is fully covered by (R union -R) mod g.  Failing
pairs are produced as finite witnesses; a windowed brute-force search over
(n, l, m) is provided as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .numerics import wrap_angles
from .summability import AllPositiveFrom, CoeffSeq, ResiduesPositive, ZeroTail, synth

MIN_POINT_SEPARATION = 1e-9


class CheckResult(NamedTuple):
    """Outcome of a definiteness check, with a witness when it fails.

    For pdf the witness is the first index holding a negative coefficient;
    for spdf it is a pair (n, l) no index of the two induced progressions
    settles.
    """

    ok: bool
    witness: object | None = None


def pdf_check(coeffs: CoeffSeq) -> CheckResult:
    """Nonnegativity of the whole sequence.

    The tail descriptors only ever assert positive or zero coefficients, so
    the verdict is decided by the head.
    """
    for i, v in enumerate(coeffs.head):
        if v < 0.0:
            return CheckResult(False, i)
    return CheckResult(True, None)


def _positive_head_indices(coeffs: CoeffSeq) -> set[int]:
    return {i for i, v in enumerate(coeffs.head) if v > 0.0}


def _pair_settled(coeffs: CoeffSeq, n: int, l: int) -> bool:
    """Exact decision: does some m >= 0 give a positive coefficient at
    n + m*l or (l - n) + m*l?  Head indices are scanned directly; tails are
    decided in closed form (progressions are infinite, so residue membership
    suffices)."""
    pos = _positive_head_indices(coeffs)
    top = coeffs.max_head_index
    for start in (n, l - n):
        idx = start
        while idx <= top:
            if idx in pos:
                return True
            idx += l
    tail = coeffs.tail
    if isinstance(tail, ZeroTail):
        return False
    if isinstance(tail, AllPositiveFrom):
        return True
    g = math.gcd(l, tail.modulus)
    cls = n % g
    covered = {r % g for r in tail.residues} | {(-r) % g for r in tail.residues}
    return cls in covered


def spdf_check(coeffs: CoeffSeq) -> CheckResult:
    """Strict positive definiteness certificate.

    Requires a nonnegative sequence (ValueError otherwise).  All-positive
    tails are immediately strict.  Residue tails are decided by the
    divisor-cover criterion; zero tails always fail because a finite head
    cannot settle arbitrarily long pair progressions.  On failure the
    smallest failing pair (lexicographically by l, then n) is returned,
    found by an exact search whose termination bound comes from the
    certificate's proof.
    """
    if not pdf_check(coeffs).ok:
        raise ValueError("strictness is only defined for nonnegative sequences")
    tail = coeffs.tail
    if isinstance(tail, AllPositiveFrom):
        return CheckResult(True, None)
    if isinstance(tail, ResiduesPositive):
        q = tail.modulus
        covered_all = True
        for g in range(1, q + 1):
            if q % g:
                continue
            covered = {r % g for r in tail.residues} | {(-r) % g for r in tail.residues}
            if len(covered) < g:
                covered_all = False
                break
        if covered_all:
            return CheckResult(True, None)
        l_cap = 2 * (coeffs.max_head_index + 1) + 3 * q + 8
    else:
        l_cap = 2 * (coeffs.max_head_index + 1) + 4
    for l in range(1, l_cap + 1):
        for n in range(l):
            if not _pair_settled(coeffs, n, l):
                return CheckResult(False, (n, l))
    raise RuntimeError("witness search exceeded its theoretical bound")


def spdf_pair_search(coeffs: CoeffSeq, pair_limit: int = 40, m_limit: int = 200) -> list[tuple[int, int]]:
    """Brute-force cross-check: pairs (n, l) with n < l <= pair_limit that no
    m <= m_limit settles.  Independent of the closed-form reasoning in
    :func:`spdf_check` (up to the window limits)."""
    if not pdf_check(coeffs).ok:
        raise ValueError("strictness is only defined for nonnegative sequences")
    failures = []
    for l in range(1, pair_limit + 1):
        for n in range(l):
            ok = False
            for m in range(m_limit + 1):
                if coeffs.is_positive(n + m * l) or coeffs.is_positive((l - n) + m * l):
                    ok = True
                    break
            if not ok:
                failures.append((n, l))
    return failures


@dataclass(frozen=True)
class GramSpec:
    """Gram-matrix specification: kernel coefficients sampled at torus points."""

    d: int
    points: np.ndarray
    coeffs: CoeffSeq
    trunc: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.d:
            raise ValueError("points must have shape (npoints, d)")
        if pts.shape[0] < 1:
            raise ValueError("at least one point is required")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.trunc < 0:
            raise ValueError("trunc must be >= 0")


def gram_matrix(spec: GramSpec) -> np.ndarray:
    """Gram matrix A[i, j] = f(theta_i - theta_j) of the synthesized kernel.

    Points must be pairwise distinct modulo 2 pi (separation at least 1e-9
    in the wrapped sup-norm).  The kernel is even, so the matrix is filled
    symmetrically from one triangle.
    """
    pts = spec.points
    npts = pts.shape[0]
    diag = synth(spec.d, spec.coeffs, spec.trunc, np.zeros(spec.d))
    a = np.empty((npts, npts))
    np.fill_diagonal(a, diag)
    for i in range(npts):
        for j in range(i + 1, npts):
            delta = wrap_angles(pts[i] - pts[j])
            if np.max(np.abs(delta)) < MIN_POINT_SEPARATION:
                raise ValueError(f"points {i} and {j} coincide modulo 2 pi")
            a[i, j] = a[j, i] = synth(spec.d, spec.coeffs, spec.trunc, delta)
    return a


def min_eigenvalue(a: np.ndarray) -> float:
    """Smallest eigenvalue of a symmetric matrix.

    Input must be square, finite, and symmetric to within 1e-12 relative to
    its scale; it is symmetrized exactly before the solve.
    """
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix must be finite")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.T)) > 1e-12 * scale:
        raise ValueError("matrix must be symmetric")
    return float(np.linalg.eigvalsh(0.5 * (m + m.T))[0])
