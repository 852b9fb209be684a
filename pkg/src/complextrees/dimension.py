"""Similarity dimension of a tipset and the dimension of the C/D path system.

Both are roots of strictly decreasing functions of the exponent ``s`` and
are found by plain bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .address import AlphabetLike, as_ratios
from .errors import DomainError
from .family import family_alphabet

__all__ = [
    "DimensionResult",
    "bisect_decreasing",
    "similarity_dimension",
    "path_matrix",
    "spectral_radius_2x2",
    "path_dimension",
    "family_dimension",
]

BRACKET = (1e-9, 64.0)
# the upper end doubles until f drops below 1; moduli near 1 push the root far out
HI_CAP = 1e6
MAX_ITER = 200


@dataclass(frozen=True)
class DimensionResult:
    value: float
    residual: float
    iterations: int
    bracket: tuple
    #: True when the value is known to be a Hausdorff dimension (stable
    #: parameter), False when it is known not to apply, None if unchecked.
    hausdorff: bool | None = None


def bisect_decreasing(func, lo, hi, tol=1e-12, max_iter=MAX_ITER):
    """Root of ``func(s) = 1`` for ``func`` strictly decreasing on ``[lo, hi]``.

    ``hi`` is doubled (up to ``HI_CAP``) while ``func(hi) >= 1``. Stops when
    ``|func(s) - 1| < tol`` or the bracket can no longer shrink.
    Returns ``(s, residual, iterations, (lo, hi))``.
    """
    f_lo, f_hi = func(lo), func(hi)
    while f_lo > 1 and f_hi >= 1 and hi < HI_CAP:
        lo, f_lo = hi, f_hi
        hi *= 2
        f_hi = func(hi)
    if not f_lo > 1 > f_hi:
        raise DomainError(f"no sign change for f(s) = 1 on [{lo}, {hi}]")
    best, best_res = lo, abs(f_lo - 1)
    it = 0
    while it < max_iter:
        it += 1
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        res = abs(f_mid - 1)
        if res < best_res:
            best, best_res = mid, res
        if res < tol:
            break
        if f_mid > 1:
            lo = mid
        else:
            hi = mid
    return best, best_res, it, (lo, hi)


def similarity_dimension(alphabet: AlphabetLike, tol: float = 1e-12) -> DimensionResult:
    """The ``alpha > 0`` with ``sum_j |c_j|**alpha = 1``."""
    mods = [abs(c) for c in as_ratios(alphabet)]
    if not all(0 < m < 1 for m in mods):
        raise DomainError("similarity dimension needs 0 < |c_j| < 1")

    def total(s):
        return sum(m**s for m in mods)

    value, res, it, br = bisect_decreasing(total, *BRACKET, tol=tol)
    return DimensionResult(value, res, it, br)


def path_matrix(ratios, s):
    """Weights of the C/D substitution at exponent ``s``.

    Row C: ``C = f2(D) u f1 f2(C) u f1(C)``; row D: ``D = f1(D) u f1 f3(D) u f3(C)``.
    """
    a1, a2, a3 = (abs(c) for c in ratios)
    return (
        (a1**s + (a1 * a2) ** s, a2**s),
        (a3**s, a1**s + (a1 * a3) ** s),
    )


def spectral_radius_2x2(m) -> float:
    """Perron root of a nonnegative 2x2 matrix."""
    (a, b), (c, d) = m
    half = 0.5 * (a - d)
    return 0.5 * (a + d) + math.sqrt(half * half + b * c)


def path_dimension(z: complex, tol: float = 1e-12) -> DimensionResult:
    """Dimension ``s*`` of ``C u D`` at family parameter ``z``: ``rho(M(s*)) = 1``."""
    sample = family_alphabet(z)
    if not sample.in_R:
        raise DomainError(f"z = {z} lies outside the region R")
    ratios = sample.ratios
    value, res, it, br = bisect_decreasing(
        lambda s: spectral_radius_2x2(path_matrix(ratios, s)), *BRACKET, tol=tol
    )
    return DimensionResult(value, res, it, br)


def family_dimension(z: complex, tol: float = 1e-12, depth: int | None = None) -> DimensionResult:
    """Similarity dimension of the family tipset at ``z``.

    With ``depth`` given, the point is classified and ``hausdorff`` is set
    to True for stable parameters and False inside the analytic region M2.
    """
    sample = family_alphabet(z)
    result = similarity_dimension(sample.alphabet(), tol)
    if depth is None:
        return result
    from .unstable import Classification, classify_point

    code = classify_point(z, depth)
    flag = {Classification.Stable: True, Classification.UnstableAnalytic: False}.get(code)
    return DimensionResult(result.value, result.residual, result.iterations, result.bracket, flag)
