"""The one-parameter fern family ``A(z) = {z, c2(z), c3(z)}``.

``c2`` and ``c3`` are the two roots of

    z(1+z) c^2 - (1 - z - z^2 + z^3) c + z^2 (1 - z) = 0,

i.e. ``(N +- sqrt(Delta)) / (2 z (1+z))`` with ``N = 1 - z - z^2 + z^3`` and
``Delta = 1 - 2z - z^2 - z^4 + 2z^5 + z^6 = (z^4 - 1)(z^2 + 2z - 1)``.
They are the unique alphabets with ``c1 = z`` for which the tip identities
``23(1) ~ 122(1)`` and ``32(1) ~ 133(1)`` hold. The principal square root
is used throughout; across the cut ``Delta <= 0`` the two roots swap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .address import Alphabet, parse_address
from .errors import DomainError, SingularParameterError

__all__ = [
    "FamilySample",
    "family_alphabet",
    "family_ratios",
    "in_region_R",
    "in_M2",
    "discriminant",
    "BASE_RELATIONS",
    "GOLDEN_Z",
    "MIRROR_START",
]

#: 1/tau, the parameter of the golden ternary tree.
GOLDEN_Z = (math.sqrt(5.0) - 1.0) / 2.0

#: sqrt(2) - 1, the positive real root of Delta; for real z in
#: [MIRROR_START, 1) the family alphabet is mirror symmetric.
MIRROR_START = math.sqrt(2.0) - 1.0

#: The defining tip identities satisfied by every family member.
BASE_RELATIONS = (("23(1)", "122(1)"), ("32(1)", "133(1)"))


def discriminant(z):
    """``Delta(z)``; works elementwise on arrays."""
    z2 = z * z
    return 1 - 2 * z - z2 - z2 * z2 + 2 * z2 * z2 * z + z2 * z2 * z2


def _unsigned_zero(w):
    # A signed -0.0 imaginary part would flip the principal root on the cut.
    return complex(w.real, 0.0) if w.imag == 0 else w


def _numerator(z):
    return 1 - z - z * z + z * z * z


@dataclass(frozen=True)
class FamilySample:
    z: complex
    c2: complex
    c3: complex
    discriminant: complex
    in_R: bool
    in_M2: bool

    @property
    def ratios(self) -> tuple:
        return (self.z, self.c2, self.c3)

    def alphabet(self) -> Alphabet:
        """The sample as a validated :class:`Alphabet` (requires ``z`` in R)."""
        if not self.in_R:
            raise DomainError(f"z = {self.z} lies outside the region R")
        return Alphabet(self.ratios)

    def square_sum(self) -> float:
        return abs(self.z) ** 2 + abs(self.c2) ** 2 + abs(self.c3) ** 2


def family_ratios(z: complex) -> tuple:
    """``(z, c2(z), c3(z))`` without domain flags."""
    z = complex(z)
    den = 2 * z * (1 + z)
    if den == 0:
        raise SingularParameterError(f"family is singular at z = {z}")
    root = cmath.sqrt(_unsigned_zero(discriminant(z)))
    n = _numerator(z)
    return z, (n + root) / den, (n - root) / den


def family_alphabet(z: complex) -> FamilySample:
    """Evaluate the family at ``z`` together with its region flags."""
    z, c2, c3 = family_ratios(z)
    in_r = _moduli_in_unit(z, c2, c3)
    in_m2 = in_r and abs(z) ** 2 + abs(c2) ** 2 + abs(c3) ** 2 > 1.0
    return FamilySample(z, c2, c3, discriminant(z), in_r, in_m2)


def _moduli_in_unit(*cs):
    return all(0.0 < abs(c) < 1.0 for c in cs)


def in_region_R(sample: FamilySample) -> bool:
    """True iff ``0 < |z|, |c2|, |c3| < 1``."""
    return _moduli_in_unit(*sample.ratios)


def in_M2(sample: FamilySample) -> bool:
    """True iff the sample is in R and ``|z|^2 + |c2|^2 + |c3|^2 > 1``."""
    return in_region_R(sample) and sample.square_sum() > 1.0


def family_arrays(z: np.ndarray):
    """Vectorized ``(c2, c3, in_R, in_M2)`` for an array of parameters.

    Singular parameters come back with ``in_R`` false.
    """
    z = np.asarray(z, dtype=complex)
    den = 2 * z * (1 + z)
    ok = den != 0
    safe = np.where(ok, den, 1.0)
    delta = discriminant(z)
    # +0.0 imaginary part so that real z on the cut picks Im c2 > 0
    delta = delta.real + 1j * np.where(delta.imag == 0, 0.0, delta.imag)
    root = np.sqrt(delta)
    n = _numerator(z)
    c2 = (n + root) / safe
    c3 = (n - root) / safe
    az, a2, a3 = np.abs(z), np.abs(c2), np.abs(c3)
    in_r = ok & (az > 0) & (az < 1) & (a2 > 0) & (a2 < 1) & (a3 > 0) & (a3 < 1)
    in_m2 = in_r & (az**2 + a2**2 + a3**2 > 1.0)
    return c2, c3, in_r, in_m2


def base_relations():
    """The two defining relations as address pairs."""
    return tuple((parse_address(a), parse_address(b)) for a, b in BASE_RELATIONS)
