"""Address words and the geometric map phi of a complex tree.

A word ``w = w1 w2 ... wm`` over letters ``1..n`` is sent to the node

    phi(w) = 1 + c_{w1} + c_{w1} c_{w2} + ... + c_{w1} ... c_{wm}

and an eventually periodic infinite word ``u (v)`` to the tip point

    phi(u (v)) = phi(u) + prod(u) * S(v) / (1 - prod(v)),

where ``S(v)`` is the sum of the prefix products of the period ``v``.
Everything here is evaluated numerically in double precision; closed
forms are used for the periodic tails, never truncated series.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import AddressParseError, DomainError, LetterRangeError, SingularityError

__all__ = [
    "Address",
    "Alphabet",
    "parse_address",
    "format_address",
    "prefix_product",
    "eval_node",
    "eval_tip",
    "apply_map",
    "shift",
    "as_ratios",
]

#: |1 - P| below this is treated as a pole of the periodic tail.
SINGULAR_EPS = 1e-14

_LETTERS = re.compile(r"[1-9]*")


def _primitive_root(period):
    """Shortest word whose repetition gives ``period``."""
    k = len(period)
    for d in range(1, k):
        if k % d == 0 and period[:d] * (k // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True, order=False)
class Address:
    """A finite (empty ``period``) or eventually periodic word.

    Construction always canonicalizes: the period is made primitive and
    trailing preperiod letters are absorbed into the period, so that
    ``Address((2, 3, 1), (1,))`` equals ``Address((2, 3), (1,))``.
    """

    preperiod: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        pre = tuple(int(j) for j in self.preperiod)
        per = tuple(int(j) for j in self.period)
        for j in pre + per:
            if j < 1:
                raise LetterRangeError(f"letters are 1-based, got {j}")
        if per:
            per = _primitive_root(per)
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def first_letter(self):
        """First letter of the word, or ``None`` for the empty string."""
        if self.preperiod:
            return self.preperiod[0]
        if self.period:
            return self.period[0]
        return None

    @property
    def letters(self) -> tuple:
        return self.preperiod + self.period

    def max_letter(self) -> int:
        return max(self.letters, default=0)

    def __str__(self):
        return format_address(self)

    def __lt__(self, other):
        return format_address(self) < format_address(other)


class Alphabet:
    """Ordered contraction ratios ``c_1..c_n`` of the maps ``f_j(z) = 1 + c_j z``.

    Every ratio must satisfy ``0 < |c_j| < 1``.
    """

    __slots__ = ("_ratios",)

    def __init__(self, ratios):
        ratios = tuple(complex(c) for c in ratios)
        if len(ratios) < 2:
            raise DomainError("an alphabet needs at least two letters")
        for j, c in enumerate(ratios, start=1):
            if not 0.0 < abs(c) < 1.0:
                raise DomainError(f"ratio c_{j} = {c} must satisfy 0 < |c| < 1")
        self._ratios = ratios

    @property
    def ratios(self) -> tuple:
        return self._ratios

    @property
    def n(self) -> int:
        return len(self._ratios)

    def __len__(self):
        return len(self._ratios)

    def __getitem__(self, j):
        return self._ratios[j]

    def __iter__(self):
        return iter(self._ratios)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and other._ratios == self._ratios

    def __hash__(self):
        return hash(self._ratios)

    def __repr__(self):
        return f"Alphabet({list(self._ratios)!r})"


AlphabetLike = Union[Alphabet, Sequence[complex]]


def as_ratios(alphabet: AlphabetLike) -> tuple:
    """Ratios of ``alphabet`` as a tuple of complex numbers.

    Plain sequences are accepted without the contraction check, which lets
    family members outside the contractive region be evaluated formally.
    """
    if isinstance(alphabet, Alphabet):
        return alphabet.ratios
    return tuple(complex(c) for c in alphabet)


def parse_address(text: str) -> Address:
    """Parse ``letters? ( "(" letters ")" )?`` into a canonical :class:`Address`.

    >>> parse_address("231(1)")
    Address(preperiod=(2, 3), period=(1,))
    """
    m = _LETTERS.match(text)
    pre_end = m.end()
    pre = text[:pre_end]
    if pre_end == len(text):
        return Address(tuple(int(ch) for ch in pre), ())
    if text[pre_end] != "(":
        raise AddressParseError(f"illegal character {text[pre_end]!r}", pre_end)
    m = _LETTERS.match(text, pre_end + 1)
    close = m.end()
    if close == pre_end + 1:
        if close < len(text) and text[close] not in ")":
            raise AddressParseError(f"illegal character {text[close]!r}", close)
        raise AddressParseError("empty period", close)
    if close == len(text):
        raise AddressParseError("unterminated period, expected ')'", close)
    if text[close] != ")":
        raise AddressParseError(f"illegal character {text[close]!r}", close)
    if close + 1 != len(text):
        raise AddressParseError("trailing characters after period", close + 1)
    return Address(
        tuple(int(ch) for ch in pre), tuple(int(ch) for ch in text[pre_end + 1 : close])
    )


def format_address(address: Address) -> str:
    """Canonical spelling, e.g. ``"23(1)"``; the empty string for e0."""
    letters = address.letters
    if letters and max(letters) > 9:
        raise DomainError("addresses with letters above 9 have no textual form")
    pre = "".join(map(str, address.preperiod))
    if address.period:
        return pre + "(" + "".join(map(str, address.period)) + ")"
    return pre


def _check_letters(word, n):
    for j in word:
        if not 1 <= j <= n:
            raise LetterRangeError(f"letter {j} not in 1..{n}")


def prefix_product(word: Sequence[int], alphabet: AlphabetLike) -> complex:
    """Product of the ratios along ``word``; 1 for the empty word."""
    c = as_ratios(alphabet)
    _check_letters(word, len(c))
    p = 1 + 0j
    for j in word:
        p *= c[j - 1]
    return p


def _node_and_product(word, c):
    value = 1 + 0j
    p = 1 + 0j
    for j in word:
        p *= c[j - 1]
        value += p
    return value, p


def eval_node(word: Sequence[int], alphabet: AlphabetLike) -> complex:
    """Node ``phi(w)`` of a finite word."""
    c = as_ratios(alphabet)
    _check_letters(word, len(c))
    return _node_and_product(word, c)[0]


def eval_tip(address: Address, alphabet: AlphabetLike) -> complex:
    """Tip point of an eventually periodic address (node value if finite)."""
    c = as_ratios(alphabet)
    _check_letters(address.letters, len(c))
    head, p_head = _node_and_product(address.preperiod, c)
    if not address.period:
        return head
    tail, p_tail = _node_and_product(address.period, c)
    if abs(1 - p_tail) < SINGULAR_EPS:
        raise SingularityError(f"period product of {format_address(address)} equals 1")
    return head + p_head * (tail - 1) / (1 - p_tail)


def apply_map(j: int, point: complex, alphabet: AlphabetLike) -> complex:
    """``f_j(point) = 1 + c_j * point``."""
    c = as_ratios(alphabet)
    _check_letters((j,), len(c))
    return 1 + c[j - 1] * point


def shift(address: Address) -> Address:
    """Drop the first letter, rotating the period if there is no preperiod."""
    if address.preperiod:
        return Address(address.preperiod[1:], address.period)
    if address.period:
        return Address((), address.period[1:] + address.period[:1])
    raise DomainError("the empty string has no shift")
