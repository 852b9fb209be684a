"""Node geometry of a complex tree and numerical tip-to-tip coincidences.

The depth-``d`` nodes are built level by level with ``phi(j w) = f_j(phi(w))``,
which yields lexicographic word order for free: block ``j`` of level ``d``
is the image of level ``d - 1`` under ``f_j``.

Coincidence detection represents every depth-``d`` cylinder ``w`` by the
eventually periodic tips ``w (t)`` for each letter ``t``. Two such tips with
different first letters that agree up to a tiny tolerance are evidence for
a relation ``a ~ b`` in the topological set. Candidates are found with a
sorted sweep along a fixed generic direction, so the cost is
``O(N log N)`` rather than quadratic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .address import (
    Address,
    AlphabetLike,
    as_ratios,
    eval_tip,
    format_address,
    parse_address,
)
from .errors import BudgetExceededError, DomainError

__all__ = [
    "TreeLevelSet",
    "Relation",
    "CoincidenceReport",
    "build_nodes",
    "tip_representatives",
    "tipset_hull_radius",
    "detect_coincidences",
    "verify_relation",
    "default_budget",
]

DEFAULT_BUDGET = 3**16

#: Unit direction used to order points in the sweep. Any direction works;
#: a generic one avoids ties from mirror-symmetric point sets.
_SWEEP_DIRECTION = np.exp(-1j * 0.3826834323650898)


def default_budget() -> int:
    """Point budget, overridable with the ``CTREE_BUDGET`` environment variable."""
    value = os.environ.get("CTREE_BUDGET")
    if value:
        return int(value)
    return DEFAULT_BUDGET


def _check_budget(count, budget):
    if budget is None:
        budget = default_budget()
    if count > budget:
        raise BudgetExceededError(f"{count} points requested, budget is {budget}")


def _word_of(index, depth, n):
    word = []
    for _ in range(depth):
        index, r = divmod(index, n)
        word.append(r + 1)
    return tuple(reversed(word))


@dataclass(frozen=True)
class TreeLevelSet:
    """All ``n**depth`` nodes of one level, in lexicographic word order."""

    depth: int
    n: int
    points: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.points)

    def word(self, index: int) -> tuple:
        return _word_of(index, self.depth, self.n)

    def first_letters(self) -> np.ndarray:
        if self.depth == 0:
            return np.zeros(len(self.points), dtype=np.int64)
        return np.arange(len(self.points)) // self.n ** (self.depth - 1) + 1

    def entries(self):
        """Iterate ``(word, point)`` pairs."""
        for i, p in enumerate(self.points):
            yield self.word(i), complex(p)


def _iterate_maps(c, start, depth):
    pts = start
    for _ in range(depth):
        pts = np.concatenate([1 + cj * pts for cj in c])
    return pts


def build_nodes(alphabet: AlphabetLike, depth: int, budget: int | None = None) -> TreeLevelSet:
    """Nodes ``phi(w)`` for every word of length exactly ``depth``."""
    if depth < 0:
        raise DomainError("depth must be non-negative")
    c = np.array(as_ratios(alphabet))
    _check_budget(len(c) ** depth, budget)
    pts = _iterate_maps(c, np.ones(1, dtype=complex), depth)
    return TreeLevelSet(depth, len(c), pts)


def tip_representatives(alphabet: AlphabetLike, depth: int, tails=None, budget=None):
    """Tips ``phi(w (t))`` for all words ``w`` of length ``depth`` and tails ``t``.

    Returned index ``i`` encodes ``w`` as ``i // len(tails)`` (lexicographic)
    and the tail as ``tails[i % len(tails)]``.
    """
    c = np.array(as_ratios(alphabet))
    if tails is None:
        tails = tuple(range(1, len(c) + 1))
    _check_budget(len(c) ** depth * len(tails), budget)
    fixed = np.array([1 / (1 - c[t - 1]) for t in tails])
    return _iterate_maps(c, fixed, depth)


def tipset_hull_radius(alphabet: AlphabetLike) -> float:
    """``R0 = m / (1 - m)`` with ``m = max |c_j|``.

    Every tip with prefix ``w`` lies within ``|prod(w)| * R0`` of the node
    ``phi(w)``.
    """
    m = max(abs(c) for c in as_ratios(alphabet))
    return m / (1 - m)


@dataclass(frozen=True)
class Relation:
    """A tip-to-tip identity ``left ~ right`` between different first pieces."""

    left: Address
    right: Address

    def __post_init__(self):
        a, b = self.left, self.right
        if isinstance(a, str):
            a = parse_address(a)
        if isinstance(b, str):
            b = parse_address(b)
        if a.first_letter is None or b.first_letter is None:
            raise DomainError("relations need nonempty words")
        if a.first_letter == b.first_letter:
            raise DomainError(
                f"{format_address(a)} ~ {format_address(b)}: first letters must differ"
            )
        if format_address(b) < format_address(a):
            a, b = b, a
        object.__setattr__(self, "left", a)
        object.__setattr__(self, "right", b)

    @classmethod
    def parse(cls, text: str) -> "Relation":
        """Parse ``"a~b"``."""
        parts = text.split("~")
        if len(parts) != 2:
            raise DomainError(f"expected 'a~b', got {text!r}")
        return cls(parse_address(parts[0].strip()), parse_address(parts[1].strip()))

    def swapped(self) -> "Relation":
        """The relation with letters 2 and 3 exchanged."""
        swap = {2: 3, 3: 2}

        def tr(a):
            return Address(
                tuple(swap.get(j, j) for j in a.preperiod), tuple(swap.get(j, j) for j in a.period)
            )

        return Relation(tr(self.left), tr(self.right))

    def max_letter(self) -> int:
        return max(self.left.max_letter(), self.right.max_letter())

    def __str__(self):
        return f"{format_address(self.left)}~{format_address(self.right)}"


def verify_relation(alphabet: AlphabetLike, relation: Relation, tol: float = 1e-10):
    """Return ``(holds, residual)`` with ``residual = |phi(left) - phi(right)|``."""
    residual = abs(eval_tip(relation.left, alphabet) - eval_tip(relation.right, alphabet))
    return residual < tol, residual


@dataclass(frozen=True)
class CoincidencePair:
    left: Address
    right: Address
    distance: float
    explained: bool


@dataclass(frozen=True)
class CoincidenceReport:
    """Near-coincident tip pairs, sorted by distance.

    ``threshold`` is the absolute distance cut actually applied,
    ``rel_tol * (1 + R0) * min|c|**depth``.
    """

    pairs: tuple
    rel_tol: float
    depth: int
    threshold: float
    exclusion_radius: float

    @property
    def unexplained(self) -> tuple:
        return tuple(p for p in self.pairs if not p.explained)

    def relations(self, explained=None) -> list:
        return [
            Relation(p.left, p.right)
            for p in self.pairs
            if explained is None or p.explained == explained
        ]

    def to_text(self) -> str:
        """``wordA<TAB>wordB<TAB>distance<TAB>explained`` lines."""
        lines = [
            f"{format_address(p.left)}\t{format_address(p.right)}\t{p.distance:.17g}\t"
            f"{'true' if p.explained else 'false'}\n"
            for p in self.pairs
        ]
        return "".join(lines)

    @staticmethod
    def parse_text(text: str) -> list:
        out = []
        for line in text.splitlines():
            if not line.strip():
                continue
            a, b, d, e = line.split("\t")
            out.append(CoincidencePair(parse_address(a), parse_address(b), float(d), e == "true"))
        return out


def coincidence_threshold(alphabet: AlphabetLike, depth: int, rel_tol: float) -> float:
    mods = [abs(c) for c in as_ratios(alphabet)]
    return rel_tol * (1 + tipset_hull_radius(alphabet)) * min(mods) ** depth


def _close_pairs(points: np.ndarray, groups: np.ndarray, threshold: float):
    """Index pairs ``(i, j)`` with ``|p_i - p_j| < threshold`` and different groups."""
    key = (points * _SWEEP_DIRECTION).real
    order = np.argsort(key, kind="stable")
    x = key[order]
    found_i, found_j = [], []
    for lag in range(1, len(x)):
        near = np.nonzero(x[lag:] - x[:-lag] < threshold)[0]
        if near.size == 0:
            break
        a = order[near]
        b = order[near + lag]
        keep = (np.abs(points[a] - points[b]) < threshold) & (groups[a] != groups[b])
        found_i.append(a[keep])
        found_j.append(b[keep])
    if not found_i:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(found_i), np.concatenate(found_j)


def has_unexplained_coincidence(
    ratios: Sequence[complex],
    depth: int,
    rel_tol: float,
    touching: Iterable[complex] = (),
    exclusion_factor: float = 2.0,
    budget=None,
) -> bool:
    """Fast yes/no version of :func:`detect_coincidences`."""
    c = np.array(ratios)
    n = len(c)
    pts = tip_representatives(c, depth, budget=budget)
    groups = np.arange(len(pts)) // (n ** (depth - 1) * n)
    thr = coincidence_threshold(c, depth, rel_tol)
    i, j = _close_pairs(pts, groups, thr)
    if i.size == 0:
        return False
    radius = exclusion_factor * thr
    touching = np.array(list(touching), dtype=complex)
    if touching.size == 0:
        return True
    di = np.abs(pts[i][:, None] - touching[None, :]) < radius
    dj = np.abs(pts[j][:, None] - touching[None, :]) < radius
    explained = (di & dj).any(axis=1)
    return bool((~explained).any())


def detect_coincidences(
    alphabet: AlphabetLike,
    depth: int,
    rel_tol: float = 1e-6,
    known: Sequence[Relation] = (),
    exclusion_factor: float = 2.0,
    budget=None,
) -> CoincidenceReport:
    """Report tip pairs from different first-level pieces that coincide at ``depth``.

    A pair is *explained* when both of its points lie within
    ``exclusion_factor * threshold`` of the touching point of a relation
    in ``known``.
    """
    if depth < 2:
        raise DomainError("depth must be at least 2")
    if not 0 < rel_tol < 1:
        raise DomainError("rel_tol must lie in (0, 1)")
    c = np.array(as_ratios(alphabet))
    n = len(c)
    tails = tuple(range(1, n + 1))
    pts = tip_representatives(c, depth, tails, budget=budget)
    groups = np.arange(len(pts)) // (n ** (depth - 1) * n)
    thr = coincidence_threshold(c, depth, rel_tol)
    radius = exclusion_factor * thr
    touching = [eval_tip(r.left, c) for r in known]
    ii, jj = _close_pairs(pts, groups, thr)

    pairs = []
    for i, j in zip(ii.tolist(), jj.tolist()):
        a = Address(_word_of(i // n, depth, n), (tails[i % n],))
        b = Address(_word_of(j // n, depth, n), (tails[j % n],))
        if format_address(b) < format_address(a):
            a, b = b, a
        pi, pj = pts[i], pts[j]
        explained = any(abs(pi - t) < radius and abs(pj - t) < radius for t in touching)
        pairs.append(CoincidencePair(a, b, float(abs(pi - pj)), explained))
    pairs.sort(key=lambda p: (p.distance, format_address(p.left), format_address(p.right)))
    return CoincidenceReport(tuple(pairs), rel_tol, depth, thr, radius)
