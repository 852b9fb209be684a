"""Mapping the unstable set M of the fern family.

Two routes are offered. :func:`solve_relation` imposes one extra tip
identity ``phi(a) = phi(b)`` on the family alphabet and solves it for the
parameter, giving exact points of M. :func:`scan_unstable` classifies a
parameter grid cell by cell with the analytic test for M2 and, failing
that, with finite-depth coincidence detection.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .address import Address, eval_tip, format_address
from .errors import BudgetExceededError, DomainError
from .family import family_arrays, family_ratios
from .tree import Relation, has_unexplained_coincidence

__all__ = [
    "Classification",
    "RelationRoot",
    "RelationRootResult",
    "ScanGrid",
    "DEFAULT_WINDOW",
    "base_relation_objects",
    "relation_residual",
    "muller",
    "solve_relation",
    "enumerate_relations",
    "classify_point",
    "scan_unstable",
]

#: Contains 1/tau, 1/2, both boundary landmarks and sqrt(2) - 1.
DEFAULT_WINDOW = (-0.5, 1.0, -0.65, 0.65)
DEDUPE_RADIUS = 1e-6
POLE_RADIUS = 1e-9


class Classification(enum.IntEnum):
    OutsideR = 0
    Stable = 1
    UnstableAnalytic = 2
    UnstableDetected = 3


def base_relation_objects():
    return (Relation.parse("23(1)~122(1)"), Relation.parse("32(1)~133(1)"))


def relation_residual(z: complex, relation: Relation) -> complex:
    """``phi(left) - phi(right)`` for the family alphabet ``A(z)``."""
    ratios = family_ratios(z)
    return eval_tip(relation.left, ratios) - eval_tip(relation.right, ratios)


def muller(func, x0, x1, x2, xtol=1e-15, max_iter=60):
    """Muller iteration for a complex root of ``func``.

    Returns the last iterate, or ``None`` when the iteration breaks down.
    """
    try:
        f0, f1, f2 = func(x0), func(x1), func(x2)
    except (ArithmeticError, DomainError):
        return None
    for _ in range(max_iter):
        if f2 == 0:
            return x2
        h1, h2 = x1 - x0, x2 - x1
        if h1 == 0 or h2 == 0 or h1 + h2 == 0:
            return None
        d1, d2 = (f1 - f0) / h1, (f2 - f1) / h2
        a = (d2 - d1) / (h2 + h1)
        b = a * h2 + d2
        root = cmath.sqrt(b * b - 4 * a * f2)
        den = b + root if abs(b + root) >= abs(b - root) else b - root
        if den == 0:
            return None
        dx = -2 * f2 / den
        x3 = x2 + dx
        if not cmath.isfinite(x3):
            return None
        try:
            f3 = func(x3)
        except (ArithmeticError, DomainError):
            return None
        x0, x1, x2 = x1, x2, x3
        f0, f1, f2 = f1, f2, f3
        if abs(dx) <= xtol * max(1.0, abs(x3)):
            break
    return x2


@dataclass(frozen=True)
class RelationRoot:
    z: complex
    residual: float
    in_R: bool


@dataclass(frozen=True)
class RelationRootResult:
    relation: Relation
    roots: tuple
    seeds_used: int

    def to_json_list(self):
        return [
            {"re": r.z.real, "im": r.z.imag, "residual": r.residual, "in_R": r.in_R}
            for r in self.roots
        ]


def _in_window(z, window):
    re_min, re_max, im_min, im_max = window
    return re_min <= z.real <= re_max and im_min <= z.imag <= im_max


def _seed_grid(window, step):
    re_min, re_max, im_min, im_max = window
    nx = int(math.floor((re_max - re_min) / step + 1e-9)) + 1
    ny = int(math.floor((im_max - im_min) / step + 1e-9)) + 1
    for j in range(ny):
        for i in range(nx):
            yield complex(re_min + i * step, im_min + j * step)


def solve_relation(
    relation: Relation,
    window=(0.2, 0.9, -0.3, 0.3),
    seed_step: float = 0.05,
    tol: float = 1e-12,
) -> RelationRootResult:
    """Parameters ``z`` in ``window`` at which ``relation`` holds for ``A(z)``.

    Muller's method is started from every seed of a grid with spacing
    ``seed_step``. Converged points are kept when ``|g(z)| < tol``, they
    lie in the window and away from the poles ``0`` and ``-1``.
    """
    re_min, re_max, im_min, im_max = window
    if not (re_min < re_max and im_min < im_max):
        raise DomainError("window must be nonempty")
    if seed_step <= 0 or tol <= 0:
        raise DomainError("seed_step and tol must be positive")

    def g(z):
        return relation_residual(z, relation)

    h = 0.25 * seed_step
    found = []
    seeds = 0
    for s in _seed_grid(window, seed_step):
        seeds += 1
        x = muller(g, s, s + h, s + 1j * h)
        if x is None or not _in_window(x, window):
            continue
        if abs(x) < POLE_RADIUS or abs(x + 1) < POLE_RADIUS:
            continue
        try:
            res = abs(g(x))
        except (ArithmeticError, DomainError):
            continue
        if res < tol:
            found.append((res, x))

    found.sort(key=lambda t: (t[0], t[1].real, t[1].imag))
    kept = []
    for res, x in found:
        if all(abs(x - y) > DEDUPE_RADIUS for _, y in kept):
            kept.append((res, x))
    roots = []
    for res, x in sorted(kept, key=lambda t: (t[1].real, t[1].imag)):
        _, c2, c3 = family_ratios(x)
        in_r = all(0 < abs(c) < 1 for c in (x, c2, c3))
        roots.append(RelationRoot(x, res, in_r))
    return RelationRootResult(relation, tuple(roots), seeds)


def _tip_addresses(max_preperiod, max_period, n):
    letters = range(1, n + 1)
    out = set()
    for lp in range(max_preperiod + 1):
        for pre in itertools.product(letters, repeat=lp):
            for lq in range(1, max_period + 1):
                for per in itertools.product(letters, repeat=lq):
                    out.add(Address(pre, per))
    return out


def enumerate_relations(max_preperiod: int, max_period: int, n: int = 3, budget: int = 10**6):
    """All relations between distinct canonical tips within the length bounds.

    The two defining relations of the family are left out. Order is by the
    canonical spelling of ``left`` and then ``right``.
    """
    if max_preperiod < 1 or max_period < 1:
        raise DomainError("bounds must be at least 1")
    approx = sum(n**lp for lp in range(max_preperiod + 1)) * sum(
        n**lq for lq in range(1, max_period + 1)
    )
    if approx * approx // 2 > budget:
        raise BudgetExceededError(f"about {approx * approx // 2} pairs, budget is {budget}")
    addresses = sorted(_tip_addresses(max_preperiod, max_period, n), key=format_address)
    base = {str(r) for r in base_relation_objects()}
    rels = []
    for i, a in enumerate(addresses):
        for b in addresses[i + 1 :]:
            if a.first_letter == b.first_letter:
                continue
            rel = Relation(a, b)
            if str(rel) not in base:
                rels.append(rel)
    rels.sort(key=lambda r: (format_address(r.left), format_address(r.right)))
    return rels


def _touching_points(ratios):
    return [eval_tip(r.left, ratios) for r in base_relation_objects()]


def _classify(z, c2, c3, in_r, in_m2, depth, rel_tol):
    if not in_r:
        return Classification.OutsideR
    if in_m2:
        return Classification.UnstableAnalytic
    ratios = (z, c2, c3)
    if has_unexplained_coincidence(ratios, depth, rel_tol, _touching_points(ratios)):
        return Classification.UnstableDetected
    return Classification.Stable


def classify_point(z: complex, depth: int = 10, rel_tol: float = 1e-6) -> Classification:
    """Classify a parameter.

    ``Stable`` only means that no extra coincidence was seen at this depth
    and tolerance.
    """
    z = complex(z)
    c2, c3, in_r, in_m2 = family_arrays(np.array([z]))
    return _classify(z, complex(c2[0]), complex(c3[0]), bool(in_r[0]), bool(in_m2[0]), depth, rel_tol)


@dataclass(frozen=True)
class ScanGrid:
    """Row-major classification codes; row 0 is the top row (``im_max``)."""

    window: tuple
    resolution: tuple
    cells: np.ndarray = field(repr=False)
    depth: int = 10
    rel_tol: float = 1e-6
    #: Parsed cell centers, kept so a CSV round trip reproduces the file.
    points: np.ndarray | None = field(default=None, repr=False, compare=False)

    def centers(self):
        """Arrays ``(re, im)`` of cell centers, each of shape ``(ny, nx)``."""
        if self.points is not None:
            return self.points.real, self.points.imag
        return _cell_centers(self.window, self.resolution)

    def count(self, code: Classification) -> int:
        return int(np.count_nonzero(self.cells == code))

    def to_csv(self) -> str:
        re, im = self.centers()
        lines = ["re,im,class\n"]
        names = [c.name for c in Classification]
        for x, y, k in zip(re.ravel(), im.ravel(), self.cells.ravel()):
            lines.append(f"{x:.17g},{y:.17g},{names[k]}\n")
        return "".join(lines)

    @classmethod
    def from_csv(cls, text: str, depth: int = 10, rel_tol: float = 1e-6) -> "ScanGrid":
        rows = text.strip().splitlines()
        if rows[0].strip() != "re,im,class":
            raise ValueError("missing 're,im,class' header")
        re, im, codes = [], [], []
        for row in rows[1:]:
            x, y, k = row.split(",")
            re.append(float(x))
            im.append(float(y))
            codes.append(Classification[k.strip()])
        nx = next((i for i, y in enumerate(im) if y != im[0]), len(im))
        ny = len(im) // nx
        re_arr = np.array(re).reshape(ny, nx)
        im_arr = np.array(im).reshape(ny, nx)
        dx = (re_arr[0, -1] - re_arr[0, 0]) / (nx - 1)
        dy = (im_arr[0, 0] - im_arr[-1, 0]) / (ny - 1)
        window = (
            re_arr[0, 0] - dx / 2,
            re_arr[0, -1] + dx / 2,
            im_arr[-1, 0] - dy / 2,
            im_arr[0, 0] + dy / 2,
        )
        cells = np.array(codes, dtype=np.int8).reshape(ny, nx)
        return cls(window, (nx, ny), cells, depth, rel_tol, re_arr + 1j * im_arr)


def _cell_centers(window, resolution):
    re_min, re_max, im_min, im_max = window
    nx, ny = resolution
    dx = (re_max - re_min) / nx
    dy = (im_max - im_min) / ny
    re = re_min + (np.arange(nx) + 0.5) * dx
    im = im_max - (np.arange(ny) + 0.5) * dy
    return np.broadcast_to(re, (ny, nx)), np.broadcast_to(im[:, None], (ny, nx))


def _classify_row(args):
    z_row, depth, rel_tol = args
    c2, c3, in_r, in_m2 = family_arrays(z_row)
    out = np.empty(len(z_row), dtype=np.int8)
    for k in range(len(z_row)):
        out[k] = _classify(
            complex(z_row[k]), complex(c2[k]), complex(c3[k]), in_r[k], in_m2[k], depth, rel_tol
        )
    return out


def scan_unstable(
    window=DEFAULT_WINDOW,
    resolution=(400, 400),
    depth: int = 10,
    rel_tol: float = 1e-6,
    workers: int = 1,
) -> ScanGrid:
    """Classify every cell center of a parameter grid.

    Rows are independent, so ``workers > 1`` fans them out to a thread
    pool; the merged grid does not depend on the schedule.
    """
    nx, ny = resolution
    if nx < 2 or ny < 2:
        raise DomainError("resolution must be at least 2x2")
    re_min, re_max, im_min, im_max = window
    if not (re_min < re_max and im_min < im_max):
        raise DomainError("window must be nonempty")
    re, im = _cell_centers(window, resolution)
    z = re + 1j * im
    jobs = [(z[j], depth, rel_tol) for j in range(ny)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_classify_row, jobs))
    else:
        rows = [_classify_row(job) for job in jobs]
    return ScanGrid(tuple(window), (nx, ny), np.vstack(rows), depth, rel_tol)
