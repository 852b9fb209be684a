"""The shortest-path curves C and D and their stacked surface.

Starting from the segments ``C0 = [phi(2(1)), phi((1))]`` and
``D0 = [phi((1)), phi(3(1))]`` the curves are refined by

    C <- f2(D) + f1(f2(C)) + f1(C)
    D <- f1(D) + f1(f3(D)) + f3(C)

where ``+`` joins polylines end to start. The joints match because of the
defining relations ``23(1) ~ 122(1)`` and ``32(1) ~ 133(1)``; each shared
joint is stored once. At depth ``k`` both curves have ``3**k`` segments.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .family import family_alphabet

__all__ = [
    "PathSystem",
    "SurfaceMesh",
    "refine_paths",
    "path_length",
    "refinement_distance",
    "normalize_to_anchors",
    "build_surface",
    "JOINT_TOL",
]

log = logging.getLogger(__name__)

#: Absolute tolerance for merging the shared joint of two pieces.
JOINT_TOL = 1e-9


@dataclass(frozen=True)
class PathSystem:
    z: complex
    depth: int
    curveC: np.ndarray = field(repr=False)
    curveD: np.ndarray = field(repr=False)
    anchors: tuple
    #: Largest gap seen at any merged joint, over all refinement levels.
    junction_residual: float = 0.0

    def union(self) -> np.ndarray:
        """``C`` followed by ``D`` with the shared point ``phi((1))`` once."""
        return np.concatenate([self.curveC, self.curveD[1:]])


def _anchors(c1, c2, c3):
    p1 = 1 / (1 - c1)
    return 1 + c2 * p1, p1, 1 + c3 * p1


def _join(pieces, gaps):
    out = [pieces[0]]
    for prev, nxt in zip(pieces, pieces[1:]):
        gap = abs(prev[-1] - nxt[0])
        if gap > JOINT_TOL:
            raise DomainError(f"pieces do not join (gap {gap:.3g})")
        gaps.append(gap)
        out.append(nxt[1:])
    return np.concatenate(out)


def refine_paths(z: complex, depth: int) -> PathSystem:
    """Polyline approximations of ``C`` and ``D`` after ``depth`` substitutions."""
    if depth < 0:
        raise DomainError("depth must be non-negative")
    sample = family_alphabet(z)
    if not sample.in_R:
        raise DomainError(f"z = {z} lies outside the region R")
    c1, c2, c3 = sample.ratios
    p21, p1, p31 = _anchors(c1, c2, c3)
    C = np.array([p21, p1])
    D = np.array([p1, p31])
    gaps = [0.0]
    for _ in range(depth):
        f2C = 1 + c2 * C
        f3D = 1 + c3 * D
        newC = _join([1 + c2 * D, 1 + c1 * f2C, 1 + c1 * C], gaps)
        newD = _join([1 + c1 * D, 1 + c1 * f3D, 1 + c3 * C], gaps)
        C, D = newC, newD
        C[0], C[-1] = p21, p1
        D[0], D[-1] = p1, p31
    return PathSystem(complex(z), depth, C, D, (p21, p1, p31), max(gaps))


def path_length(system: PathSystem):
    """Euclidean lengths ``(len C, len D)``."""
    return (
        float(np.abs(np.diff(system.curveC)).sum()),
        float(np.abs(np.diff(system.curveD)).sum()),
    )


def _segment_distance(p, a, b):
    ab = b - a
    denom = (ab * ab.conjugate()).real
    t = np.where(denom > 0, ((p - a) * ab.conjugate()).real / np.where(denom > 0, denom, 1), 0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(p - (a + t * ab))


def refinement_distance(coarse: np.ndarray, fine: np.ndarray) -> float:
    """Hausdorff-type distance between successive refinements of a curve.

    Each segment of ``coarse`` is replaced by three segments of ``fine``
    with the same endpoints, so the distance is the largest offset of the
    two new vertices from their parent segment. This bounds the
    Hausdorff distance between the polylines from above.
    """
    if len(fine) - 1 != 3 * (len(coarse) - 1):
        raise DomainError("fine polyline is not a one-step refinement of coarse")
    a = coarse[:-1]
    b = coarse[1:]
    inner1 = fine[1::3]
    inner2 = fine[2::3]
    return float(max(_segment_distance(inner1, a, b).max(), _segment_distance(inner2, a, b).max()))


def normalize_to_anchors(points: np.ndarray, start: complex, end: complex) -> np.ndarray:
    """Orientation-preserving similarity sending ``start -> 0`` and ``end -> 1``."""
    return (points - start) / (end - start)


@dataclass(frozen=True)
class SurfaceMesh:
    vertices: np.ndarray = field(repr=False)
    triangles: np.ndarray = field(repr=False)
    layers: int
    points_per_layer: int
    heights: tuple
    skipped: int = 0

    def to_obj(self) -> str:
        """Wavefront OBJ text: ``v`` lines then 1-based ``f`` lines."""
        lines = [f"v {x:.6f} {y:.6f} {h:.6f}\n" for x, y, h in self.vertices]
        lines += [f"f {i + 1} {j + 1} {k + 1}\n" for i, j, k in self.triangles]
        return "".join(lines)


def _strip_triangles(layers, per_layer):
    tris = []
    for L in range(layers - 1):
        lo = L * per_layer
        hi = lo + per_layer
        for i in range(per_layer - 1):
            a, b = lo + i, lo + i + 1
            c, d = hi + i + 1, hi + i
            tris.append((a, b, c))
            tris.append((a, c, d))
    return np.array(tris, dtype=np.int64).reshape(-1, 3)


def _layer(z, depth):
    system = refine_paths(z, depth)
    p21, _, p31 = system.anchors
    pts = normalize_to_anchors(system.union(), p21, p31)
    layer = np.column_stack([pts.real, pts.imag, np.full(len(pts), z)])
    layer[0, :2] = (0.0, 0.0)
    layer[-1, :2] = (1.0, 0.0)
    return layer


def build_surface(
    z_lo: float,
    z_hi: float,
    layers: int,
    depth: int,
    exclude_radius: float = 0.02,
    workers: int = 1,
) -> SurfaceMesh:
    """Stack normalized ``C u D`` curves at heights ``h = z`` for real ``z``.

    ``layers`` parameters are sampled evenly on ``[z_lo, z_hi]``. Samples
    within ``exclude_radius`` of the pole at 0, or outside the region R,
    are skipped and counted in ``skipped``. Consecutive kept
    layers are joined by a triangulated strip. Layers are independent;
    ``workers > 1`` computes them on a thread pool and merges in order.
    """
    lower = 1 - np.sqrt(2.0)
    if not lower < z_lo < z_hi < 1:
        raise DomainError("need 1 - sqrt(2) < z_lo < z_hi < 1")
    if layers < 2:
        raise DomainError("need at least two layers")
    kept = []
    skipped = 0
    for z in np.linspace(z_lo, z_hi, layers):
        z = float(z)
        if abs(z) < exclude_radius or not family_alphabet(z).in_R:
            skipped += 1
            continue
        kept.append(z)
    if skipped:
        log.warning("skipped %d of %d surface layers", skipped, layers)
    if len(kept) < 2:
        raise DomainError("fewer than two layers remain inside R")
    per_layer = 2 * 3**depth + 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verts = list(pool.map(lambda z: _layer(z, depth), kept))
    else:
        verts = [_layer(z, depth) for z in kept]
    vertices = np.vstack(verts)
    return SurfaceMesh(
        vertices, _strip_triangles(len(kept), per_layer), len(kept), per_layer, tuple(kept), skipped
    )
