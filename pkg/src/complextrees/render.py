"""Deterministic SVG, PPM and OBJ emitters.

All emitters return ``bytes`` and format coordinates with a fixed number
of decimals, so identical inputs give byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .address import AlphabetLike, as_ratios
from .errors import DomainError
from .geodesic import PathSystem, SurfaceMesh
from .tree import _check_budget, tip_representatives
from .unstable import Classification, ScanGrid

__all__ = [
    "RenderSpec",
    "LETTER_COLORS",
    "SCAN_PALETTE",
    "render_tree_svg",
    "render_tipset_svg",
    "render_path_svg",
    "render_scan_ppm",
    "render_scan_csv",
    "render_surface_obj",
    "read_ppm",
]

#: Stroke colors for letters 1, 2, 3, ... (cycled beyond the list).
LETTER_COLORS = ("#d62728", "#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f", "#17becf")

SCAN_PALETTE = {
    Classification.OutsideR: (255, 255, 255),
    Classification.Stable: (245, 222, 179),
    Classification.UnstableAnalytic: (128, 128, 128),
    Classification.UnstableDetected: (0, 0, 0),
}

KINDS = ("tree-svg", "tipset-svg", "scan-ppm", "scan-csv", "path-svg", "surface-obj")
MAX_PIXELS = 8192


@dataclass(frozen=True)
class RenderSpec:
    """Output options. ``viewport`` is ``(x_min, x_max, y_min, y_max)`` in the plane;
    ``None`` fits the drawing with a 5% margin."""

    kind: str = "tree-svg"
    output: str | None = None
    viewport: tuple | None = None
    width: int = 800
    height: int | None = None
    stroke_width: float = 4.0
    point_radius: float = 0.6
    palette: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown render kind {self.kind!r}")
        if self.viewport is not None:
            x0, x1, y0, y1 = self.viewport
            if not (x0 < x1 and y0 < y1):
                raise DomainError("viewport must be nonempty")
        if not 0 < self.width <= MAX_PIXELS or (
            self.height is not None and not 0 < self.height <= MAX_PIXELS
        ):
            raise DomainError(f"image size must be in 1..{MAX_PIXELS}")


def _fit_viewport(points, spec):
    if spec.viewport is not None:
        return spec.viewport
    x0, x1 = float(points.real.min()), float(points.real.max())
    y0, y1 = float(points.imag.min()), float(points.imag.max())
    span = max(x1 - x0, y1 - y0, 1e-12)
    m = 0.05 * span
    return (x0 - m, x1 + m, y0 - m, y1 + m)


class _Canvas:
    def __init__(self, viewport, spec):
        self.x0, x1, self.y0, self.y1 = viewport
        self.w = spec.width
        self.h = spec.height or max(1, round(spec.width * (self.y1 - self.y0) / (x1 - self.x0)))
        self.sx = self.w / (x1 - self.x0)
        self.sy = self.h / (self.y1 - self.y0)

    def xy(self, p):
        return (p.real - self.x0) * self.sx, (self.y1 - p.imag) * self.sy

    def header(self):
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w}" height="{self.h}" '
            f'viewBox="0 0 {self.w} {self.h}">\n'
            f'<rect width="{self.w}" height="{self.h}" fill="#ffffff"/>\n'
        )


def render_tree_svg(alphabet: AlphabetLike, depth: int, spec: RenderSpec | None = None, budget=None) -> bytes:
    """One segment per parent/child pair, colored by the child's letter.

    Stroke width is ``spec.stroke_width * |prod(parent word)|``; segments are
    emitted level by level in lexicographic order.
    """
    spec = spec or RenderSpec()
    c = np.array(as_ratios(alphabet))
    n = len(c)
    _check_budget(sum(n**k for k in range(depth + 1)), budget)
    levels = [np.ones(1, dtype=complex)]
    prods = [np.ones(1, dtype=complex)]
    for _ in range(depth):
        # child index = parent * n + (letter - 1): lexicographic order
        prods.append((prods[-1][:, None] * c[None, :]).ravel())
        levels.append(levels[-1].repeat(n) + prods[-1])
    allpts = np.concatenate(levels)
    canvas = _Canvas(_fit_viewport(allpts, spec), spec)
    colors = spec.palette.get("letters", LETTER_COLORS)
    out = [canvas.header()]
    rx, ry = canvas.xy(levels[0][0])
    out.append(f'<circle cx="{rx:.6f}" cy="{ry:.6f}" r="{spec.stroke_width:.6f}" fill="#000000"/>\n')
    for k in range(1, depth + 1):
        parents = levels[k - 1].repeat(n)
        widths = np.abs(prods[k - 1]).repeat(n) * spec.stroke_width
        for idx, (p, q, wd) in enumerate(zip(parents, levels[k], widths)):
            x1, y1 = canvas.xy(p)
            x2, y2 = canvas.xy(q)
            color = colors[(idx % n) % len(colors)]
            out.append(
                f'<line x1="{x1:.6f}" y1="{y1:.6f}" x2="{x2:.6f}" y2="{y2:.6f}" '
                f'stroke="{color}" stroke-width="{wd:.6f}" stroke-linecap="round"/>\n'
            )
    out.append("</svg>\n")
    return "".join(out).encode("ascii")


def render_tipset_svg(alphabet: AlphabetLike, depth: int, spec: RenderSpec | None = None, budget=None) -> bytes:
    """Dots at the tips ``phi(w (t))`` of depth ``depth``, colored by first letter."""
    spec = spec or RenderSpec(kind="tipset-svg")
    c = as_ratios(alphabet)
    n = len(c)
    pts = tip_representatives(c, depth, budget=budget)
    canvas = _Canvas(_fit_viewport(pts, spec), spec)
    colors = spec.palette.get("letters", LETTER_COLORS)
    block = len(pts) // n
    out = [canvas.header()]
    for j in range(n):
        out.append(f'<g fill="{colors[j % len(colors)]}">\n')
        for p in pts[j * block : (j + 1) * block]:
            x, y = canvas.xy(p)
            out.append(f'<circle cx="{x:.6f}" cy="{y:.6f}" r="{spec.point_radius:.6f}"/>\n')
        out.append("</g>\n")
    out.append("</svg>\n")
    return "".join(out).encode("ascii")


def _polyline(canvas, pts, color, width):
    coords = " ".join("{:.6f},{:.6f}".format(*canvas.xy(p)) for p in pts)
    return (
        f'<polyline points="{coords}" fill="none" stroke="{color}" '
        f'stroke-width="{width:.6f}" stroke-linejoin="round"/>\n'
    )


def render_path_svg(system: PathSystem, spec: RenderSpec | None = None) -> bytes:
    """``C`` and ``D`` as two polylines plus markers at the three anchors."""
    spec = spec or RenderSpec(kind="path-svg", stroke_width=1.5)
    union = system.union()
    canvas = _Canvas(_fit_viewport(union, spec), spec)
    colors = spec.palette.get("curves", ("#1f77b4", "#d62728"))
    out = [canvas.header()]
    out.append(_polyline(canvas, system.curveC, colors[0], spec.stroke_width))
    out.append(_polyline(canvas, system.curveD, colors[1], spec.stroke_width))
    for p in system.anchors:
        x, y = canvas.xy(p)
        out.append(f'<circle cx="{x:.6f}" cy="{y:.6f}" r="{2 * spec.stroke_width:.6f}" fill="#000000"/>\n')
    out.append("</svg>\n")
    return "".join(out).encode("ascii")


def render_scan_ppm(grid: ScanGrid, spec: RenderSpec | None = None) -> bytes:
    """Binary P6 image, one pixel per cell, top row first."""
    palette = dict(SCAN_PALETTE)
    if spec is not None:
        palette.update(spec.palette.get("classes", {}))
    lut = np.zeros((len(Classification), 3), dtype=np.uint8)
    for code, rgb in palette.items():
        lut[int(code)] = rgb
    nx, ny = grid.resolution
    header = f"P6\n{nx} {ny}\n255\n".encode("ascii")
    return header + lut[grid.cells.astype(np.intp)].tobytes()


def read_ppm(data: bytes) -> np.ndarray:
    """Decode a P6 image written by :func:`render_scan_ppm` to ``(h, w, 3)`` uint8."""
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6" or parts[2] != b"255":
        raise ValueError("not an 8-bit P6 image")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)


def render_scan_csv(grid: ScanGrid) -> bytes:
    return grid.to_csv().encode("ascii")


def render_surface_obj(mesh: SurfaceMesh) -> bytes:
    return mesh.to_obj().encode("ascii")
