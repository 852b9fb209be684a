"""Command-line interface: ``ctree <subcommand> ...``.

Exit status is 0 on success, 2 on usage errors (including malformed
addresses) and 1 on domain or runtime errors. Data goes to stdout or the
requested files; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .address import Alphabet, eval_tip, format_address, parse_address
from .dimension import path_dimension, similarity_dimension
from .errors import AddressParseError, ComplexTreeError
from .family import MIRROR_START, family_alphabet
from .geodesic import build_surface, refine_paths
from .presets import WINDOWS, alphabet_preset, load_config
from .render import RenderSpec, render_path_svg, render_scan_csv, render_scan_ppm, render_surface_obj, render_tree_svg
from .tree import Relation
from .unstable import DEFAULT_WINDOW, scan_unstable, solve_relation


class UsageError(Exception):
    pass


def _num(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def dumps17(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {dumps17(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps17(v) for v in obj) + "]"
    if isinstance(obj, (bool, int, float)):
        return _num(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def _complex_arg(text):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _pair_arg(text):
    try:
        a, b = (int(v) for v in text.split(","))
        return a, b
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NX,NY, got {text!r}") from None


def _write(data: bytes, path):
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _config(args):
    if args.config:
        return load_config(args.config)
    return {}, {}


def _alphabet(args):
    alphabets, _ = _config(args)
    if args.ratios:
        try:
            pairs = [p.split(",") for p in args.ratios.split(";")]
            return Alphabet(complex(float(re), float(im)) for re, im in pairs)
        except ValueError as exc:
            raise UsageError(f"bad --ratios {args.ratios!r}: {exc}") from None
    try:
        return alphabet_preset(args.alphabet, alphabets)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _window(args, default):
    _, windows = _config(args)
    if args.window is None:
        return default
    table = {**WINDOWS, **windows}
    if args.window in table:
        return table[args.window]
    try:
        vals = tuple(float(v) for v in args.window.split(","))
    except ValueError:
        vals = ()
    if len(vals) != 4:
        raise UsageError(f"--window must be a name or RE_MIN,RE_MAX,IM_MIN,IM_MAX, got {args.window!r}")
    return vals


def cmd_eval(args):
    addr = parse_address(args.address)
    value = eval_tip(addr, _alphabet(args))
    print(dumps17({"address": format_address(addr), "re": value.real, "im": value.imag}))


def cmd_family(args):
    s = family_alphabet(args.z)
    print(
        dumps17(
            {
                "z": [s.z.real, s.z.imag],
                "c2": [s.c2.real, s.c2.imag],
                "c3": [s.c3.real, s.c3.imag],
                "discriminant": [s.discriminant.real, s.discriminant.imag],
                "in_R": s.in_R,
                "in_M2": s.in_M2,
            }
        )
    )


def cmd_render_tree(args):
    spec = RenderSpec(kind="tree-svg", output=args.output, width=args.width)
    _write(render_tree_svg(_alphabet(args), args.depth, spec), args.output)


def cmd_scan(args):
    grid = scan_unstable(
        _window(args, DEFAULT_WINDOW), args.resolution, args.depth, args.rel_tol, args.workers
    )
    if args.csv is None and args.ppm is None:
        _write(render_scan_csv(grid), None)
    if args.csv is not None:
        _write(render_scan_csv(grid), args.csv)
    if args.ppm is not None:
        _write(render_scan_ppm(grid), args.ppm)


def cmd_solve(args):
    rel = Relation.parse(args.relation)
    result = solve_relation(rel, _window(args, WINDOWS["half"]), args.seed_step, args.tol)
    print(dumps17(result.to_json_list()))


def cmd_dim(args):
    if args.path:
        res = path_dimension(args.z, args.tol)
    else:
        res = similarity_dimension(family_alphabet(args.z).alphabet(), args.tol)
    print(dumps17({"value": res.value, "residual": res.residual, "iterations": res.iterations}))


def cmd_path(args):
    system = refine_paths(args.z, args.depth)
    spec = RenderSpec(kind="path-svg", output=args.output, width=args.width, stroke_width=1.5)
    _write(render_path_svg(system, spec), args.output)


def cmd_surface(args):
    mesh = build_surface(args.z_lo, args.z_hi, args.layers, args.depth, args.exclude_radius, args.workers)
    _write(render_surface_obj(mesh), args.output)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with extra alphabets and windows")

    alpha = argparse.ArgumentParser(add_help=False)
    g = alpha.add_mutually_exclusive_group()
    g.add_argument("--alphabet", default="golden", help="preset name: golden, fig0, half, or from --config")
    g.add_argument("--ratios", help="explicit ratios 're,im;re,im;...'")

    p = argparse.ArgumentParser(prog="ctree", description="Complex trees and the fern family.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common, alpha], help="evaluate phi at an address")
    s.add_argument("--address", required=True, help='e.g. "23(1)"')
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("family", parents=[common], help="family alphabet A(z) as JSON")
    s.add_argument("--z", type=_complex_arg, required=True, help="RE,IM (use --z=-0.3,0.1 for negatives)")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("render-tree", parents=[common, alpha], help="tree as SVG")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--width", type=int, default=800)
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_render_tree)

    s = sub.add_parser("scan", parents=[common], help="classify a parameter grid")
    s.add_argument("--window", help="name or RE_MIN,RE_MAX,IM_MIN,IM_MAX")
    s.add_argument("--resolution", type=_pair_arg, default=(400, 400), help="NX,NY")
    s.add_argument("--depth", type=int, default=10)
    s.add_argument("--rel-tol", type=float, default=1e-6)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--csv", help="CSV output path")
    s.add_argument("--ppm", help="PPM output path")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("solve", parents=[common], help="solve an extra relation for z")
    s.add_argument("--relation", required=True, help='e.g. "2313(1)~1222(1)"')
    s.add_argument("--window", help="name or RE_MIN,RE_MAX,IM_MIN,IM_MAX (default 0.2,0.9,-0.3,0.3)")
    s.add_argument("--seed-step", type=float, default=0.05)
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("dim", parents=[common], help="similarity or path dimension at z")
    s.add_argument("--z", type=_complex_arg, required=True)
    s.add_argument("--path", action="store_true", help="dimension of the C/D path instead")
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("path", parents=[common], help="curves C and D as SVG")
    s.add_argument("--z", type=_complex_arg, required=True)
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--width", type=int, default=800)
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_path)

    s = sub.add_parser("surface", parents=[common], help="stacked path surface as OBJ")
    s.add_argument("--z-lo", type=float, default=MIRROR_START + 0.005)
    s.add_argument("--z-hi", type=float, default=0.95)
    s.add_argument("--layers", type=int, default=64)
    s.add_argument("--depth", type=int, default=6)
    s.add_argument("--exclude-radius", type=float, default=0.02)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_surface)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (AddressParseError, UsageError) as exc:
        print(f"ctree {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ComplexTreeError, ArithmeticError, OSError) as exc:
        print(f"ctree {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
