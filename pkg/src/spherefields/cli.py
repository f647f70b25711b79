"""Command line interface.

Exit codes: 0 ok, 2 input error, 3 quadrature nonconvergence, 4 index undetermined.
Timing goes to stderr so stdout is byte-for-byte reproducible.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass, field

from . import analysis
from .descriptor import DescriptorError, load_descriptor
from .plot import write_svg
from .quadrature import ConvergenceError, QuadratureConfig

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGENCE, EXIT_INDEX = 0, 2, 3, 4


@dataclass
class OutputRecord:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    timing_ms: float = 0.0

    def lines(self):
        out = [f"command: {self.command}"]
        out += [f"input.{k}: {_fmt(v)}" for k, v in self.inputs.items()]
        out += [f"{k}: {_fmt(v)}" for k, v in self.results.items()]
        return out


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _config(args):
    return QuadratureConfig(
        rel_tol=args.rel_tol, abs_tol=args.abs_tol,
        max_depth=args.max_depth, pole_margin=args.pole_margin,
    )


def _config_inputs(cfg):
    return {"rel_tol": cfg.rel_tol, "abs_tol": cfg.abs_tol,
            "max_depth": cfg.max_depth, "pole_margin": cfg.pole_margin}


def cmd_volume(args):
    cfg = _config(args)
    fld = load_descriptor(args.descriptor, args.seed)
    vol = analysis.volume(fld, cfg)
    return OutputRecord("volume", {"descriptor": args.descriptor, **_config_inputs(cfg)}, {
        "volume": vol.value,
        "volume_error": vol.abs_error_estimate,
        "evaluations": vol.evaluations,
    })


def cmd_bound(args):
    cfg = _config(args)
    fld = load_descriptor(args.descriptor, args.seed)
    rep = analysis.bound_report(fld, cfg)
    results = {
        "index_north": rep.indexes.index_north,
        "index_south": rep.indexes.index_south,
        "k": rep.k,
        "volume": rep.volume.value,
        "volume_error": rep.volume.abs_error_estimate,
        "bound": rep.bound,
        "margin": rep.margin,
        "margin_error": rep.volume.abs_error_estimate,
        "status": "SATISFIED" if rep.satisfied else "VIOLATED",
        "attains_bound": rep.attains_bound,
    }
    if rep.note:
        results["note"] = rep.note
    return OutputRecord("bound", {"descriptor": args.descriptor, **_config_inputs(cfg)}, results)


def cmd_sweep(args):
    if args.k_min < 1:
        raise DescriptorError("k must be >= 1")
    cfg = _config(args)
    rows = analysis.sweep(args.k_min, args.k_max, cfg)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["k", "volume", "bound", "rel_gap"])
            for r in rows:
                writer.writerow([r.k, repr(r.volume), repr(r.bound), repr(r.rel_gap)])
    results = {}
    for r in rows:
        results[f"k={r.k}"] = (
            f"volume={r.volume:.10g} (+/- {r.abs_error_estimate:.3g}) "
            f"bound={r.bound:.10g} rel_gap={r.rel_gap:.3g}"
        )
    results["max_rel_gap"] = max(r.rel_gap for r in rows)
    inputs = {"k_min": args.k_min, "k_max": args.k_max, **_config_inputs(cfg)}
    if args.csv:
        inputs["csv"] = args.csv
    return OutputRecord("sweep", inputs, results)


def cmd_stokes(args):
    fld = load_descriptor(args.descriptor, args.seed)
    chk = analysis.stokes_check(fld, args.alpha, args.n_beta)
    return OutputRecord("stokes", {"descriptor": args.descriptor, "alpha": args.alpha,
                                   "n_beta": args.n_beta},
                        {"lhs": chk.lhs, "rhs": chk.rhs, "abs_diff": chk.abs_diff})


def cmd_plot(args):
    fld = load_descriptor(args.descriptor, args.seed)
    write_svg(args.svg, fld, args.hemisphere, args.density,
              title=f"{args.descriptor} ({args.hemisphere})")
    return OutputRecord("plot", {"descriptor": args.descriptor, "hemisphere": args.hemisphere,
                                 "density": args.density}, {"svg": args.svg})


def _angle(text):
    """Accept plain floats and the shorthand ``pi/6``, ``-pi/4``, ``0.5pi``."""
    t = text.strip().lower().replace(" ", "")
    try:
        return float(t)
    except ValueError:
        pass
    sign = -1.0 if t.startswith("-") else 1.0
    t = t.lstrip("+-")
    if "pi" not in t:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
    num, _, den = t.partition("/")
    coef = num.replace("*", "").replace("pi", "")
    try:
        value = (float(coef) if coef else 1.0) * math.pi / (float(den) if den else 1.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None
    return sign * value


def build_parser():
    defaults = QuadratureConfig()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=defaults.rel_tol)
    common.add_argument("--abs-tol", type=float, default=defaults.abs_tol)
    common.add_argument("--pole-margin", type=float, default=defaults.pole_margin)
    common.add_argument("--max-depth", type=int, default=defaults.max_depth)
    common.add_argument("--seed", type=int, default=None,
                        help="seed for descriptors with random bumps")

    parser = argparse.ArgumentParser(
        prog="spherefields",
        description="Volumes of unit vector fields on the sphere minus two antipodal points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="volume of a field")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("bound", parents=[common], help="compare the volume with pi L(eps_k)")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", parents=[common], help="minimiser family k_min..k_max")
    p.add_argument("k_min", type=int)
    p.add_argument("k_max", type=int)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stokes", parents=[common], help="connection-form integral along a parallel")
    p.add_argument("descriptor")
    p.add_argument("--alpha", type=_angle, default=0.0)
    p.add_argument("--n-beta", type=int, default=256)
    p.set_defaults(func=cmd_stokes)

    p = sub.add_parser("plot", parents=[common], help="SVG glyph plot of one hemisphere")
    p.add_argument("descriptor")
    p.add_argument("--svg", required=True)
    p.add_argument("--hemisphere", choices=("north", "south"), default="north")
    p.add_argument("--density", type=int, default=21)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        record = args.func(args)
    except analysis.IndexUndetermined as exc:
        print(f"error: index undetermined: {exc}", file=sys.stderr)
        return EXIT_INDEX
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DescriptorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    record.timing_ms = 1000.0 * (time.perf_counter() - start)
    print("\n".join(record.lines()))
    print(f"timing_ms: {record.timing_ms:.1f}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
