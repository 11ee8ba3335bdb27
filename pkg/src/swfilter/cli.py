"""Command line front end.

Subcommands: filter, enhance, tonemap, colorize, metrics, selftest, bench.
Usage errors exit 2 (argparse); IO and format errors exit 1 with a message
on stderr. Metrics and bench print machine-parseable `key value` lines.
"""

import argparse
import os
import sys
import time

import numpy as np

from . import engine
from .apps import KERNELS, TonemapParams, build_filter, enhance, hdr_tonemap
from .classic import FilterParams
from .color import luminance
from .colorize import colorize, load_scribbles
from .engine import iterate, selection_to_image
from .io import load_image, save_image
from .metrics import psnr, ssim
from .selftest import run_selftest


def _add_kernel_flags(p, default_r=7):
    p.add_argument("--kernel", choices=KERNELS, default="box")
    p.add_argument("--side-window", action="store_true",
                   help="use the side window variant of the kernel")
    p.add_argument("--r", type=int, default=default_r, help="window radius")
    p.add_argument("--sigma", type=float, default=4.0, help="Gaussian sigma")
    p.add_argument("--sigma-s", type=float, default=7.0, help="bilateral spatial sigma")
    p.add_argument("--sigma-r", type=float, default=0.3, help="bilateral range sigma")
    p.add_argument("--eps", type=float, default=0.1, help="guided filter regularizer")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--guide", help="grayscale guide image for the guided kernel")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="swfilter",
        description="Side window filtering: edge-preserving image filters and "
                    "the applications built on them.")
    parser.add_argument("--threads", type=int, default=os.cpu_count(),
                        help="cap on internal parallelism (outputs do not "
                             "depend on it; current filters are single-threaded)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="run one kernel over an image")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_kernel_flags(p)
    p.add_argument("--selection-map",
                   help="also write the last pass's side window choices as an "
                        "8-level gray image")

    p = sub.add_parser("enhance", help="detail amplification: q + a*(q - smoothed)")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_kernel_flags(p)
    p.add_argument("--alpha", type=float, default=5.0)

    p = sub.add_parser("tonemap", help="HDR tone mapping with a bilateral base layer")
    p.add_argument("-i", "--input", required=True, help="PFM radiance map")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--gamma", type=float, default=0.45)
    p.add_argument("--r", type=int, default=5)
    p.add_argument("--sigma-s", type=float, default=5.0)
    p.add_argument("--sigma-r", type=float, default=0.3)
    p.add_argument("--classic", action="store_true",
                   help="use the centered bilateral filter for the base layer")

    p = sub.add_parser("colorize", help="propagate scribbled chroma over a gray image")
    p.add_argument("-y", "--gray", required=True, help="intensity image")
    p.add_argument("-s", "--scribbles", required=True,
                   help="RGBA image; alpha > 0 marks constrained pixels")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--centered", action="store_true",
                   help="use centered neighborhoods (leakage-prone baseline)")

    p = sub.add_parser("metrics", help="print quality metrics, one `name value` line each")
    p.add_argument("--psnr", action="store_true")
    p.add_argument("--ssim", action="store_true")
    p.add_argument("images", nargs=2, metavar=("A", "B"))

    p = sub.add_parser("selftest", help="analytic closed-form and oracle equivalence suite")
    p.add_argument("--dump", metavar="DIR", help="also write the edge images as PGM")

    p = sub.add_parser("bench", help="time a classic kernel against its side window variant")
    p.add_argument("--size", type=float, default=1.0, help="image size in megapixels")
    p.add_argument("--kernel", choices=KERNELS, default="box")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _params_from_args(args) -> FilterParams:
    return FilterParams(r=args.r, sigma=args.sigma, sigma_s=args.sigma_s,
                        sigma_r=args.sigma_r, eps=args.eps,
                        iterations=args.iterations)


def _load_guide(args):
    return load_image(args.guide) if getattr(args, "guide", None) else None


def _cmd_filter(args) -> int:
    img = load_image(args.input)
    params = _params_from_args(args)
    fn = build_filter(args.kernel, params, args.side_window, _load_guide(args))
    out = iterate(fn, img, params.iterations)
    save_image(out, args.output)
    if args.selection_map:
        if not args.side_window:
            raise ValueError("--selection-map requires --side-window")
        sel_fn = {
            "box": lambda im: engine.s_box(im, params.r)[1],
            "gaussian": lambda im: engine.s_gaussian(im, params.r, params.sigma)[1],
            "median": lambda im: engine.s_median(im, params.r)[1],
            "bilateral": lambda im: engine.s_bilateral(
                im, params.r, params.sigma_s, params.sigma_r)[1],
            "guided": lambda im: engine.s_guided(
                im, _load_guide(args), params.r, params.eps)[1],
        }[args.kernel]
        last_input = iterate(fn, img, params.iterations - 1) \
            if params.iterations > 1 else img
        save_image(selection_to_image(sel_fn(last_input)), args.selection_map)
    return 0


def _cmd_enhance(args) -> int:
    img = load_image(args.input)
    params = _params_from_args(args)
    fn = build_filter(args.kernel, params, args.side_window, _load_guide(args))
    save_image(enhance(img, fn, args.alpha), args.output)
    return 0


def _cmd_tonemap(args) -> int:
    hdr = load_image(args.input)
    params = TonemapParams(gamma=args.gamma, r=args.r, sigma_s=args.sigma_s,
                           sigma_r=args.sigma_r, side_window=not args.classic)
    save_image(hdr_tonemap(hdr, params), args.output)
    return 0


def _cmd_colorize(args) -> int:
    gray = load_image(args.gray)
    if gray.ndim != 2:
        gray = luminance(gray)
    scribbles = load_scribbles(args.scribbles)
    out = colorize(gray, scribbles, r=args.r, sigma=args.sigma,
                   side_windows=not args.centered)
    save_image(out, args.output)
    return 0


def _cmd_metrics(args) -> int:
    if not (args.psnr or args.ssim):
        raise ValueError("pass at least one of --psnr / --ssim")
    a = load_image(args.images[0])
    b = load_image(args.images[1])
    if args.psnr:
        print(f"psnr {psnr(a, b):.6f}")
    if args.ssim:
        print(f"ssim {ssim(luminance(a), luminance(b)):.6f}")
    return 0


def _cmd_selftest(args) -> int:
    return 0 if run_selftest(dump_dir=args.dump) else 1


def _time_best(fn, repeats: int) -> float:
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def run_benchmark(kernel: str, megapixels: float = 1.0, repeats: int = 3,
                  seed: int = 0) -> dict:
    """Wall-time a classic kernel and its side window variant on a random image."""
    side = int(round((megapixels * 1e6) ** 0.5))
    rng = np.random.default_rng(seed)
    img = rng.random((side, side))
    params = FilterParams()
    classic_fn = build_filter(kernel, params, side_window=False)
    swf_fn = build_filter(kernel, params, side_window=True)
    t_classic = _time_best(lambda: classic_fn(img), repeats)
    t_swf = _time_best(lambda: swf_fn(img), repeats)
    return {
        "kernel": kernel,
        "pixels": side * side,
        "classic_seconds": t_classic,
        "swf_seconds": t_swf,
        "ratio": t_swf / t_classic,
    }


def _cmd_bench(args) -> int:
    result = run_benchmark(args.kernel, args.size, args.repeats, args.seed)
    print(f"kernel {result['kernel']}")
    print(f"pixels {result['pixels']}")
    print(f"classic_seconds {result['classic_seconds']:.6f}")
    print(f"swf_seconds {result['swf_seconds']:.6f}")
    print(f"ratio {result['ratio']:.3f}")
    return 0


_COMMANDS = {
    "filter": _cmd_filter,
    "enhance": _cmd_enhance,
    "tonemap": _cmd_tonemap,
    "colorize": _cmd_colorize,
    "metrics": _cmd_metrics,
    "selftest": _cmd_selftest,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"swfilter: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
