"""Side window filtering: edge-preserving variants of classic image filters.

A kernel is evaluated over eight windows whose side or corner touches the
target pixel; per pixel, the candidate closest to the input wins. The
package bundles the five filters and their centered baselines, the
application pipelines built on them (smoothing, denoising, enhancement,
HDR tone mapping, colorization), and an analytic self-test suite.
"""

from .apps import TonemapParams, build_filter, denoise_preset, enhance, hdr_tonemap
from .classic import (FilterParams, bilateral_filter, box_filter,
                      gaussian_filter, guided_filter, median_filter)
from .color import luminance, rgb_to_yuv, yuv_to_rgb
from .colorize import (ScribbleSet, build_affinities, colorize, load_scribbles,
                       select_side_neighborhoods)
from .core import replicate_pad
from .edges import (EdgeModel, expected_box, expected_side_window,
                    expected_swf_box, gen_edge_image)
from .engine import (iterate, s_bilateral, s_box, s_gaussian, s_guided,
                     s_median, selection_to_image, swf_select)
from .io import ImageDecodeError, ImageFormatError, load_image, save_image
from .metrics import psnr, ssim
from .reference import naive_reference
from .selftest import run_selftest
from .windows import SideWindow, WindowRect, enumerate_windows, window_rect

__version__ = "0.1.0"

__all__ = [
    "FilterParams", "TonemapParams", "EdgeModel", "ScribbleSet",
    "SideWindow", "WindowRect", "window_rect", "enumerate_windows",
    "load_image", "save_image", "ImageFormatError", "ImageDecodeError",
    "rgb_to_yuv", "yuv_to_rgb", "luminance", "replicate_pad",
    "psnr", "ssim",
    "box_filter", "gaussian_filter", "median_filter", "bilateral_filter",
    "guided_filter",
    "swf_select", "s_box", "s_gaussian", "s_median", "s_bilateral", "s_guided",
    "iterate", "selection_to_image",
    "build_filter", "enhance", "hdr_tonemap", "denoise_preset",
    "select_side_neighborhoods", "build_affinities", "colorize",
    "load_scribbles",
    "gen_edge_image", "expected_box", "expected_side_window", "expected_swf_box",
    "naive_reference", "run_selftest",
]
