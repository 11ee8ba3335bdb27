"""Application pipelines on top of the filters: detail enhancement,
HDR tone mapping, and the iterated denoising preset."""

from dataclasses import dataclass

import numpy as np

from . import classic, engine
from .classic import FilterParams
from .color import luminance
from .core import ensure_image
from .engine import iterate

__all__ = ["build_filter", "enhance", "TonemapParams", "hdr_tonemap", "denoise_preset"]

KERNELS = ("box", "gaussian", "median", "bilateral", "guided")


def build_filter(kernel: str, params: FilterParams, side_window: bool = False,
                 guide: np.ndarray | None = None):
    """Closure applying one kernel (classic or side window) with `params`.

    Side window closures return only the image; use the engine functions
    directly when the selection map is needed.
    """
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")
    p = params
    if side_window:
        table = {
            "box": lambda img: engine.s_box(img, p.r)[0],
            "gaussian": lambda img: engine.s_gaussian(img, p.r, p.sigma)[0],
            "median": lambda img: engine.s_median(img, p.r)[0],
            "bilateral": lambda img: engine.s_bilateral(img, p.r, p.sigma_s, p.sigma_r)[0],
            "guided": lambda img: engine.s_guided(img, guide, p.r, p.eps)[0],
        }
    else:
        table = {
            "box": lambda img: classic.box_filter(img, p.r),
            "gaussian": lambda img: classic.gaussian_filter(img, p.r, p.sigma),
            "median": lambda img: classic.median_filter(img, p.r),
            "bilateral": lambda img: classic.bilateral_filter(img, p.r, p.sigma_s, p.sigma_r),
            "guided": lambda img: classic.guided_filter(img, guide, p.r, p.eps),
        }
    return table[kernel]


def enhance(img: np.ndarray, filter_fn, alpha: float = 5.0) -> np.ndarray:
    """Detail amplification: q + alpha * (q - filtered(q)).

    The result is left unclamped; LDR clamping happens at save time.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    img = ensure_image(img)
    base = filter_fn(img)
    if isinstance(base, tuple):
        base = base[0]
    return img + alpha * (img - base)


@dataclass(frozen=True)
class TonemapParams:
    """Compression factor and the base (side window) bilateral setup.

    gamma = 1 is the degenerate no-compression limit (pure exposure
    normalization); compression proper needs gamma < 1.
    """
    gamma: float = 0.45
    r: int = 5
    sigma_s: float = 5.0
    sigma_r: float = 0.3
    side_window: bool = True

    def __post_init__(self):
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.sigma_s <= 0 or self.sigma_r <= 0:
            raise ValueError("sigmas must be > 0")


def hdr_tonemap(hdr: np.ndarray, params: TonemapParams = TonemapParams()) -> np.ndarray:
    """Compress an HDR radiance map for LDR display.

    Log10 luminance is split into a base (bilateral-filtered) and a detail
    layer; the base is scaled by gamma, recombined, shifted so the maximum
    maps to 1.0, and colors are rebuilt from the original ratios.
    """
    hdr = ensure_image(hdr)
    if hdr.ndim != 3:
        raise ValueError("hdr_tonemap requires a 3-channel radiance map")
    lum = luminance(hdr)
    if np.any(lum <= 0):
        raise ValueError("tone mapping needs strictly positive luminance")
    log_lum = np.log10(lum)
    if params.side_window:
        base = engine.s_bilateral(log_lum, params.r, params.sigma_s, params.sigma_r)[0]
    else:
        base = classic.bilateral_filter(log_lum, params.r, params.sigma_s, params.sigma_r)
    detail = log_lum - base
    compressed = params.gamma * base + detail
    compressed -= compressed.max()
    lum_out = 10.0 ** compressed
    ratio = lum_out / lum
    return np.clip(hdr * ratio[:, :, None], 0.0, 1.0)


def denoise_preset(img: np.ndarray, kernel: str = "box", r: int = 10,
                   iterations: int = 5, sigma: float = 5.0,
                   sigma_s: float = 10.0, sigma_r: float = 0.3,
                   eps: float = 0.1) -> np.ndarray:
    """Iterated side window filtering for denoising."""
    params = FilterParams(r=r, sigma=sigma, sigma_s=sigma_s, sigma_r=sigma_r,
                          eps=eps, iterations=iterations)
    return iterate(build_filter(kernel, params, side_window=True), img, iterations)
