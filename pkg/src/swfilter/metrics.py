"""Image quality metrics: PSNR and SSIM (peak value 1.0)."""

import math

import numpy as np
from scipy.ndimage import correlate

from .core import ensure_image

__all__ = ["psnr", "ssim"]

_SSIM_WIN = 11
_SSIM_SIGMA = 1.5
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """10*log10(1/MSE) in dB; +inf when the images are identical."""
    a = ensure_image(a)
    b = ensure_image(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def _ssim_window() -> np.ndarray:
    half = _SSIM_WIN // 2
    d = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(d[:, None] ** 2 + d[None, :] ** 2) / (2.0 * _SSIM_SIGMA ** 2))
    return g / g.sum()


def ssim(a: np.ndarray, b: np.ndarray) -> float:
    """Mean local SSIM over grayscale images.

    11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, dynamic range 1.0;
    averaged over the region where the window fits entirely inside the image.
    """
    a = ensure_image(a)
    b = ensure_image(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim != 2:
        raise ValueError("ssim requires grayscale images; convert color to luminance first")
    if min(a.shape) < _SSIM_WIN:
        raise ValueError(f"ssim needs images of at least {_SSIM_WIN}x{_SSIM_WIN} pixels")

    w = _ssim_window()
    half = _SSIM_WIN // 2
    crop = (slice(half, -half), slice(half, -half))

    def local(x):
        return correlate(x, w, mode="constant")[crop]

    mu_a = local(a)
    mu_b = local(b)
    var_a = local(a * a) - mu_a * mu_a
    var_b = local(b * b) - mu_b * mu_b
    cov = local(a * b) - mu_a * mu_b

    c1 = (_SSIM_K1 * 1.0) ** 2
    c2 = (_SSIM_K2 * 1.0) ** 2
    num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
    den = (mu_a ** 2 + mu_b ** 2 + c1) * (var_a + var_b + c2)
    return float(np.mean(num / den))
