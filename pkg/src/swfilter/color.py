"""RGB <-> YUV conversion (BT.601 full range, zero-centered chroma)."""

import numpy as np

from .core import ensure_image

__all__ = ["rgb_to_yuv", "yuv_to_rgb", "luminance"]

# BT.601 luma weights; chroma scaled so U = 0.492(B-Y), V = 0.877(R-Y).
_WR, _WG, _WB = 0.299, 0.587, 0.114
_KU, _KV = 0.492, 0.877


def luminance(img: np.ndarray) -> np.ndarray:
    """BT.601 luma of a 3-channel image (grayscale passes through)."""
    img = ensure_image(img)
    if img.ndim == 2:
        return img
    return _WR * img[:, :, 0] + _WG * img[:, :, 1] + _WB * img[:, :, 2]


def rgb_to_yuv(img: np.ndarray) -> np.ndarray:
    img = ensure_image(img)
    if img.ndim != 3:
        raise ValueError("rgb_to_yuv requires a 3-channel image")
    r, g, b = img[:, :, 0], img[:, :, 1], img[:, :, 2]
    y = _WR * r + _WG * g + _WB * b
    return np.stack([y, _KU * (b - y), _KV * (r - y)], axis=-1)


def yuv_to_rgb(img: np.ndarray) -> np.ndarray:
    img = ensure_image(img)
    if img.ndim != 3:
        raise ValueError("yuv_to_rgb requires a 3-channel image")
    y, u, v = img[:, :, 0], img[:, :, 1], img[:, :, 2]
    r = y + v / _KV
    b = y + u / _KU
    g = (y - _WR * r - _WB * b) / _WG
    return np.stack([r, g, b], axis=-1)
