"""Shared array conventions: float64 rasters, replicate padding, integral images.

Images are numpy arrays, (H, W) for grayscale or (H, W, 3) for color,
row-major with interleaved channels. LDR content lives in [0, 1]; HDR
content is unbounded positive.
"""

import numpy as np


def ensure_image(img) -> np.ndarray:
    """Validate and return an image as a float64 array."""
    a = np.asarray(img, dtype=np.float64)
    if a.ndim == 2:
        return a
    if a.ndim == 3 and a.shape[2] in (1, 3):
        return a[:, :, 0] if a.shape[2] == 1 else a
    raise ValueError(f"expected (H, W) or (H, W, 3) image, got shape {a.shape}")


def replicate_pad(img: np.ndarray, radius: int) -> np.ndarray:
    """Pad the spatial axes by `radius` pixels, replicating the border.

    Reading the padded array at (y + radius, x + radius) for
    y in [-radius, H-1+radius] equals the source at the clamped coordinate.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if img.ndim == 2:
        return np.pad(img, radius, mode="edge")
    return np.pad(img, ((radius, radius), (radius, radius), (0, 0)), mode="edge")


def integral_image(a: np.ndarray) -> np.ndarray:
    """Summed-area table with a zero top row and left column.

    S[i+1, j+1] = sum of a[:i+1, :j+1], so any rectangle sum is four lookups.
    """
    h, w = a.shape
    s = np.zeros((h + 1, w + 1), dtype=np.float64)
    np.cumsum(np.cumsum(a, axis=0), axis=1, out=s[1:, 1:])
    return s


def rect_sums(sat: np.ndarray, out_h: int, out_w: int, anchor_row: int,
              anchor_col: int, rect, out: np.ndarray | None = None) -> np.ndarray:
    """Window sums over a padded SAT for a grid of anchors.

    The anchor of output pixel (y, x) sits at padded coordinate
    (y + anchor_row, x + anchor_col); the window covers the inclusive
    offsets `rect` = (row_lo, row_hi, col_lo, col_hi) around the anchor.
    """
    r0, r1, c0, c1 = rect
    i0 = anchor_row + r0
    i1 = anchor_row + r1 + 1
    j0 = anchor_col + c0
    j1 = anchor_col + c1 + 1
    out = np.subtract(sat[i1:i1 + out_h, j1:j1 + out_w],
                      sat[i0:i0 + out_h, j1:j1 + out_w], out=out)
    out -= sat[i1:i1 + out_h, j0:j0 + out_w]
    out += sat[i0:i0 + out_h, j0:j0 + out_w]
    return out


def map_channels(img: np.ndarray, fn) -> np.ndarray:
    """Apply a single-channel filter independently per channel."""
    img = ensure_image(img)
    if img.ndim == 2:
        return fn(img)
    out = np.empty_like(img)
    for c in range(img.shape[2]):
        out[:, :, c] = fn(img[:, :, c])
    return out


def map_channels_selected(img: np.ndarray, fn):
    """Per-channel application of a filter that also returns a selection map."""
    img = ensure_image(img)
    if img.ndim == 2:
        return fn(img)
    out = np.empty_like(img)
    sel = np.empty(img.shape, dtype=np.uint8)
    for c in range(img.shape[2]):
        out[:, :, c], sel[:, :, c] = fn(img[:, :, c])
    return out, sel
