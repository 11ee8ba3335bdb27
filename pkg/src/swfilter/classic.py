"""Centered-window baseline filters: BOX, GAU, MED, BIL, GUI.

Color images are filtered per channel; the bilateral range distance is
per-channel as well. Borders use replicate padding throughout.
"""

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.ndimage import correlate

from .core import ensure_image, integral_image, map_channels, rect_sums, replicate_pad

__all__ = [
    "FilterParams", "box_filter", "gaussian_filter", "median_filter",
    "bilateral_filter", "guided_filter",
]

# cap on the scratch block used by the sliding-window median (float64 samples)
_MEDIAN_BLOCK_ELEMS = 8_000_000


@dataclass(frozen=True)
class FilterParams:
    """Every kernel parameter in one place.

    r: window radius in pixels.
    sigma: Gaussian spatial sigma.
    sigma_s / sigma_r: bilateral spatial and range sigmas (range in
        normalized intensity units).
    eps: guided-filter regularizer (normalized intensity squared).
    iterations: repeat count for iterated smoothing.
    """
    r: int = 7
    sigma: float = 4.0
    sigma_s: float = 7.0
    sigma_r: float = 0.3
    eps: float = 0.1
    iterations: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.sigma <= 0 or self.sigma_s <= 0 or self.sigma_r <= 0:
            raise ValueError("sigmas must be > 0")
        if self.eps <= 0:
            raise ValueError("eps must be > 0")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


class BoxSums:
    """Window sums of one channel over a replicate-padded summed-area table.

    `extend` widens the anchor grid beyond the image so that window
    statistics can be evaluated for anchors up to `extend` pixels outside
    the border (reads are clamped, as everywhere else).
    """

    def __init__(self, ch: np.ndarray, pad: int):
        self.h, self.w = ch.shape
        self.pad = pad
        self.sat = integral_image(replicate_pad(ch, pad))

    def sums(self, rect, extend_rows: int = 0, extend_cols: int = 0,
             out: np.ndarray | None = None) -> np.ndarray:
        out_h = self.h + 2 * extend_rows
        out_w = self.w + 2 * extend_cols
        return rect_sums(self.sat, out_h, out_w,
                         self.pad - extend_rows, self.pad - extend_cols,
                         (rect[0], rect[1], rect[2], rect[3]), out=out)

    def means(self, rect, extend_rows: int = 0, extend_cols: int = 0) -> np.ndarray:
        count = (rect[1] - rect[0] + 1) * (rect[3] - rect[2] + 1)
        return self.sums(rect, extend_rows, extend_cols) / count


def gaussian_kernel(r: int, sigma: float) -> np.ndarray:
    """Unnormalized truncated Gaussian over the (2r+1)^2 window."""
    d = np.arange(-r, r + 1, dtype=np.float64)
    return np.exp(-(d[:, None] ** 2 + d[None, :] ** 2) / (2.0 * sigma * sigma))


def masked_kernel(kern: np.ndarray, rect=None) -> np.ndarray:
    """Zero the kernel outside `rect` (offsets) and renormalize to sum 1."""
    r = kern.shape[0] // 2
    k = kern.copy()
    if rect is not None:
        mask = np.zeros_like(k, dtype=bool)
        mask[r + rect[0]:r + rect[1] + 1, r + rect[2]:r + rect[3] + 1] = True
        k[~mask] = 0.0
    return k / k.sum()


def sliding_median(ch: np.ndarray, pad: int, rect) -> np.ndarray:
    """Median of the window `rect` around each pixel, replicate-padded.

    Even sample counts take the average of the two middle order statistics
    (numpy's median rule). Processed in row blocks to bound scratch memory.
    """
    h, w = ch.shape
    rh = rect[1] - rect[0] + 1
    rw = rect[3] - rect[2] + 1
    padded = replicate_pad(ch, pad)
    view = sliding_window_view(padded, (rh, rw))
    sub = view[pad + rect[0]:pad + rect[0] + h, pad + rect[2]:pad + rect[2] + w]
    out = np.empty((h, w), dtype=np.float64)
    block = max(1, _MEDIAN_BLOCK_ELEMS // max(1, w * rh * rw))
    for y0 in range(0, h, block):
        y1 = min(y0 + block, h)
        chunk = sub[y0:y1].reshape(y1 - y0, w, rh * rw)
        out[y0:y1] = np.median(chunk, axis=2)
    return out


# -- the five filters ---------------------------------------------------------


def box_filter(img: np.ndarray, r: int) -> np.ndarray:
    """Mean of the (2r+1)^2 neighborhood, via a summed-area table."""
    if r < 1:
        raise ValueError("r must be >= 1")

    def one(ch):
        return BoxSums(ch, r).means((-r, r, -r, r))

    return map_channels(img, one)


def gaussian_filter(img: np.ndarray, r: int, sigma: float) -> np.ndarray:
    """Normalized convolution with a truncated 2-D Gaussian."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    kern = masked_kernel(gaussian_kernel(r, sigma))
    return map_channels(img, lambda ch: correlate(ch, kern, mode="nearest"))


def median_filter(img: np.ndarray, r: int) -> np.ndarray:
    """Median of the (2r+1)^2 neighborhood."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return map_channels(img, lambda ch: sliding_median(ch, r, (-r, r, -r, r)))


def bilateral_filter(img: np.ndarray, r: int, sigma_s: float, sigma_r: float) -> np.ndarray:
    """Joint spatial/range Gaussian weights over the centered window."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if sigma_s <= 0 or sigma_r <= 0:
        raise ValueError("sigmas must be > 0")
    inv_s = -1.0 / (2.0 * sigma_s * sigma_s)
    inv_r = -1.0 / (2.0 * sigma_r * sigma_r)

    def one(ch):
        h, w = ch.shape
        padded = replicate_pad(ch, r)
        num = np.zeros((h, w), dtype=np.float64)
        den = np.zeros((h, w), dtype=np.float64)
        for dy in range(-r, r + 1):
            for dx in range(-r, r + 1):
                spatial = np.exp(inv_s * (dy * dy + dx * dx))
                shifted = padded[r + dy:r + dy + h, r + dx:r + dx + w]
                wgt = spatial * np.exp(inv_r * (shifted - ch) ** 2)
                num += wgt * shifted
                den += wgt
        return num / den

    return map_channels(img, one)


def _guided_ab(q: np.ndarray, g: np.ndarray, r: int, eps: float):
    """Per-window linear model maps a, b on the grid extended by r pixels."""
    rect = (-r, r, -r, r)
    sums_q = BoxSums(q, 2 * r)
    sums_g = sums_q if g is q else BoxSums(g, 2 * r)
    sums_gq = BoxSums(g * q, 2 * r)
    sums_gg = sums_gq if g is q else BoxSums(g * g, 2 * r)
    mq = sums_q.means(rect, r, r)
    mg = mq if g is q else sums_g.means(rect, r, r)
    mgq = sums_gq.means(rect, r, r)
    mgg = mgq if g is q else sums_gg.means(rect, r, r)
    var = mgg - mg * mg
    cov = mgq - mg * mq
    a = cov / (var + eps)
    b = mq - a * mg
    return a, b


def _valid_box_mean(m: np.ndarray, r: int) -> np.ndarray:
    """Centered (2r+1)^2 box mean of an extended map, shrinking it by r."""
    h = m.shape[0] - 2 * r
    w = m.shape[1] - 2 * r
    sat = integral_image(m)
    return rect_sums(sat, h, w, r, r, (-r, r, -r, r)) / (2 * r + 1) ** 2


def guided_filter(img: np.ndarray, guide: np.ndarray | None = None,
                  r: int = 7, eps: float = 0.1) -> np.ndarray:
    """Local linear model a*guide + b fit per window, averaged over all
    windows covering each pixel. Self-guided per channel when `guide` is None.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    img = ensure_image(img)
    if guide is not None:
        guide = ensure_image(guide)
        if guide.ndim != 2:
            raise ValueError("guide must be grayscale")
        if guide.shape != img.shape[:2]:
            raise ValueError(f"guide shape {guide.shape} != image {img.shape[:2]}")

    def one(ch):
        g = ch if guide is None else guide
        a, b = _guided_ab(ch, g, r, eps)
        return _valid_box_mean(a, r) * g + _valid_box_mean(b, r)

    return map_channels(img, one)
