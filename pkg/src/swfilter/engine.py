"""Side window filtering: evaluate a kernel on all eight side windows and
keep, per pixel, the candidate closest to the input.

Each kernel has a candidate builder returning the eight per-window outputs
of one channel in canonical order; `swf_select` then picks the candidate
with minimal squared distance to the input, breaking ties by window order.
"""

import numpy as np
from scipy.ndimage import correlate

from .classic import BoxSums, gaussian_kernel, masked_kernel, sliding_median
from .core import (ensure_image, map_channels_selected, rect_sums,
                   replicate_pad)
from .windows import SideWindow, enumerate_windows, window_rect

__all__ = [
    "swf_select", "s_box", "s_gaussian", "s_median", "s_bilateral", "s_guided",
    "iterate", "selection_to_image",
    "box_side_candidates", "gaussian_side_candidates", "median_side_candidates",
    "bilateral_side_candidates", "guided_side_candidates",
]


def swf_select(img: np.ndarray, candidates: np.ndarray):
    """Pick, per pixel, the candidate with minimal (q - I_n)^2.

    `candidates` is stacked along axis 0 in canonical window order; the
    first minimum wins on ties. Returns (output, selection map).
    """
    img = np.asarray(img, dtype=np.float64)
    if candidates.shape[1:] != img.shape:
        raise ValueError(
            f"candidate shape {candidates.shape[1:]} != input shape {img.shape}")
    best = candidates[0].copy()
    best_dist = (best - img) ** 2
    sel = np.zeros(img.shape, dtype=np.uint8)
    for n in range(1, candidates.shape[0]):
        cand = candidates[n]
        dist = (cand - img) ** 2
        closer = dist < best_dist
        np.copyto(best, cand, where=closer)
        np.copyto(best_dist, dist, where=closer)
        sel[closer] = n
    return best, sel


def box_side_candidates(ch: np.ndarray, r: int) -> np.ndarray:
    """Per-window means via one shared summed-area table."""
    if r < 1:
        raise ValueError("r must be >= 1")
    sums = BoxSums(ch, r)
    cands = np.empty((8, ch.shape[0], ch.shape[1]), dtype=np.float64)
    for i, (_, rect) in enumerate(enumerate_windows(r)):
        sums.sums(rect, out=cands[i])
        cands[i] /= rect.size
    return cands


_SBOX_BAND_BYTES = 1 << 21  # keep the per-band working set inside the cache


def _s_box_channel(ch: np.ndarray, r: int):
    """Fused candidates-plus-selection pass, processed in row bands.

    Bitwise identical to swf_select over box_side_candidates: the same
    rect-sum arithmetic and a strict-less update that keeps the first
    minimum in canonical order. Banding only changes memory locality.
    """
    h, w = ch.shape
    sums = BoxSums(ch, r)
    rects = [rect for _, rect in enumerate_windows(r)]
    best = np.empty_like(ch)
    best_dist = np.empty_like(ch)
    sel = np.zeros(ch.shape, dtype=np.uint8)
    band = max(1, _SBOX_BAND_BYTES // (w * ch.itemsize))
    cand = np.empty((band, w), dtype=np.float64)
    dist = np.empty((band, w), dtype=np.float64)
    closer = np.empty((band, w), dtype=bool)
    for y0 in range(0, h, band):
        y1 = min(y0 + band, h)
        bh = y1 - y0
        rows = slice(y0, y1)
        for i, rect in enumerate(rects):
            c = rect_sums(sums.sat, bh, w, r + y0, r, rect, out=cand[:bh])
            c /= rect.size
            d = np.subtract(c, ch[rows], out=dist[:bh])
            d *= d
            if i == 0:
                best[rows] = c
                best_dist[rows] = d
            else:
                m = np.less(d, best_dist[rows], out=closer[:bh])
                best[rows] = np.where(m, c, best[rows])
                np.minimum(best_dist[rows], d, out=best_dist[rows])
                sel[rows] = np.where(m, np.uint8(i), sel[rows])
    return best, sel


def gaussian_side_candidates(ch: np.ndarray, r: int, sigma: float) -> np.ndarray:
    """Centered Gaussian truncated to each window and renormalized."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    kern = gaussian_kernel(r, sigma)
    cands = np.empty((8, ch.shape[0], ch.shape[1]), dtype=np.float64)
    for i, (_, rect) in enumerate(enumerate_windows(r)):
        cands[i] = correlate(ch, masked_kernel(kern, rect), mode="nearest")
    return cands


def median_side_candidates(ch: np.ndarray, r: int) -> np.ndarray:
    if r < 1:
        raise ValueError("r must be >= 1")
    cands = np.empty((8, ch.shape[0], ch.shape[1]), dtype=np.float64)
    for i, (_, rect) in enumerate(enumerate_windows(r)):
        cands[i] = sliding_median(ch, r, rect)
    return cands


def bilateral_side_candidates(ch: np.ndarray, r: int, sigma_s: float,
                              sigma_r: float) -> np.ndarray:
    """Bilateral weights restricted and renormalized per window.

    Each offset's contribution is computed once and accumulated into every
    window that contains the offset, in a fixed order.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if sigma_s <= 0 or sigma_r <= 0:
        raise ValueError("sigmas must be > 0")
    h, w = ch.shape
    inv_s = -1.0 / (2.0 * sigma_s * sigma_s)
    inv_r = -1.0 / (2.0 * sigma_r * sigma_r)
    padded = replicate_pad(ch, r)
    rects = [rect for _, rect in enumerate_windows(r)]
    num = np.zeros((8, h, w), dtype=np.float64)
    den = np.zeros((8, h, w), dtype=np.float64)
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            members = [i for i, rect in enumerate(rects) if rect.contains(dy, dx)]
            spatial = np.exp(inv_s * (dy * dy + dx * dx))
            shifted = padded[r + dy:r + dy + h, r + dx:r + dx + w]
            wgt = spatial * np.exp(inv_r * (shifted - ch) ** 2)
            contrib = wgt * shifted
            for i in members:
                num[i] += contrib
                den[i] += wgt
    return num / den


def _running_mean_axis0(m: np.ndarray, r: int) -> np.ndarray:
    """Mean over the 2r+1 rows [y, y+2r] of an extended map."""
    csum = np.zeros((m.shape[0] + 1, m.shape[1]), dtype=np.float64)
    np.cumsum(m, axis=0, out=csum[1:])
    n = 2 * r + 1
    return (csum[n:] - csum[:-n]) / n


def guided_side_candidates(ch: np.ndarray, guide: np.ndarray, r: int,
                           eps: float) -> np.ndarray:
    """Sliding-window side candidates for the guided kernel.

    For L/R/U/D the window slides along the side holding the target pixel,
    giving 2r+1 (a_k, b_k) pairs whose averages form the candidate; each
    corner window contributes its single pair. Anchors may fall outside the
    image; their windows read clamped samples like everywhere else.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    h, w = ch.shape
    sums_q = BoxSums(ch, 2 * r)
    sums_g = sums_q if guide is ch else BoxSums(guide, 2 * r)
    sums_gq = BoxSums(guide * ch, 2 * r)
    sums_gg = sums_gq if guide is ch else BoxSums(guide * guide, 2 * r)

    def ab(rect, ext_rows, ext_cols):
        mq = sums_q.means(rect, ext_rows, ext_cols)
        mg = mq if guide is ch else sums_g.means(rect, ext_rows, ext_cols)
        mgq = sums_gq.means(rect, ext_rows, ext_cols)
        mgg = mgq if guide is ch else sums_gg.means(rect, ext_rows, ext_cols)
        a = (mgq - mg * mq) / ((mgg - mg * mg) + eps)
        return a, mq - a * mg

    cands = np.empty((8, h, w), dtype=np.float64)
    for i, window in enumerate(SideWindow):
        rect = window_rect(window, r)
        if window in (SideWindow.L, SideWindow.R):
            a, b = ab(rect, r, 0)
            a_bar = _running_mean_axis0(a, r)
            b_bar = _running_mean_axis0(b, r)
        elif window in (SideWindow.U, SideWindow.D):
            a, b = ab(rect, 0, r)
            a_bar = _running_mean_axis0(a.T, r).T
            b_bar = _running_mean_axis0(b.T, r).T
        else:
            a_bar, b_bar = ab(rect, 0, 0)
        cands[i] = a_bar * guide + b_bar
    return cands


# -- the five side window filters ---------------------------------------------


def s_box(img: np.ndarray, r: int):
    """Side window box filter. Returns (output, selection map)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return map_channels_selected(img, lambda ch: _s_box_channel(ch, r))


def s_gaussian(img: np.ndarray, r: int, sigma: float):
    """Side window Gaussian filter."""
    return map_channels_selected(
        img, lambda ch: swf_select(ch, gaussian_side_candidates(ch, r, sigma)))


def s_median(img: np.ndarray, r: int):
    """Side window median filter."""
    return map_channels_selected(
        img, lambda ch: swf_select(ch, median_side_candidates(ch, r)))


def s_bilateral(img: np.ndarray, r: int, sigma_s: float, sigma_r: float):
    """Side window bilateral filter."""
    return map_channels_selected(
        img, lambda ch: swf_select(ch, bilateral_side_candidates(ch, r, sigma_s, sigma_r)))


def s_guided(img: np.ndarray, guide: np.ndarray | None = None,
             r: int = 7, eps: float = 0.1):
    """Side window guided filter (sliding-window scheme).

    Self-guided per channel when `guide` is None; an explicit guide must be
    grayscale and is shared by all channels.
    """
    img = ensure_image(img)
    if guide is not None:
        guide = ensure_image(guide)
        if guide.ndim != 2:
            raise ValueError("guide must be grayscale")
        if guide.shape != img.shape[:2]:
            raise ValueError(f"guide shape {guide.shape} != image {img.shape[:2]}")

    def one(ch):
        g = ch if guide is None else guide
        return swf_select(ch, guided_side_candidates(ch, g, r, eps))

    return map_channels_selected(img, one)


def iterate(filter_fn, img: np.ndarray, n: int) -> np.ndarray:
    """n-fold application of a filter; selection is recomputed each pass."""
    if n < 1:
        raise ValueError("iteration count must be >= 1")
    out = ensure_image(img)
    for _ in range(n):
        out = filter_fn(out)
        if isinstance(out, tuple):
            out = out[0]
    return out


def selection_to_image(sel: np.ndarray) -> np.ndarray:
    """Render a selection map as an 8-level grayscale image for inspection."""
    return np.asarray(sel, dtype=np.float64) / 7.0
