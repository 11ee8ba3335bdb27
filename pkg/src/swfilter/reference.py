"""Brute-force reference filters: per-pixel, per-window evaluation with
clamped reads and no acceleration structures.

These define ground truth for the fast paths. Keep images small (around
64x64 or less); everything here is deliberately slow and direct.
"""

import numpy as np

from .core import ensure_image
from .windows import SideWindow, enumerate_windows, window_rect

__all__ = ["naive_reference"]


def _clamped(ch, y0, y1, x0, x1):
    """Window samples [y0..y1] x [x0..x1] with coordinates clamped in range."""
    h, w = ch.shape
    rows = np.clip(np.arange(y0, y1 + 1), 0, h - 1)
    cols = np.clip(np.arange(x0, x1 + 1), 0, w - 1)
    return ch[np.ix_(rows, cols)]


def _window(ch, y, x, rect):
    return _clamped(ch, y + rect[0], y + rect[1], x + rect[2], x + rect[3])


def _spatial_weights(rect, sigma):
    dy = np.arange(rect[0], rect[1] + 1, dtype=np.float64)
    dx = np.arange(rect[2], rect[3] + 1, dtype=np.float64)
    return np.exp(-(dy[:, None] ** 2 + dx[None, :] ** 2) / (2.0 * sigma * sigma))


def _box_candidate(ch, y, x, rect, _):
    return float(np.mean(_window(ch, y, x, rect)))


def _median_candidate(ch, y, x, rect, _):
    return float(np.median(_window(ch, y, x, rect)))


def _gaussian_candidate(ch, y, x, rect, weights):
    win = _window(ch, y, x, rect)
    return float(np.sum(weights * win) / np.sum(weights))


def _bilateral_candidate(ch, y, x, rect, state):
    spatial, inv_r = state
    win = _window(ch, y, x, rect)
    wgt = spatial * np.exp(inv_r * (win - ch[y, x]) ** 2)
    return float(np.sum(wgt * win) / np.sum(wgt))


def _candidate_fn(kernel, rect, sigma=None, sigma_s=None, sigma_r=None):
    if kernel == "box":
        return _box_candidate, None
    if kernel == "median":
        return _median_candidate, None
    if kernel == "gaussian":
        return _gaussian_candidate, _spatial_weights(rect, sigma)
    if kernel == "bilateral":
        inv_r = -1.0 / (2.0 * sigma_r * sigma_r)
        return _bilateral_candidate, (_spatial_weights(rect, sigma_s), inv_r)
    raise ValueError(f"unknown kernel {kernel!r}")


def _ab(q, g, y, x, rect, eps):
    wq = _window(q, y, x, rect)
    wg = _window(g, y, x, rect)
    mq = wq.mean()
    mg = wg.mean()
    var = (wg * wg).mean() - mg * mg
    cov = (wg * wq).mean() - mg * mq
    a = cov / (var + eps)
    return a, mq - a * mg


def _ab_maps(q, g, rect, eps, ext_rows, ext_cols):
    """Per-anchor linear model, anchors extended past the border where the
    covering/sliding windows need them. Each entry is one direct evaluation."""
    h, w = q.shape
    a = np.empty((h + 2 * ext_rows, w + 2 * ext_cols), dtype=np.float64)
    b = np.empty_like(a)
    for yi, y in enumerate(range(-ext_rows, h + ext_rows)):
        for xi, x in enumerate(range(-ext_cols, w + ext_cols)):
            a[yi, xi], b[yi, xi] = _ab(q, g, y, x, rect, eps)
    return a, b


def _naive_classic(ch, kernel, r, sigma, sigma_s, sigma_r):
    h, w = ch.shape
    rect = (-r, r, -r, r)
    fn, state = _candidate_fn(kernel, rect, sigma, sigma_s, sigma_r)
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            out[y, x] = fn(ch, y, x, rect, state)
    return out


def _naive_guided(q, g, r, eps):
    h, w = q.shape
    a, b = _ab_maps(q, g, (-r, r, -r, r), eps, r, r)
    n = 2 * r + 1
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            # average a_k * g_i + b_k over the windows covering (y, x)
            out[y, x] = (a[y:y + n, x:x + n].mean() * g[y, x]
                         + b[y:y + n, x:x + n].mean())
    return out


def _naive_side(ch, kernel, r, sigma, sigma_s, sigma_r):
    h, w = ch.shape
    fns = []
    for _, rect in enumerate_windows(r):
        fn, state = _candidate_fn(kernel, rect, sigma, sigma_s, sigma_r)
        fns.append((rect, fn, state))
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            q = ch[y, x]
            best = None
            best_dist = None
            for rect, fn, state in fns:
                cand = fn(ch, y, x, rect, state)
                dist = (q - cand) ** 2
                if best_dist is None or dist < best_dist:
                    best, best_dist = cand, dist
            out[y, x] = best
    return out


def _naive_s_guided(q, g, r, eps):
    h, w = q.shape
    vertical = {SideWindow.L, SideWindow.R}
    horizontal = {SideWindow.U, SideWindow.D}
    maps = {}
    for window in SideWindow:
        rect = window_rect(window, r)
        ext_rows = r if window in vertical else 0
        ext_cols = r if window in horizontal else 0
        maps[window] = _ab_maps(q, g, rect, eps, ext_rows, ext_cols)
    n = 2 * r + 1
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            qi = q[y, x]
            gi = g[y, x]
            best = None
            best_dist = None
            for window in SideWindow:
                a, b = maps[window]
                if window in vertical:
                    # slide the window along its target-bearing column
                    cand = a[y:y + n, x].mean() * gi + b[y:y + n, x].mean()
                elif window in horizontal:
                    cand = a[y, x:x + n].mean() * gi + b[y, x:x + n].mean()
                else:
                    cand = a[y, x] * gi + b[y, x]
                dist = (qi - cand) ** 2
                if best_dist is None or dist < best_dist:
                    best, best_dist = cand, dist
            out[y, x] = best
    return out


def naive_reference(kernel: str, img: np.ndarray, r: int, *,
                    side_window: bool = False, guide: np.ndarray | None = None,
                    sigma: float = 4.0, sigma_s: float = 7.0,
                    sigma_r: float = 0.3, eps: float = 0.1) -> np.ndarray:
    """Ground-truth output of one (possibly side window) filter."""
    ch = ensure_image(img)
    if ch.ndim != 2:
        raise ValueError("the naive reference handles one channel at a time")
    if kernel == "guided":
        g = ch if guide is None else ensure_image(guide)
        if side_window:
            return _naive_s_guided(ch, g, r, eps)
        return _naive_guided(ch, g, r, eps)
    if side_window:
        return _naive_side(ch, kernel, r, sigma, sigma_s, sigma_r)
    return _naive_classic(ch, kernel, r, sigma, sigma_s, sigma_r)
