"""Colorization by optimization with side window neighborhoods.

Chroma is propagated from scribbled pixels by minimizing the total squared
residual U(i) - sum_j w_ij U(j), with intensity-similarity weights over
each pixel's chosen side window. Side windows stop the affinities from
crossing edges, which suppresses color leakage.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.linalg import LinearOperator, cg

from .color import rgb_to_yuv, yuv_to_rgb
from .core import ensure_image
from .engine import s_box
from .io import load_rgba
from .windows import SideWindow, enumerate_windows

__all__ = ["ScribbleSet", "load_scribbles", "select_side_neighborhoods",
           "build_affinities", "colorize"]

CG_RTOL = 1e-6


@dataclass(frozen=True)
class ScribbleSet:
    """Chroma constraints: where `mask` is set, (u, v) pin the output."""
    mask: np.ndarray
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        if not (self.mask.shape == self.u.shape == self.v.shape):
            raise ValueError("scribble mask and chroma shapes must match")
        if self.mask.any():
            chroma = np.stack([self.u[self.mask], self.v[self.mask]])
            if not np.all(np.isfinite(chroma)):
                raise ValueError("scribble chroma must be finite")


def load_scribbles(path) -> ScribbleSet:
    """Read scribbles from an RGBA image: alpha > 0 marks a constraint,
    chroma comes from the pixel's RGB."""
    rgba = load_rgba(path)
    mask = rgba[:, :, 3] > 0
    yuv = rgb_to_yuv(rgba[:, :, :3])
    return ScribbleSet(mask=mask, u=yuv[:, :, 1], v=yuv[:, :, 2])


def select_side_neighborhoods(y: np.ndarray, r: int) -> np.ndarray:
    """Per-pixel side window choice using the box kernel selection."""
    y = ensure_image(y)
    if y.ndim != 2:
        raise ValueError("intensity channel must be grayscale")
    return s_box(y, r)[1]


def build_affinities(y: np.ndarray, sel: np.ndarray | None, r: int,
                     sigma: float) -> sparse.csr_matrix:
    """Row-stochastic affinity matrix over side window (or centered) neighborhoods.

    Weights are exp(-(Y(i)-Y(j))^2 / (2 sigma^2)) over the in-bounds pixels of
    pixel i's window, excluding i, renormalized per row. `sel` is the side
    window choice per pixel; None uses the full centered window instead. An
    image-corner pixel whose chosen corner window holds no other in-bounds
    pixel falls back to the nearest feasible window by the same criterion.
    """
    y = ensure_image(y)
    if y.ndim != 2:
        raise ValueError("intensity channel must be grayscale")
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    h, w = y.shape
    n = h * w
    inv = -1.0 / (2.0 * sigma * sigma)
    flat = np.arange(n).reshape(h, w)
    yy, xx = np.mgrid[0:h, 0:w]

    if sel is None:
        groups = [((-r, r, -r, r), np.ones((h, w), dtype=bool))]
    else:
        sel = _feasible_selection(sel, r, h, w)
        groups = [(rect, sel == int(win)) for win, rect in enumerate_windows(r)]

    rows, cols, vals = [], [], []
    for rect, members in groups:
        if not members.any():
            continue
        iy, ix = yy[members], xx[members]
        src = flat[members]
        yv = y[members]
        for dy in range(rect[0], rect[1] + 1):
            for dx in range(rect[2], rect[3] + 1):
                if dy == 0 and dx == 0:
                    continue
                jy = iy + dy
                jx = ix + dx
                ok = (jy >= 0) & (jy < h) & (jx >= 0) & (jx < w)
                if not ok.any():
                    continue
                j = flat[jy[ok], jx[ok]]
                wgt = np.exp(inv * (yv[ok] - y[jy[ok], jx[ok]]) ** 2)
                rows.append(src[ok])
                cols.append(j)
                vals.append(wgt)
    mat = sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n))
    row_sums = np.asarray(mat.sum(axis=1)).ravel()
    if np.any(row_sums <= 0):
        raise ValueError("affinity row with no neighbors")
    inv_sums = sparse.diags(1.0 / row_sums)
    return inv_sums @ mat


def _feasible_selection(sel: np.ndarray, r: int, h: int, w: int) -> np.ndarray:
    """Remap image-corner pixels whose corner window has no other in-bounds pixel.

    Only the four image corners can be affected; each falls back to the
    side window L/R/U/D pointing inward, which always has neighbors.
    """
    sel = sel.copy()
    fallback = {
        (0, 0, int(SideWindow.NW)): SideWindow.L,
        (0, w - 1, int(SideWindow.NE)): SideWindow.R,
        (h - 1, 0, int(SideWindow.SW)): SideWindow.L,
        (h - 1, w - 1, int(SideWindow.SE)): SideWindow.R,
    }
    for (cy, cx, win), repl in fallback.items():
        if sel[cy, cx] == win:
            sel[cy, cx] = int(repl)
    return sel


def _solve_constrained(wmat: sparse.csr_matrix, mask: np.ndarray,
                       values: np.ndarray) -> np.ndarray:
    """Minimize sum_i (x_i - sum_j w_ij x_j)^2 with x pinned to `values`
    where `mask` is set.

    The sum runs over every pixel; a scribbled pixel's own residual anchors
    its neighborhood, which keeps the system well posed even though the
    side window neighbor relation is not symmetric. Constraints go by
    variable elimination, then conjugate gradient on the normal equations
    of the remaining tall system (relative residual 1e-6, iteration cap
    10x the pixel count).
    """
    n = wmat.shape[0]
    fixed = mask.ravel()
    free = ~fixed
    x = np.zeros(n, dtype=np.float64)
    x[fixed] = values.ravel()[fixed]
    if not free.any():
        return x
    m = (sparse.identity(n, format="csr") - wmat).tocsc()
    a = m[:, free].tocsr()
    rhs = -(m[:, fixed] @ x[fixed])
    b = a.T @ rhs
    nf = int(free.sum())
    normal = LinearOperator((nf, nf), matvec=lambda v: a.T @ (a @ v),
                            dtype=np.float64)
    solution, info = cg(normal, b, rtol=CG_RTOL, atol=0.0, maxiter=10 * n)
    if info > 0:
        residual = float(np.linalg.norm(a @ solution - rhs))
        warnings.warn(f"colorization CG hit the iteration cap; residual {residual:.3e}",
                      RuntimeWarning)
    x[free] = solution
    return x


def colorize(y: np.ndarray, scribbles: ScribbleSet, r: int = 3,
             sigma: float = 0.05, side_windows: bool = True) -> np.ndarray:
    """Propagate scribbled chroma over an intensity channel; returns RGB.

    `side_windows=False` uses centered neighborhoods instead, for
    comparison against the leakage-prone baseline.
    """
    y = ensure_image(y)
    if y.ndim != 2:
        raise ValueError("intensity channel must be grayscale")
    if scribbles.mask.shape != y.shape:
        raise ValueError(f"scribble shape {scribbles.mask.shape} != image {y.shape}")
    if not scribbles.mask.any():
        raise ValueError("at least one scribble pixel is required")
    sel = select_side_neighborhoods(y, r) if side_windows else None
    wmat = build_affinities(y, sel, r, sigma)
    u = _solve_constrained(wmat, scribbles.mask, scribbles.u).reshape(y.shape)
    v = _solve_constrained(wmat, scribbles.mask, scribbles.v).reshape(y.shape)
    return np.clip(yuv_to_rgb(np.stack([y, u, v], axis=-1)), 0.0, 1.0)
