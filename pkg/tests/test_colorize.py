import numpy as np
import pytest
from PIL import Image

from swfilter.color import rgb_to_yuv
from swfilter.colorize import (ScribbleSet, build_affinities, colorize,
                               load_scribbles, select_side_neighborhoods)
from swfilter.engine import s_box
from swfilter.windows import SideWindow


def _scribble(shape, points):
    """ScribbleSet pinning (u, v) at the given (y, x) -> (u, v) points."""
    mask = np.zeros(shape, dtype=bool)
    u = np.zeros(shape)
    v = np.zeros(shape)
    for (y, x), (cu, cv) in points.items():
        mask[y, x] = True
        u[y, x] = cu
        v[y, x] = cv
    return ScribbleSet(mask=mask, u=u, v=v)


def _two_region():
    y = np.full((24, 24), 0.2)
    y[:, 12:] = 0.8
    scr = _scribble(y.shape, {(12, 4): (-0.05, 0.18), (12, 20): (0.06, -0.25)})
    return y, scr


# -- selection ----------------------------------------------------------------


def test_constant_intensity_selects_first_window():
    sel = select_side_neighborhoods(np.full((10, 10), 0.5), 3)
    assert np.all(sel == int(SideWindow.L))


def test_step_selects_left_family():
    y = np.zeros((20, 20))
    y[:, 10:] = 1.0
    sel = select_side_neighborhoods(y, 3)
    assert sel[10, 9] == int(SideWindow.L)  # first zero-distance candidate


def test_selection_matches_s_box():
    rng = np.random.default_rng(70)
    y = rng.random((16, 16))
    assert np.array_equal(select_side_neighborhoods(y, 3), s_box(y, 3)[1])


# -- affinities ----------------------------------------------------------------


def test_affinity_rows_sum_to_one():
    rng = np.random.default_rng(71)
    y = rng.random((12, 12))
    sel = select_side_neighborhoods(y, 2)
    w = build_affinities(y, sel, 2, 0.1)
    sums = np.asarray(w.sum(axis=1)).ravel()
    assert np.max(np.abs(sums - 1.0)) < 1e-9
    assert w.min() >= 0.0


def test_affinity_uniform_on_constant():
    y = np.full((12, 12), 0.5)
    sel = select_side_neighborhoods(y, 2)
    w = build_affinities(y, sel, 2, 0.1).tocsr()
    # interior pixel: L window has (2r+1)(r+1) = 15 pixels, 14 neighbors
    row = w[np.ravel_multi_index((6, 6), y.shape)]
    assert row.nnz == 14
    assert np.allclose(row.data, 1.0 / 14)


def test_affinity_contrast_kills_weight():
    y = np.zeros((9, 9))
    y[4, 5] = 1.0
    w = build_affinities(y, None, 1, 0.1).tocsr()
    row = w[np.ravel_multi_index((4, 4), y.shape)].toarray().ravel()
    bright = row[np.ravel_multi_index((4, 5), y.shape)]
    dark = row[np.ravel_multi_index((4, 3), y.shape)]
    # weight ratio e^0 : e^-50
    assert bright == pytest.approx(dark * np.exp(-50.0), rel=1e-9)


def test_affinity_neighbors_stay_inside_window():
    rng = np.random.default_rng(72)
    y = rng.random((10, 10))
    sel = select_side_neighborhoods(y, 2)
    w = build_affinities(y, sel, 2, 0.1).tocsr()
    from swfilter.colorize import _feasible_selection
    from swfilter.windows import window_rect
    used = _feasible_selection(sel, 2, 10, 10)
    for i in range(100):
        yi, xi = divmod(i, 10)
        rect = window_rect(SideWindow(int(used[yi, xi])), 2)
        for j in w[i].indices:
            yj, xj = divmod(int(j), 10)
            assert (yj, xj) != (yi, xi)
            assert rect.contains(yj - yi, xj - xi)


# -- solver ---------------------------------------------------------------------


def test_constant_intensity_single_scribble():
    y = np.full((12, 12), 0.5)
    scr = _scribble(y.shape, {(6, 6): (0.1, -0.2)})
    out = colorize(y, scr, r=3, sigma=0.05)
    yuv = rgb_to_yuv(out)
    assert np.max(np.abs(yuv[:, :, 1] - 0.1)) < 1e-6
    assert np.max(np.abs(yuv[:, :, 2] + 0.2)) < 1e-6


def test_scribble_constraints_exact():
    rng = np.random.default_rng(73)
    y = rng.random((10, 10)) * 0.5 + 0.25
    scr = _scribble(y.shape, {(2, 3): (0.08, 0.01), (7, 6): (-0.04, 0.05)})
    out = colorize(y, scr, r=2, sigma=0.1)
    yuv = rgb_to_yuv(out)
    assert yuv[2, 3, 1] == pytest.approx(0.08, abs=1e-9)
    assert yuv[7, 6, 2] == pytest.approx(0.05, abs=1e-9)


def test_two_region_no_leakage():
    y, scr = _two_region()
    out = rgb_to_yuv(colorize(y, scr, r=3, sigma=0.05))
    u = out[:, :, 1]
    left = u[:, :12]
    right = u[:, 12:]
    assert np.abs(left - (-0.05)).mean() < 0.02
    assert np.abs(right - 0.06).mean() < 0.02


def test_side_windows_bleed_less_than_centered():
    y, scr = _two_region()
    u_side = rgb_to_yuv(colorize(y, scr, r=3, sigma=0.05))[:, :, 1]
    u_cent = rgb_to_yuv(colorize(y, scr, r=3, sigma=0.05, side_windows=False))[:, :, 1]

    def bleed(u):
        band_left = np.abs(u[:, 10:12] - (-0.05)).mean()
        band_right = np.abs(u[:, 12:14] - 0.06).mean()
        return band_left + band_right

    assert bleed(u_side) < bleed(u_cent)


def test_cg_matches_dense_solve():
    rng = np.random.default_rng(74)
    y = rng.random((4, 4))
    scr = _scribble(y.shape, {(0, 0): (0.1, 0.0), (3, 3): (-0.1, 0.0)})
    wmat = build_affinities(y, select_side_neighborhoods(y, 1), 1, 0.1)

    from swfilter.colorize import _solve_constrained
    got = _solve_constrained(wmat, scr.mask, scr.u)

    m = np.eye(16) - wmat.toarray()
    fixed = scr.mask.ravel()
    free = ~fixed
    a = m[:, free]
    rhs = -(m[:, fixed] @ scr.u.ravel()[fixed])
    dense = np.linalg.solve(a.T @ a, a.T @ rhs)
    want = np.zeros(16)
    want[fixed] = scr.u.ravel()[fixed]
    want[free] = dense
    assert np.max(np.abs(got - want)) < 1e-8


def test_maximum_principle_on_solvable_fixtures():
    # fixtures whose residuals can all reach zero exactly (one chroma per
    # region): the interpolated chroma stays inside the scribbled hull
    y, scr = _two_region()
    u = rgb_to_yuv(colorize(y, scr, r=3, sigma=0.05))[:, :, 1]
    assert u.min() >= -0.05 - 1e-6
    assert u.max() <= 0.06 + 1e-6

    flat = np.full((12, 12), 0.5)
    scr2 = _scribble(flat.shape, {(2, 2): (0.12, 0.035), (9, 9): (0.12, 0.035)})
    u2 = rgb_to_yuv(colorize(flat, scr2, r=2, sigma=0.1))[:, :, 1]
    assert np.max(np.abs(u2 - 0.12)) < 1e-6


def test_cost_not_worse_than_zero_init():
    rng = np.random.default_rng(76)
    y = rng.random((10, 10))
    scr = _scribble(y.shape, {(5, 5): (0.15, 0.0)})
    wmat = build_affinities(y, select_side_neighborhoods(y, 2), 2, 0.1)
    from swfilter.colorize import _solve_constrained
    u = _solve_constrained(wmat, scr.mask, scr.u)

    # CG starts from zero chroma and never increases the quadratic cost
    def cost(vec):
        res = vec - wmat @ vec
        return float(res @ res)

    u0 = np.where(scr.mask.ravel(), scr.u.ravel(), 0.0)
    assert cost(u) <= cost(u0) + 1e-12


def test_colorize_requires_scribbles():
    y = np.full((8, 8), 0.5)
    empty = ScribbleSet(mask=np.zeros_like(y, dtype=bool), u=np.zeros_like(y),
                        v=np.zeros_like(y))
    with pytest.raises(ValueError):
        colorize(y, empty, r=2)


def test_load_scribbles_rgba(tmp_path):
    rgba = np.zeros((6, 6, 4), dtype=np.uint8)
    rgba[2, 3] = [255, 0, 0, 255]
    path = tmp_path / "scr.png"
    Image.fromarray(rgba, "RGBA").save(path)
    scr = load_scribbles(path)
    assert scr.mask.sum() == 1
    assert scr.mask[2, 3]
    want_uv = rgb_to_yuv(np.array([[[1.0, 0.0, 0.0]]]))[0, 0, 1:]
    assert scr.u[2, 3] == pytest.approx(want_uv[0])
    assert scr.v[2, 3] == pytest.approx(want_uv[1])


def test_load_scribbles_rejects_rgb(tmp_path):
    path = tmp_path / "rgb.png"
    Image.fromarray(np.zeros((4, 4, 3), dtype=np.uint8), "RGB").save(path)
    with pytest.raises(ValueError):
        load_scribbles(path)
