import pytest

from swfilter.windows import SideWindow, WindowRect, enumerate_windows, window_rect


def test_canonical_order():
    names = [w.name for w in SideWindow]
    assert names == ["L", "R", "U", "D", "NW", "NE", "SW", "SE"]
    assert [int(w) for w in SideWindow] == list(range(8))


def test_rects_at_r2():
    assert window_rect(SideWindow.L, 2) == WindowRect(-2, 2, -2, 0)
    assert window_rect(SideWindow.NW, 2) == WindowRect(-2, 0, -2, 0)


def test_rect_at_minimal_radius():
    assert window_rect(SideWindow.D, 1) == WindowRect(0, 1, -1, 1)


def test_full_rect_table():
    r = 3
    expected = {
        SideWindow.L: (-r, r, -r, 0), SideWindow.R: (-r, r, 0, r),
        SideWindow.U: (-r, 0, -r, r), SideWindow.D: (0, r, -r, r),
        SideWindow.NW: (-r, 0, -r, 0), SideWindow.NE: (-r, 0, 0, r),
        SideWindow.SW: (0, r, -r, 0), SideWindow.SE: (0, r, 0, r),
    }
    for w, rect in expected.items():
        assert tuple(window_rect(w, r)) == rect


def test_sizes():
    sizes = [rect.size for _, rect in enumerate_windows(1)]
    assert sizes == [6, 6, 6, 6, 4, 4, 4, 4]
    sizes7 = [rect.size for _, rect in enumerate_windows(7)]
    assert sizes7 == [120, 120, 120, 120, 64, 64, 64, 64]


@pytest.mark.parametrize("r", [1, 2, 3, 7])
def test_every_rect_contains_target(r):
    for _, rect in enumerate_windows(r):
        assert rect.contains(0, 0)


def test_union_covers_neighborhood():
    r = 3
    offsets = set()
    for _, rect in enumerate_windows(r):
        offsets |= {(dy, dx)
                    for dy in range(rect.row_lo, rect.row_hi + 1)
                    for dx in range(rect.col_lo, rect.col_hi + 1)}
    assert len(offsets) == (2 * r + 1) ** 2
    assert offsets == {(dy, dx) for dy in range(-r, r + 1) for dx in range(-r, r + 1)}


def _offsets(rect):
    return {(dy, dx)
            for dy in range(rect.row_lo, rect.row_hi + 1)
            for dx in range(rect.col_lo, rect.col_hi + 1)}


@pytest.mark.parametrize("r", [1, 2, 7])
def test_mirror_symmetry(r):
    hmap = {SideWindow.L: SideWindow.R, SideWindow.NW: SideWindow.NE,
            SideWindow.SW: SideWindow.SE}
    for a, b in hmap.items():
        flipped = {(dy, -dx) for dy, dx in _offsets(window_rect(a, r))}
        assert flipped == _offsets(window_rect(b, r))
    vmap = {SideWindow.U: SideWindow.D, SideWindow.NW: SideWindow.SW,
            SideWindow.NE: SideWindow.SE}
    for a, b in vmap.items():
        flipped = {(-dy, dx) for dy, dx in _offsets(window_rect(a, r))}
        assert flipped == _offsets(window_rect(b, r))


def test_degenerate_radius_rejected():
    with pytest.raises(ValueError):
        window_rect(SideWindow.L, 0)
