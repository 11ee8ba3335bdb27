"""The eight discrete side windows and their pixel extents.

Each window is a rectangle whose side or corner -- not its center -- touches
the target pixel. The canonical order L, R, U, D, NW, NE, SW, SE doubles as
the tie-break order wherever a minimum has to be unique.
"""

from enum import IntEnum
from typing import NamedTuple

__all__ = ["SideWindow", "WindowRect", "window_rect", "enumerate_windows"]


class SideWindow(IntEnum):
    L = 0
    R = 1
    U = 2
    D = 3
    NW = 4
    NE = 5
    SW = 6
    SE = 7


class WindowRect(NamedTuple):
    """Inclusive offsets of a window relative to the target pixel."""
    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int

    @property
    def shape(self):
        return (self.row_hi - self.row_lo + 1, self.col_hi - self.col_lo + 1)

    @property
    def size(self):
        h, w = self.shape
        return h * w

    def contains(self, dy: int, dx: int) -> bool:
        return self.row_lo <= dy <= self.row_hi and self.col_lo <= dx <= self.col_hi


def window_rect(window: SideWindow, r: int) -> WindowRect:
    """Pixel extent of one side window at radius r.

    The four side-aligned windows are (2r+1) x (r+1), the four corner
    windows (r+1) x (r+1); every rect contains the target offset (0, 0).
    """
    if r < 1:
        raise ValueError("window radius must be >= 1")
    window = SideWindow(window)
    if window is SideWindow.L:
        return WindowRect(-r, r, -r, 0)
    if window is SideWindow.R:
        return WindowRect(-r, r, 0, r)
    if window is SideWindow.U:
        return WindowRect(-r, 0, -r, r)
    if window is SideWindow.D:
        return WindowRect(0, r, -r, r)
    if window is SideWindow.NW:
        return WindowRect(-r, 0, -r, 0)
    if window is SideWindow.NE:
        return WindowRect(-r, 0, 0, r)
    if window is SideWindow.SW:
        return WindowRect(0, r, -r, 0)
    return WindowRect(0, r, 0, r)


def enumerate_windows(r: int):
    """All eight (window, rect) pairs in canonical order."""
    return [(w, window_rect(w, r)) for w in SideWindow]
