"""Parametric edge test images and their closed-form filter outputs.

Six cases: vertical step (a), horizontal step (d), diagonal step (g),
corner (j), ramp (m), roof (p). Each generator returns the image together
with its probe pixel, the edge-adjacent location whose per-window box means
have exact closed forms; `expected_*` evaluate those forms.
"""

from dataclasses import dataclass

import numpy as np

from .windows import SideWindow

__all__ = ["EdgeModel", "gen_edge_image", "expected_box",
           "expected_side_window", "expected_swf_box", "EDGE_CASES"]

EDGE_CASES = ("a", "d", "g", "j", "m", "p")


@dataclass(frozen=True)
class EdgeModel:
    """Geometry and intensities of one ideal edge.

    u/v are the dark/bright plateau values (ridge top v for the roof);
    delta_v is the ramp step per column, delta_u the roof fall per column.
    The probe stays valid for radii r with size >= 4r + 2.
    """
    case: str = "a"
    u: float = 0.0
    v: float = 1.0
    delta_u: float = 0.1
    delta_v: float = 0.1
    size: int = 64

    def __post_init__(self):
        if self.case not in EDGE_CASES:
            raise ValueError(f"unknown edge case {self.case!r}")
        if self.size < 8 or self.size % 2:
            raise ValueError("size must be even and >= 8")
        if self.case in "adgj" and self.u > self.v:
            raise ValueError("step cases require u <= v")
        if self.case == "m" and self.delta_v <= 0:
            raise ValueError("ramp requires delta_v > 0")
        if self.case == "p" and self.delta_u <= 0:
            raise ValueError("roof requires delta_u > 0")


def gen_edge_image(model: EdgeModel):
    """Build the edge image; returns (image, probe) with probe = (row, col)."""
    s = model.size
    u, v = model.u, model.v
    half = s // 2
    yy, xx = np.mgrid[0:s, 0:s]
    if model.case == "a":
        # dark columns 0..half-1; probe just left of the edge
        img = np.where(xx < half, u, v).astype(np.float64)
        probe = (half, half - 1)
    elif model.case == "d":
        img = np.where(yy < half, u, v).astype(np.float64)
        probe = (half - 1, half)
    elif model.case == "g":
        # dark strictly above-left of the main anti-diagonal
        img = np.where(yy + xx <= s - 2, u, v).astype(np.float64)
        probe = (half - 1, half - 1)
    elif model.case == "j":
        # dark quadrant with the probe at its inner corner
        img = np.where((yy <= half - 1) & (xx <= half - 1), u, v).astype(np.float64)
        probe = (half - 1, half - 1)
    elif model.case == "m":
        # flat at u through the probe column, then +delta_v per column, capped at v
        ramp = u + model.delta_v * np.maximum(xx - (half - 1), 0)
        img = np.minimum(ramp, v).astype(np.float64)
        probe = (half, half - 1)
    else:
        # roof: ridge column at v, falling by delta_u per column, floored at u
        profile = v - model.delta_u * np.abs(xx - half)
        img = np.maximum(profile, u).astype(np.float64)
        probe = (half, half)
    return img, probe


def expected_box(case: str, r: int, u: float, v: float,
                 delta_u: float = 0.1, delta_v: float = 0.1) -> float:
    """Closed-form centered box mean at the probe."""
    if case in ("a", "d", "g"):
        return ((r + 1) * u + r * v) / (2 * r + 1)
    if case == "j":
        side = (2 * r + 1) ** 2
        dark = (r + 1) ** 2
        return (dark * u + (side - dark) * v) / side
    if case == "m":
        return u + r * (r + 1) * delta_v / (2 * (2 * r + 1))
    if case == "p":
        return v - r * (r + 1) * delta_u / (2 * r + 1)
    raise ValueError(f"unknown edge case {case!r}")


def expected_swf_box(case: str, r: int, u: float, v: float,
                     delta_u: float = 0.1, delta_v: float = 0.1) -> float:
    """Closed-form side window box output at the probe."""
    if case in ("a", "d", "g", "j", "m"):
        return u
    if case == "p":
        return v - 0.5 * r * delta_u
    raise ValueError(f"unknown edge case {case!r}")


def expected_side_window(case: str, window: SideWindow, r: int, u: float,
                         v: float, delta_u: float = 0.1,
                         delta_v: float = 0.1) -> float:
    """Closed-form box mean of one side window at the probe.

    The ramp means over NE/SE are u + r*delta_v/2: every column in those
    windows starts from the plateau value u, matching the generated image.
    """
    window = SideWindow(window)
    half_near = ((r + 1) * u + r * v) / (2 * r + 1)       # half-and-half band
    quarter_far = (u + r * v) / (r + 1)                   # one dark line
    if case == "a":
        return {
            SideWindow.L: u, SideWindow.NW: u, SideWindow.SW: u,
            SideWindow.R: quarter_far, SideWindow.NE: quarter_far,
            SideWindow.SE: quarter_far,
            SideWindow.U: half_near, SideWindow.D: half_near,
        }[window]
    if case == "d":
        return {
            SideWindow.U: u, SideWindow.NW: u, SideWindow.NE: u,
            SideWindow.D: quarter_far, SideWindow.SW: quarter_far,
            SideWindow.SE: quarter_far,
            SideWindow.L: half_near, SideWindow.R: half_near,
        }[window]
    if case == "g":
        dark_heavy = ((1.5 * r + 1) * u + 0.5 * r * v) / (2 * r + 1)
        light_heavy = ((0.5 * r + 1) * u + 1.5 * r * v) / (2 * r + 1)
        corner_mix = ((0.5 * r + 1) * u + 0.5 * r * v) / (r + 1)
        lone_dark = (((r + 1) ** 2 - 1) * v + u) / (r + 1) ** 2
        return {
            SideWindow.L: dark_heavy, SideWindow.U: dark_heavy,
            SideWindow.R: light_heavy, SideWindow.D: light_heavy,
            SideWindow.NW: u, SideWindow.NE: corner_mix,
            SideWindow.SW: corner_mix, SideWindow.SE: lone_dark,
        }[window]
    if case == "j":
        edge_band = (u + 2 * r * v) / (2 * r + 1)
        lone_dark = (((r + 1) ** 2 - 1) * v + u) / (r + 1) ** 2
        return {
            SideWindow.NW: u,
            SideWindow.L: half_near, SideWindow.U: half_near,
            SideWindow.R: edge_band, SideWindow.D: edge_band,
            SideWindow.NE: quarter_far, SideWindow.SW: quarter_far,
            SideWindow.SE: lone_dark,
        }[window]
    if case == "m":
        across = u + r * (r + 1) * delta_v / (2 * (2 * r + 1))
        ahead = u + 0.5 * r * delta_v
        return {
            SideWindow.L: u, SideWindow.NW: u, SideWindow.SW: u,
            SideWindow.R: ahead, SideWindow.NE: ahead, SideWindow.SE: ahead,
            SideWindow.U: across, SideWindow.D: across,
        }[window]
    if case == "p":
        along = v - 0.5 * r * delta_u
        across = v - r * (r + 1) * delta_u / (2 * r + 1)
        return across if window in (SideWindow.U, SideWindow.D) else along
    raise ValueError(f"unknown edge case {case!r}")
