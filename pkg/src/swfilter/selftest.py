"""Machine-checked analytic suite: per-window closed forms at the probe
pixels, whole-filter probe values, and brute-force equivalence spot checks."""

import os
import sys

import numpy as np

from . import classic, engine, reference
from .edges import (EDGE_CASES, EdgeModel, expected_box, expected_side_window,
                    expected_swf_box, gen_edge_image)
from .io import save_image
from .windows import SideWindow

__all__ = ["run_selftest"]

ANALYTIC_TOL = 1e-9
EQUIV_TOL = 1e-6


def _check(stream, ok, label, detail=""):
    status = "pass" if ok else "FAIL"
    suffix = f"  ({detail})" if detail and not ok else ""
    print(f"{label} {status}{suffix}", file=stream)
    return ok


def _window_forms_suite(stream, radii, dump_dir=None):
    """Every side window's box mean at the probe against its closed form."""
    ok = True
    for r in radii:
        for case in EDGE_CASES:
            model = EdgeModel(case=case, size=max(64, 4 * r + 2))
            img, probe = gen_edge_image(model)
            if dump_dir is not None:
                save_image(img, os.path.join(dump_dir, f"edge_{case}.pgm"))
            cands = engine.box_side_candidates(img, r)
            for window in SideWindow:
                want = expected_side_window(case, window, r, model.u, model.v,
                                            model.delta_u, model.delta_v)
                got = cands[int(window)][probe]
                ok &= _check(stream, abs(got - want) <= ANALYTIC_TOL,
                             f"window-forms r={r} case={case} window={window.name}",
                             f"got {got!r}, want {want!r}")
    return ok


def _filter_forms_suite(stream, radii):
    """Whole-filter probe outputs (box and its side window variant)."""
    ok = True
    for r in radii:
        for case in EDGE_CASES:
            model = EdgeModel(case=case, size=max(64, 4 * r + 2))
            img, probe = gen_edge_image(model)
            box_want = expected_box(case, r, model.u, model.v,
                                    model.delta_u, model.delta_v)
            box_got = classic.box_filter(img, r)[probe]
            ok &= _check(stream, abs(box_got - box_want) <= ANALYTIC_TOL,
                         f"filter-forms r={r} case={case} box",
                         f"got {box_got!r}, want {box_want!r}")
            swf_want = expected_swf_box(case, r, model.u, model.v,
                                        model.delta_u, model.delta_v)
            swf_got = engine.s_box(img, r)[0][probe]
            ok &= _check(stream, abs(swf_got - swf_want) <= ANALYTIC_TOL,
                         f"filter-forms r={r} case={case} s-box",
                         f"got {swf_got!r}, want {swf_want!r}")
    return ok


def _equivalence_suite(stream, seed=20240501):
    rng = np.random.default_rng(seed)
    img = rng.random((16, 16))
    r = 2
    kwargs = dict(sigma=1.5, sigma_s=2.0, sigma_r=0.2, eps=0.05)
    fast = {
        "box": classic.box_filter(img, r),
        "gaussian": classic.gaussian_filter(img, r, kwargs["sigma"]),
        "median": classic.median_filter(img, r),
        "bilateral": classic.bilateral_filter(img, r, kwargs["sigma_s"], kwargs["sigma_r"]),
        "guided": classic.guided_filter(img, None, r, kwargs["eps"]),
        "s-box": engine.s_box(img, r)[0],
        "s-gaussian": engine.s_gaussian(img, r, kwargs["sigma"])[0],
        "s-median": engine.s_median(img, r)[0],
        "s-bilateral": engine.s_bilateral(img, r, kwargs["sigma_s"], kwargs["sigma_r"])[0],
        "s-guided": engine.s_guided(img, None, r, kwargs["eps"])[0],
    }
    ok = True
    for name, got in fast.items():
        side = name.startswith("s-")
        kernel = name[2:] if side else name
        want = reference.naive_reference(kernel, img, r, side_window=side, **kwargs)
        err = float(np.max(np.abs(got - want)))
        ok &= _check(stream, err <= EQUIV_TOL, f"equivalence {name}",
                     f"max abs err {err:.3e}")
    return ok


def run_selftest(stream=None, dump_dir=None, radii=(2, 7)) -> bool:
    """Run every analytic check; prints one line per check, returns overall."""
    stream = stream if stream is not None else sys.stdout
    if dump_dir is not None:
        os.makedirs(dump_dir, exist_ok=True)
    ok = _window_forms_suite(stream, radii, dump_dir)
    ok &= _filter_forms_suite(stream, radii)
    ok &= _equivalence_suite(stream)
    print(f"selftest {'pass' if ok else 'FAIL'}", file=stream)
    return ok
