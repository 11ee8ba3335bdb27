import numpy as np
import pytest
from PIL import Image

from swfilter.cli import main
from swfilter.edges import EdgeModel, gen_edge_image
from swfilter.io import load_image, save_image


@pytest.fixture
def step_pgm(tmp_path):
    img, _ = gen_edge_image(EdgeModel(case="a", size=32))
    path = tmp_path / "step.pgm"
    save_image(img, path)
    return path


def test_filter_side_window_preserves_step(step_pgm, tmp_path):
    out = tmp_path / "out.pgm"
    rc = main(["filter", "-i", str(step_pgm), "-o", str(out),
               "--kernel", "box", "--side-window", "--r", "7"])
    assert rc == 0
    assert out.read_bytes() == step_pgm.read_bytes()


def test_filter_classic_blurs_step(step_pgm, tmp_path):
    out = tmp_path / "out.pgm"
    assert main(["filter", "-i", str(step_pgm), "-o", str(out),
                 "--kernel", "box", "--r", "7"]) == 0
    assert out.read_bytes() != step_pgm.read_bytes()


def test_filter_iterations_and_selection_map(step_pgm, tmp_path):
    out = tmp_path / "out.pgm"
    sel = tmp_path / "sel.pgm"
    rc = main(["filter", "-i", str(step_pgm), "-o", str(out),
               "--kernel", "box", "--side-window", "--r", "3",
               "--iterations", "2", "--selection-map", str(sel)])
    assert rc == 0
    assert sel.exists()
    levels = np.unique(np.round(load_image(sel) * 255))
    assert len(levels) <= 8


def test_selection_map_requires_side_window(step_pgm, tmp_path, capsys):
    rc = main(["filter", "-i", str(step_pgm), "-o", str(tmp_path / "o.pgm"),
               "--kernel", "box", "--r", "3",
               "--selection-map", str(tmp_path / "s.pgm")])
    assert rc == 1
    assert "side-window" in capsys.readouterr().err


def test_metrics_psnr_inf(step_pgm, capsys):
    assert main(["metrics", "--psnr", str(step_pgm), str(step_pgm)]) == 0
    assert capsys.readouterr().out.strip() == "psnr inf"


def test_metrics_both(step_pgm, tmp_path, capsys):
    other = tmp_path / "noisy.pgm"
    rng = np.random.default_rng(0)
    img = load_image(step_pgm)
    save_image(np.clip(img + rng.normal(0, 0.05, img.shape), 0, 1), other)
    assert main(["metrics", "--psnr", "--ssim", str(step_pgm), str(other)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("psnr ")
    assert lines[1].startswith("ssim ")
    assert 0 < float(lines[1].split()[1]) < 1
    assert float(lines[0].split()[1]) > 10


def test_metrics_requires_a_flag(step_pgm, capsys):
    assert main(["metrics", str(step_pgm), str(step_pgm)]) == 1


def test_enhance_round_trip(step_pgm, tmp_path):
    out = tmp_path / "enh.pgm"
    rc = main(["enhance", "-i", str(step_pgm), "-o", str(out),
               "--kernel", "box", "--side-window", "--r", "7", "--alpha", "5"])
    assert rc == 0
    # side window base -> no halo -> unchanged
    assert out.read_bytes() == step_pgm.read_bytes()


def test_tonemap(tmp_path):
    hdr = np.ones((16, 16, 3))
    hdr[:, 8:] = 300.0
    src = tmp_path / "in.pfm"
    save_image(hdr, src)
    out = tmp_path / "out.png"
    rc = main(["tonemap", "-i", str(src), "-o", str(out),
               "--gamma", "0.5", "--r", "3"])
    assert rc == 0
    assert load_image(out).shape == (16, 16, 3)


def test_colorize(tmp_path):
    y = np.full((12, 12), 0.2)
    y[:, 6:] = 0.8
    gray = tmp_path / "gray.pgm"
    save_image(y, gray)
    rgba = np.zeros((12, 12, 4), dtype=np.uint8)
    rgba[6, 2] = [200, 60, 60, 255]
    rgba[6, 9] = [60, 60, 200, 255]
    scr = tmp_path / "scr.png"
    Image.fromarray(rgba, "RGBA").save(scr)
    out = tmp_path / "color.ppm"
    rc = main(["colorize", "-y", str(gray), "-s", str(scr), "-o", str(out),
               "--r", "3", "--sigma", "0.05"])
    assert rc == 0
    rgb = load_image(out)
    assert rgb.shape == (12, 12, 3)
    # left region leans red, right leans blue
    left = rgb[:, :6]
    right = rgb[:, 6:]
    assert left[..., 0].mean() > left[..., 2].mean()
    assert right[..., 2].mean() > right[..., 0].mean()


def test_selftest_passes(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "selftest pass" in out
    # 6 cases x 8 windows for each radius
    assert out.count("window-forms r=7") == 48
    assert out.count("window-forms r=2") == 48


def test_selftest_dump_writes_edge_images(tmp_path, capsys):
    dump = tmp_path / "edges"
    assert main(["selftest", "--dump", str(dump)]) == 0
    for case in "adgjmp":
        assert (dump / f"edge_{case}.pgm").exists()


def test_side_window_flag_irrelevant_on_constant_image(tmp_path):
    src = tmp_path / "flat.pgm"
    save_image(np.full((16, 16), 0.5), src)
    outs = []
    for flags in ([], ["--side-window"]):
        out = tmp_path / f"o{len(flags)}.pgm"
        assert main(["filter", "-i", str(src), "-o", str(out),
                     "--kernel", "box", "--r", "3"] + flags) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_bench_output(capsys):
    assert main(["bench", "--size", "0.0025", "--kernel", "box",
                 "--repeats", "1"]) == 0
    out = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert set(out) == {"kernel", "pixels", "classic_seconds", "swf_seconds", "ratio"}
    assert float(out["ratio"]) > 0


def test_missing_input_exits_1(tmp_path, capsys):
    rc = main(["filter", "-i", str(tmp_path / "nope.pgm"),
               "-o", str(tmp_path / "o.pgm"), "--kernel", "box", "--r", "3"])
    assert rc == 1
    assert capsys.readouterr().err.startswith("swfilter:")


def test_bad_kernel_exits_2(step_pgm, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["filter", "-i", str(step_pgm), "-o", str(tmp_path / "o.pgm"),
              "--kernel", "sobel", "--r", "3"])
    assert exc.value.code == 2


def test_threads_flag_does_not_change_output(step_pgm, tmp_path):
    outs = []
    for threads in ("1", "4"):
        out = tmp_path / f"t{threads}.pgm"
        rc = main(["--threads", threads, "filter", "-i", str(step_pgm),
                   "-o", str(out), "--kernel", "box", "--side-window", "--r", "5"])
        assert rc == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
