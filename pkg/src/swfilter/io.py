"""Image file IO: PNG (8-bit gray/RGB), PGM/PPM (plain and binary), PFM.

Loaded 8-bit samples are scaled to [0, 1] by 1/255; PFM floats pass through
unscaled. Saving to an LDR format clamps to [0, 1] and rounds half-up to the
nearest byte; PFM writes float32 samples exactly.
"""

import os

import numpy as np

from .core import ensure_image

__all__ = ["load_image", "save_image", "ImageFormatError", "ImageDecodeError"]


class ImageFormatError(ValueError):
    """File is not in a supported format."""


class ImageDecodeError(ValueError):
    """File claims a supported format but its contents are broken."""


def load_image(path) -> np.ndarray:
    """Load a PNG/PGM/PPM/PFM file as a float64 array, (H, W) or (H, W, 3)."""
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    if ext in (".pgm", ".ppm", ".pnm"):
        return _load_pnm(path)
    if ext == ".pfm":
        return _load_pfm(path)
    if ext == ".png":
        return _load_png(path)
    raise ImageFormatError(f"unsupported image format: {path!r}")


def save_image(img: np.ndarray, path) -> None:
    """Write an image; the extension picks the format."""
    img = ensure_image(img)
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    if ext == ".pgm":
        _save_pnm(img, path, color=False)
    elif ext == ".ppm":
        _save_pnm(img, path, color=True)
    elif ext == ".pfm":
        _save_pfm(img, path)
    elif ext == ".png":
        _save_png(img, path)
    else:
        raise ImageFormatError(f"unsupported image format: {path!r}")


def quantize_u8(img: np.ndarray) -> np.ndarray:
    """Clamp to [0, 1] and round half-up to bytes."""
    return np.floor(np.clip(img, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


# -- PGM / PPM ---------------------------------------------------------------

def _pnm_tokens(data: bytes):
    """Yield header tokens, skipping whitespace and # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i:i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            while i < n and data[i:i + 1] != b"\n":
                i += 1
        else:
            j = i
            while j < n and not data[j:j + 1].isspace():
                j += 1
            yield i, data[i:j]
            i = j


def _load_pnm(path: str) -> np.ndarray:
    with open(path, "rb") as f:
        data = f.read()
    tokens = _pnm_tokens(data)
    try:
        _, magic = next(tokens)
    except StopIteration:
        raise ImageDecodeError(f"{path}: empty file") from None
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise ImageFormatError(f"{path}: not a supported PGM/PPM file ({magic!r})")
    plain = magic in (b"P2", b"P3")
    channels = 3 if magic in (b"P3", b"P6") else 1
    try:
        _, w = next(tokens)
        _, h = next(tokens)
        pos, maxval_tok = next(tokens)
        width, height, maxval = int(w), int(h), int(maxval_tok)
    except (StopIteration, ValueError):
        raise ImageDecodeError(f"{path}: truncated or malformed header") from None
    if maxval != 255:
        raise ImageFormatError(f"{path}: only maxval 255 is supported, got {maxval}")
    count = width * height * channels
    if plain:
        values = []
        for _, tok in tokens:
            try:
                values.append(int(tok))
            except ValueError:
                raise ImageDecodeError(f"{path}: non-numeric sample {tok!r}") from None
        if len(values) < count:
            raise ImageDecodeError(f"{path}: expected {count} samples, got {len(values)}")
        raw = np.array(values[:count], dtype=np.float64)
    else:
        start = pos + len(maxval_tok) + 1  # single whitespace byte after maxval
        raw_bytes = data[start:start + count]
        if len(raw_bytes) < count:
            raise ImageDecodeError(f"{path}: expected {count} bytes, got {len(raw_bytes)}")
        raw = np.frombuffer(raw_bytes, dtype=np.uint8).astype(np.float64)
    img = raw.reshape(height, width) if channels == 1 else raw.reshape(height, width, 3)
    return img / 255.0


def _save_pnm(img: np.ndarray, path: str, color: bool) -> None:
    if color and img.ndim != 3:
        raise ValueError("PPM requires a 3-channel image")
    if not color and img.ndim != 2:
        raise ValueError("PGM requires a grayscale image")
    data = quantize_u8(img)
    h, w = data.shape[:2]
    magic = b"P6" if color else b"P5"
    with open(path, "wb") as f:
        f.write(magic + b"\n%d %d\n255\n" % (w, h))
        f.write(data.tobytes())


# -- PFM ---------------------------------------------------------------------

def _load_pfm(path: str) -> np.ndarray:
    with open(path, "rb") as f:
        magic = f.readline().strip()
        if magic not in (b"PF", b"Pf"):
            raise ImageFormatError(f"{path}: not a PFM file ({magic!r})")
        channels = 3 if magic == b"PF" else 1
        try:
            dims = f.readline().split()
            width, height = int(dims[0]), int(dims[1])
            scale = float(f.readline().strip())
        except (ValueError, IndexError):
            raise ImageDecodeError(f"{path}: malformed PFM header") from None
        endian = "<" if scale < 0 else ">"
        count = width * height * channels
        buf = f.read(count * 4)
    if len(buf) < count * 4:
        raise ImageDecodeError(f"{path}: truncated PFM payload")
    raw = np.frombuffer(buf, dtype=endian + "f4").astype(np.float64)
    img = raw.reshape(height, width) if channels == 1 else raw.reshape(height, width, 3)
    return img[::-1].copy()  # PFM stores rows bottom-to-top


def _save_pfm(img: np.ndarray, path: str) -> None:
    magic = b"PF" if img.ndim == 3 else b"Pf"
    h, w = img.shape[:2]
    samples = np.ascontiguousarray(img[::-1], dtype="<f4")
    with open(path, "wb") as f:
        f.write(magic + b"\n%d %d\n-1.0\n" % (w, h))
        f.write(samples.tobytes())


# -- PNG ---------------------------------------------------------------------

def _load_png(path: str) -> np.ndarray:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode not in ("L", "RGB"):
                raise ImageFormatError(
                    f"{path}: only 8-bit gray/RGB PNG is supported, got mode {mode}")
            arr = np.asarray(im, dtype=np.float64)
    except UnidentifiedImageError:
        raise ImageDecodeError(f"{path}: not a decodable PNG") from None
    except OSError as exc:
        raise ImageDecodeError(f"{path}: {exc}") from None
    return arr / 255.0


def _save_png(img: np.ndarray, path: str) -> None:
    from PIL import Image

    data = quantize_u8(img)
    mode = "RGB" if data.ndim == 3 else "L"
    Image.fromarray(data, mode=mode).save(path, format="PNG")


def load_rgba(path) -> np.ndarray:
    """Load an RGBA PNG as float64 (H, W, 4) in [0, 1].

    Used for scribble inputs where the alpha channel flags constraints.
    """
    from PIL import Image, UnidentifiedImageError

    path = os.fspath(path)
    try:
        with Image.open(path) as im:
            if im.mode != "RGBA":
                raise ImageFormatError(
                    f"{path}: scribble image must be RGBA, got mode {im.mode}")
            arr = np.asarray(im, dtype=np.float64)
    except UnidentifiedImageError:
        raise ImageDecodeError(f"{path}: not a decodable PNG") from None
    return arr / 255.0
