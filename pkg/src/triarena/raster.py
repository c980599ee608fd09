"""Shared raster output helpers: RGB arrays to PPM (P6) or PNG bytes."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image


def to_ppm(img: np.ndarray) -> bytes:
    header = f"P6 {img.shape[1]} {img.shape[0]} 255\n".encode()
    return header + img.tobytes()


def to_png(img: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(img, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()
