"""Procedural face rendering: ellipses rasterized on the pixel-center rule.

A pixel (x, y) belongs to an ellipse iff its center (x+0.5, y+0.5) satisfies
((cx' - cx)/rx)^2 + ((cy' - cy)/ry)^2 <= 1.  An ellipse with a non-positive
radius covers nothing, which is how a full blink closes the eyes and how the
V_MBP viseme (openness 0.0) produces a zero-row mouth.
"""

from __future__ import annotations

import numpy as np

from vida.media import RgbaImage
from vida.avatar.visemes import OPENNESS, VISEME_NAMES, FaceParams

HEAD_COLOR = (230, 190, 170, 255)
EYE_COLOR = (40, 40, 40, 255)
MOUTH_COLOR = (120, 40, 50, 255)

HEAD_CENTER = (0.5, 0.5)
HEAD_RADII = (0.42, 0.48)
EYE_CENTERS = ((0.35, 0.38), (0.65, 0.38))
EYE_RADIUS = 0.06
MOUTH_CENTER = (0.5, 0.72)
MOUTH_RX = 0.16
MOUTH_RY = 0.14


def mouth_openness(params: FaceParams) -> float:
    """Blend of the per-viseme openness table under the current weights."""
    return sum(w * OPENNESS[v] for v, w in zip(VISEME_NAMES, params.weights))


def _paint_ellipse(arr: np.ndarray, cx: float, cy: float, rx: float, ry: float,
                   color: tuple[int, int, int, int]) -> None:
    if rx <= 0.0 or ry <= 0.0:
        return
    size_y, size_x = arr.shape[:2]
    xs = (np.arange(size_x, dtype=np.float64) + 0.5 - cx) / rx
    ys = (np.arange(size_y, dtype=np.float64) + 0.5 - cy) / ry
    mask = xs[None, :] ** 2 + ys[:, None] ** 2 <= 1.0
    arr[mask] = color


def render_face(params: FaceParams, size: int) -> RgbaImage:
    """Draw the face into a transparent size x size RGBA canvas."""
    arr = np.zeros((size, size, 4), dtype=np.uint8)

    _paint_ellipse(arr, HEAD_CENTER[0] * size, HEAD_CENTER[1] * size,
                   HEAD_RADII[0] * size, HEAD_RADII[1] * size, HEAD_COLOR)

    eye_ry = EYE_RADIUS * size * (1.0 - params.blink)
    for ex, ey in EYE_CENTERS:
        _paint_ellipse(arr, ex * size, ey * size, EYE_RADIUS * size, eye_ry, EYE_COLOR)

    openness = mouth_openness(params)
    _paint_ellipse(arr, MOUTH_CENTER[0] * size, MOUTH_CENTER[1] * size,
                   MOUTH_RX * size, MOUTH_RY * size * openness, MOUTH_COLOR)

    return RgbaImage.from_array(arr)
