"""Frame fusion: source-over composite of the face patch onto a body frame.

Compositing is done in exact integer arithmetic,
``out = (face * a + body * (255 - a) + 127) // 255``, so results are
bit-identical everywhere; the output frame is fully opaque.
"""

from __future__ import annotations

import numpy as np

from vida.media import RgbaImage
from vida.avatar.visemes import AvatarError


def fuse(body: RgbaImage, face: RgbaImage, anchor: tuple[int, int]) -> RgbaImage:
    """Composite ``face`` over a copy of ``body`` with its top-left at ``anchor``."""
    ax, ay = anchor
    if ax < 0 or ay < 0 or ax + face.width > body.width or ay + face.height > body.height:
        raise AvatarError(
            f"face {face.width}x{face.height} at anchor ({ax}, {ay})"
            f" does not fit body {body.width}x{body.height}"
        )

    out = body.to_array()
    patch = out[ay:ay + face.height, ax:ax + face.width].astype(np.uint32)
    src = face.to_array().astype(np.uint32)
    alpha = src[:, :, 3:4]

    blended = (src[:, :, :3] * alpha + patch[:, :, :3] * (255 - alpha) + 127) // 255
    out[ay:ay + face.height, ax:ax + face.width, :3] = blended.astype(np.uint8)
    out[:, :, 3] = 255
    return RgbaImage.from_array(out)
