"""Body frame assets: four mode-keyed frame lists, procedural or from PNGs.

The procedural generator draws a swaying torso so streams work with zero
asset files: 50-frame idle and speak loops whose torso offset follows
round(2*sin(2*pi*i/50)) pixels, plus 10-frame enter/exit transitions that
linearly blend the two torso colors.  The PNG loader reads numbered frames
from idle/, enter/, speak/ and exit/ subdirectories.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from vida.config import EngineConfig
from vida.media import RgbaImage
from vida.avatar.visemes import AvatarError

LOOP_FRAMES = 50
TRANSITION_FRAMES = 10

BACKGROUND = (24, 28, 38, 255)
IDLE_TORSO = (70, 90, 120, 255)
SPEAK_TORSO = (88, 108, 138, 255)


@dataclass
class BodyAssets:
    width: int
    height: int
    idle: list[RgbaImage]
    enter: list[RgbaImage]
    speak: list[RgbaImage]
    exit: list[RgbaImage]

    def frames_for(self, mode: str) -> list[RgbaImage]:
        return {"Idle": self.idle, "EnterSpeak": self.enter,
                "Speaking": self.speak, "ExitSpeak": self.exit}[mode]


def _sway(i: int) -> int:
    return round(2.0 * math.sin(2.0 * math.pi * i / LOOP_FRAMES))


def _torso_frame(width: int, height: int, offset_x: int,
                 torso: tuple[int, int, int, int]) -> RgbaImage:
    arr = np.empty((height, width, 4), dtype=np.uint8)
    arr[:, :] = BACKGROUND
    tw = width // 2
    th = int(height * 0.45)
    x0 = (width - tw) // 2 + offset_x
    y0 = height - th
    x0 = max(0, min(width - tw, x0))
    arr[y0:height, x0:x0 + tw] = torso
    return RgbaImage.from_array(arr)


def _blend_color(a: tuple[int, ...], b: tuple[int, ...], t: float) -> tuple[int, int, int, int]:
    return tuple(round(a[i] + (b[i] - a[i]) * t) for i in range(4))  # type: ignore[return-value]


def _procedural(width: int, height: int) -> BodyAssets:
    idle = [_torso_frame(width, height, _sway(i), IDLE_TORSO) for i in range(LOOP_FRAMES)]
    speak = [_torso_frame(width, height, _sway(i), SPEAK_TORSO) for i in range(LOOP_FRAMES)]
    enter = [
        _torso_frame(width, height, _sway(i),
                     _blend_color(IDLE_TORSO, SPEAK_TORSO, (i + 1) / (TRANSITION_FRAMES + 1)))
        for i in range(TRANSITION_FRAMES)
    ]
    exit_ = [
        _torso_frame(width, height, _sway(i),
                     _blend_color(SPEAK_TORSO, IDLE_TORSO, (i + 1) / (TRANSITION_FRAMES + 1)))
        for i in range(TRANSITION_FRAMES)
    ]
    return BodyAssets(width, height, idle, enter, speak, exit_)


def _frame_sort_key(path: Path) -> tuple:
    m = re.fullmatch(r"(\d+)", path.stem)
    return (0, int(m.group(1))) if m else (1, path.stem)


def _load_dir(base: Path, name: str, required: bool) -> list[RgbaImage]:
    directory = base / name
    if not directory.is_dir():
        if required:
            raise AvatarError(f"body asset directory missing required subdirectory: {directory}")
        return []
    frames: list[RgbaImage] = []
    for path in sorted(directory.glob("*.png"), key=_frame_sort_key):
        img = RgbaImage.from_png(path.read_bytes())
        arr = img.to_array()
        arr[:, :, 3] = 255  # bodies are the opaque background layer
        frames.append(RgbaImage.from_array(arr))
    if required and not frames:
        raise AvatarError(f"body asset directory has no PNG frames: {directory}")
    return frames


def load_body_assets(cfg: EngineConfig) -> BodyAssets:
    """Build body frames per cfg.body_frames ("procedural" or a directory)."""
    if cfg.body_frames == "procedural":
        return _procedural(cfg.video_width, cfg.video_height)

    base = Path(cfg.body_frames)
    if not base.is_dir():
        raise AvatarError(f"body asset directory not found: {base}")
    idle = _load_dir(base, "idle", required=True)
    speak = _load_dir(base, "speak", required=True)
    enter = _load_dir(base, "enter", required=False)
    exit_ = _load_dir(base, "exit", required=False)

    for frame in idle + speak + enter + exit_:
        if (frame.width, frame.height) != (cfg.video_width, cfg.video_height):
            raise AvatarError(
                f"body frame is {frame.width}x{frame.height}, expected"
                f" {cfg.video_width}x{cfg.video_height} from config"
            )
    return BodyAssets(cfg.video_width, cfg.video_height, idle, enter, speak, exit_)
