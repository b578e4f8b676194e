from vida.avatar.visemes import (
    VISEME_NAMES,
    PHONEME_TO_VISEME,
    OPENNESS,
    FaceParams,
    VisemeSegment,
    AvatarError,
    build_viseme_track,
    sample_face_params,
    blink_amount,
)
from vida.avatar.face import render_face, mouth_openness
from vida.avatar.body import BodyAssets, load_body_assets
from vida.avatar.playcontrol import PlayState, MODES, play_control_step
from vida.avatar.fuse import fuse

__all__ = [
    "VISEME_NAMES",
    "PHONEME_TO_VISEME",
    "OPENNESS",
    "FaceParams",
    "VisemeSegment",
    "AvatarError",
    "build_viseme_track",
    "sample_face_params",
    "blink_amount",
    "render_face",
    "mouth_openness",
    "BodyAssets",
    "load_body_assets",
    "PlayState",
    "MODES",
    "play_control_step",
    "fuse",
]
