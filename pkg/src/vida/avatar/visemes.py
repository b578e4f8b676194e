"""Viseme classes, the phoneme-to-viseme map, and time-sampled face params.

A viseme track is the phoneme timing sequence collapsed into mouth-shape
segments (adjacent segments with the same viseme merge).  Sampling the track
at a time t yields a convex weight vector over the 8 viseme classes: inside
a segment the weight is 1.0 on its viseme, and within +/-20 ms of an internal
segment boundary the two neighbors crossfade linearly.  Blinks are periodic:
full blink during [k*4000, k*4000 + 120) ms for k >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from vida.speech.phonemes import PHONEMES, SIL, PhonemeTiming

VISEME_NAMES: tuple[str, ...] = (
    "V_SIL", "V_A", "V_E", "V_O", "V_U", "V_MBP", "V_FV", "V_REST",
)

_CLASSES: dict[str, tuple[str, ...]] = {
    "V_SIL": (SIL,),
    "V_A": ("AA", "AE", "AH", "AW", "AY", "ER"),
    "V_E": ("EH", "EY", "IH", "IY", "Y", "HH"),
    "V_O": ("AO", "OW", "OY", "R", "W"),
    "V_U": ("UH", "UW"),
    "V_MBP": ("B", "M", "P"),
    "V_FV": ("F", "V", "DH", "TH"),
}

PHONEME_TO_VISEME: dict[str, str] = {}
for _viseme, _members in _CLASSES.items():
    for _p in _members:
        PHONEME_TO_VISEME[_p] = _viseme
for _p in PHONEMES:
    PHONEME_TO_VISEME.setdefault(_p, "V_REST")

# How open the mouth is for a pure frame of each viseme.
OPENNESS: dict[str, float] = {
    "V_SIL": 0.05,
    "V_A": 1.0,
    "V_E": 0.6,
    "V_O": 0.8,
    "V_U": 0.5,
    "V_MBP": 0.0,
    "V_FV": 0.3,
    "V_REST": 0.2,
}

CROSSFADE_MS = 20
BLINK_PERIOD_MS = 4000
BLINK_LEN_MS = 120

_VISEME_INDEX = {name: i for i, name in enumerate(VISEME_NAMES)}


class AvatarError(ValueError):
    """Raised for invalid tracks, face params, or body assets."""


@dataclass(frozen=True)
class VisemeSegment:
    viseme: str
    start_ms: int
    end_ms: int


@dataclass(frozen=True)
class FaceParams:
    """Convex viseme weights (ordered as VISEME_NAMES) plus blink in [0, 1]."""

    weights: tuple[float, ...]
    blink: float

    def __post_init__(self) -> None:
        if len(self.weights) != len(VISEME_NAMES):
            raise AvatarError(f"expected {len(VISEME_NAMES)} weights, got {len(self.weights)}")
        if any(w < 0.0 for w in self.weights):
            raise AvatarError(f"viseme weights must be non-negative: {self.weights}")
        total = sum(self.weights)
        if abs(total - 1.0) > 1e-6:
            raise AvatarError(f"viseme weights must sum to 1, got {total}")
        if not 0.0 <= self.blink <= 1.0:
            raise AvatarError(f"blink must be in [0, 1], got {self.blink}")

    def weight(self, viseme: str) -> float:
        return self.weights[_VISEME_INDEX[viseme]]


def _pure(viseme: str, blink: float) -> FaceParams:
    weights = [0.0] * len(VISEME_NAMES)
    weights[_VISEME_INDEX[viseme]] = 1.0
    return FaceParams(tuple(weights), blink)


def build_viseme_track(timings: list[PhonemeTiming]) -> list[VisemeSegment]:
    """Map phoneme timings to viseme segments, merging adjacent duplicates."""
    segments: list[VisemeSegment] = []
    for t in timings:
        viseme = PHONEME_TO_VISEME[t.phoneme]
        end = t.start_ms + t.dur_ms
        if segments and segments[-1].viseme == viseme and segments[-1].end_ms == t.start_ms:
            segments[-1] = VisemeSegment(viseme, segments[-1].start_ms, end)
        else:
            segments.append(VisemeSegment(viseme, t.start_ms, end))
    return segments


def blink_amount(t_ms: int) -> float:
    if t_ms >= BLINK_PERIOD_MS and t_ms % BLINK_PERIOD_MS < BLINK_LEN_MS:
        return 1.0
    return 0.0


def sample_face_params(track: list[VisemeSegment], t_ms: int) -> FaceParams:
    """Viseme weights at time t with +/-20 ms crossfades at internal boundaries.

    Outside the track (before its start, at or past its end, or for an empty
    track) the face is pure V_SIL.  At an internal boundary instant the two
    neighboring visemes weigh 0.5 each.  Segments shorter than 40 ms blend
    only toward the nearer boundary so weights stay convex.
    """
    blink = blink_amount(t_ms)
    if not track or t_ms < track[0].start_ms or t_ms >= track[-1].end_ms:
        return _pure("V_SIL", blink)

    idx = 0
    for i, seg in enumerate(track):
        if seg.start_ms <= t_ms < seg.end_ms:
            idx = i
            break

    seg = track[idx]
    near_start = idx > 0 and t_ms < seg.start_ms + CROSSFADE_MS
    near_end = idx < len(track) - 1 and t_ms >= seg.end_ms - CROSSFADE_MS
    if near_start and near_end:
        # Degenerate short segment: blend only toward the nearer boundary.
        if t_ms - seg.start_ms <= seg.end_ms - 1 - t_ms:
            near_end = False
        else:
            near_start = False

    weights = [0.0] * len(VISEME_NAMES)
    if near_start:
        boundary = seg.start_ms
        w_this = (t_ms - (boundary - CROSSFADE_MS)) / (2.0 * CROSSFADE_MS)
        weights[_VISEME_INDEX[seg.viseme]] += w_this
        weights[_VISEME_INDEX[track[idx - 1].viseme]] += 1.0 - w_this
    elif near_end:
        boundary = seg.end_ms
        w_next = (t_ms - (boundary - CROSSFADE_MS)) / (2.0 * CROSSFADE_MS)
        weights[_VISEME_INDEX[track[idx + 1].viseme]] += w_next
        weights[_VISEME_INDEX[seg.viseme]] += 1.0 - w_next
    else:
        weights[_VISEME_INDEX[seg.viseme]] = 1.0

    return FaceParams(tuple(weights), blink)
