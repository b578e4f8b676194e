"""The body playback state machine: Idle -> EnterSpeak -> Speaking -> ExitSpeak.

Idle and Speaking loop their frame lists; the transition modes play through
once and fall into the following mode.  Speak events arriving at the wrong
moment are queued, never dropped: SpeakStart applies only in Idle, SpeakEnd
only in Speaking, and at most one event applies per step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from vida.media import RgbaImage
from vida.avatar.body import BodyAssets
from vida.avatar.visemes import AvatarError

MODES = ("Idle", "EnterSpeak", "Speaking", "ExitSpeak")

SPEAK_START = "SpeakStart"
SPEAK_END = "SpeakEnd"

_LOOPING = {"Idle", "Speaking"}
_NEXT_MODE = {"EnterSpeak": "Speaking", "ExitSpeak": "Idle"}
_EVENT_TARGET = {SPEAK_START: ("Idle", "EnterSpeak"), SPEAK_END: ("Speaking", "ExitSpeak")}


@dataclass(frozen=True)
class PlayState:
    mode: str = "Idle"
    frame_index: int = 0
    pending: tuple[str, ...] = field(default=())


def _skip_empty(mode: str, assets: BodyAssets) -> str:
    # Transition modes with no frames fall straight through.
    while mode in _NEXT_MODE and not assets.frames_for(mode):
        mode = _NEXT_MODE[mode]
    return mode


def play_control_step(state: PlayState, event: str | None,
                      assets: BodyAssets) -> tuple[PlayState, RgbaImage]:
    """Advance the machine one video frame and return the frame to show."""
    if state.mode not in MODES:
        raise AvatarError(f"unknown play mode: {state.mode!r}")
    if not assets.idle or not assets.speak:
        raise AvatarError("body assets must provide idle and speak frames")

    pending = state.pending
    if event is not None:
        if event not in _EVENT_TARGET:
            raise AvatarError(f"unknown play event: {event!r}")
        pending = pending + (event,)

    if pending and state.mode == _EVENT_TARGET[pending[0]][0]:
        target = _skip_empty(_EVENT_TARGET[pending[0]][1], assets)
        new_state = PlayState(target, 0, pending[1:])
    else:
        frames = assets.frames_for(state.mode)
        if not 0 <= state.frame_index < len(frames):
            raise AvatarError(
                f"frame index {state.frame_index} out of range for {state.mode}"
                f" ({len(frames)} frames)"
            )
        nxt = state.frame_index + 1
        if nxt < len(frames):
            new_state = PlayState(state.mode, nxt, pending)
        elif state.mode in _LOOPING:
            new_state = PlayState(state.mode, 0, pending)
        else:
            new_state = PlayState(_skip_empty(_NEXT_MODE[state.mode], assets), 0, pending)

    frame = assets.frames_for(new_state.mode)[new_state.frame_index]
    return new_state, frame
