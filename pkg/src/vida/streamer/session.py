"""Streaming sessions: the request pipeline plus frame-grid pacing.

A ``Session`` owns one client's conversation: dialog state, play-control
state, the outbound packet queue, and per-turn latency traces.  A request
(text, or audio that is first transcribed) runs the full pipeline
synchronously: converse, pronounce, time, synthesize, build the viseme
track, then schedule the utterance on the video frame grid starting at the
next free grid tick.  ``pace(now)`` releases every packet whose pts the
session clock has passed: one video frame per grid tick (body frame alone
while idle, face fused onto body while speaking), one 40 ms audio chunk per
speaking tick released just before its video frame, SpeakStart/SpeakEnd
control packets at the utterance boundaries, and any queued event packets.

The face renderer runs only for ticks inside a speak interval; an idle
session never renders a face.  ``face_render_calls`` counts the calls so
tests (and the curious) can observe the gating.

Exactly one turn may be in flight per session: concurrent requests are
answered with a busy event packet and otherwise ignored.  The turn stays in
flight until its SpeakEnd control packet is released.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from vida.avatar.body import BodyAssets, load_body_assets
from vida.avatar.face import render_face
from vida.avatar.fuse import fuse
from vida.avatar.playcontrol import (
    SPEAK_END,
    SPEAK_START,
    PlayState,
    play_control_step,
)
from vida.avatar.visemes import VisemeSegment, build_viseme_track, sample_face_params
from vida.clock import Clock, RealClock
from vida.config import EngineConfig, frame_period_micros, quantize_pts_up
from vida.dialog.engine import DialogAssets, DialogEngine, load_dialog_assets
from vida.media import SAMPLE_RATE_HZ, AudioBuffer
from vida.speech.decode import asr_decode
from vida.speech.lexicon import Lexicon, g2p, load_lexicon
from vida.speech.phonemes import SpeechError, predict_durations
from vida.speech.synth import synthesize
from vida.streamer.metrics import LatencyReport
from vida.streamer.packets import (
    CONTROL_SPEAK_END,
    CONTROL_SPEAK_START,
    FORMAT_RAW_RGB24,
    AudioPayload,
    ControlPayload,
    EventPayload,
    MediaPacket,
    PacketKind,
    VideoPayload,
    event_json,
)
from vida.streamer.queueing import OutboundQueue


class SessionLimitError(RuntimeError):
    """Raised when opening a session past the configured maximum."""


@dataclass
class EngineAssets:
    """Read-only assets shared by every session of an engine."""

    lexicon: Lexicon
    dialog: DialogAssets
    bodies: BodyAssets


def load_engine_assets(cfg: EngineConfig) -> EngineAssets:
    return EngineAssets(
        lexicon=load_lexicon(cfg.lexicon_path),
        dialog=load_dialog_assets(cfg),
        bodies=load_body_assets(cfg),
    )


@dataclass
class _SpeakPlan:
    """One scheduled utterance: audio chunks and visemes on the frame grid."""

    epoch_pts: int
    end_pts: int
    chunks: list[bytes]
    track: list[VisemeSegment]


@dataclass
class _TurnTrace:
    t_request: int
    t_transcript: int
    t_reply_text: int = 0
    t_first_audio: int = 0
    t_first_frame: int | None = None
    t_first_packet_sent: int | None = None


class Session:
    def __init__(self, session_id: str, cfg: EngineConfig,
                 assets: EngineAssets, clock: Clock) -> None:
        self.session_id = session_id
        self.cfg = cfg
        self.assets = assets
        self.clock = clock
        self.queue = OutboundQueue(cfg.outbound_queue_cap)
        self.epoch_micros = clock.now_micros()
        self.frame_period = frame_period_micros(cfg)
        self.face_render_calls = 0

        self._dialog = DialogEngine(assets.dialog)
        self._dialog_state = self._dialog.new_state(session_id)
        self._play = PlayState()
        self._next_video_pts = 0
        self._samples_per_frame = cfg.frame_period_ms * SAMPLE_RATE_HZ // 1000
        self._pending_events: list[MediaPacket] = []
        self._speak: _SpeakPlan | None = None
        self._turn: _TurnTrace | None = None
        self._in_flight = False
        self._reports: list[LatencyReport] = []
        self._closed = False
        self._lock = threading.Lock()

    # -- public state -----------------------------------------------------

    @property
    def busy(self) -> bool:
        with self._lock:
            return self._in_flight

    @property
    def closed(self) -> bool:
        with self._lock:
            return self._closed

    def latency_report(self) -> list[LatencyReport]:
        """One report per completed turn, in completion order."""
        with self._lock:
            return list(self._reports)

    def close(self) -> None:
        with self._lock:
            self._closed = True
        self.queue.close()

    # -- request handling --------------------------------------------------

    def handle_text_request(self, text: str) -> str:
        with self._lock:
            now = self._elapsed()
            if self._in_flight:
                self._push_event("busy", "", now)
                return "busy"
            self._in_flight = True
            return self._run_turn(text, t_request=now, t_transcript=now)

    def handle_audio_request(self, audio: AudioBuffer) -> str:
        with self._lock:
            t_request = self._elapsed()
            if self._in_flight:
                self._push_event("busy", "", t_request)
                return "busy"
            self._in_flight = True
            try:
                transcript = asr_decode(audio, self.assets.lexicon)
            except SpeechError:
                transcript = None
            if transcript is None or not transcript.text:
                self._push_event("unintelligible", "", self._elapsed())
                self._in_flight = False
                return "unintelligible"
            t_transcript = self._elapsed()
            self._push_event("transcript", transcript.text, t_transcript)
            return self._run_turn(transcript.text, t_request, t_transcript)

    def _run_turn(self, text: str, t_request: int, t_transcript: int) -> str:
        try:
            self._dialog_state, reply, _ = self._dialog.converse(self._dialog_state, text)
            t_reply_text = self._elapsed()
            self._push_event("reply", reply, t_reply_text)

            timings = predict_durations(g2p(reply, self.assets.lexicon))
            audio = synthesize(timings)
            t_first_audio = self._elapsed()
            track = build_viseme_track(timings)

            epoch = max(quantize_pts_up(self._elapsed(), self.cfg), self._next_video_pts)
            chunks = self._chunk_audio(audio)
            self._speak = _SpeakPlan(
                epoch_pts=epoch,
                end_pts=epoch + len(chunks) * self.frame_period,
                chunks=chunks,
                track=track,
            )
            self._turn = _TurnTrace(t_request, t_transcript, t_reply_text, t_first_audio)
        except BaseException:
            self._in_flight = False
            raise
        return "ok"

    def _chunk_audio(self, audio: AudioBuffer) -> list[bytes]:
        chunk_bytes = self._samples_per_frame * 2
        raw = audio.to_bytes_le()
        remainder = len(raw) % chunk_bytes
        if remainder:
            raw += b"\x00" * (chunk_bytes - remainder)
        return [raw[i:i + chunk_bytes] for i in range(0, len(raw), chunk_bytes)]

    def _push_event(self, event: str, text: str, pts: int) -> None:
        self._pending_events.append(
            MediaPacket(PacketKind.EVENT, pts, EventPayload(event_json(event, text)))
        )

    def _elapsed(self) -> int:
        return self.clock.now_micros() - self.epoch_micros

    # -- pacing --------------------------------------------------------------

    def pace(self, now_micros: int) -> list[MediaPacket]:
        """Release every packet due by ``now_micros`` on the session clock.

        Video ticks release once their grid slot has elapsed (pts strictly
        below elapsed time); event packets release as soon as their pts is
        reached.  Within one speaking tick the order is control, audio, video.
        """
        with self._lock:
            if self._closed:
                return []
            elapsed = now_micros - self.epoch_micros
            released: list[MediaPacket] = []
            while self._pending_events and self._pending_events[0].pts <= elapsed:
                released.append(self._pending_events.pop(0))
            while self._next_video_pts < elapsed:
                released.extend(self._tick(self._next_video_pts))
                self._next_video_pts += self.frame_period
            return released

    def pace_and_enqueue(self, now_micros: int) -> int:
        """Pace, then push every released packet through the outbound queue.

        Returns how many queued video packets the backpressure policy evicted.
        """
        dropped = 0
        for packet in self.pace(now_micros):
            if self.queue.put(packet):
                dropped += 1
        return dropped

    def _tick(self, pts: int) -> list[MediaPacket]:
        packets: list[MediaPacket] = []
        speak = self._speak
        fsm_event: str | None = None

        if speak is not None and pts == speak.epoch_pts:
            packets.append(MediaPacket(
                PacketKind.CONTROL, pts, ControlPayload(CONTROL_SPEAK_START)))
            fsm_event = SPEAK_START
        if speak is not None and pts == speak.end_pts:
            packets.append(MediaPacket(
                PacketKind.CONTROL, pts, ControlPayload(CONTROL_SPEAK_END)))
            fsm_event = SPEAK_END

        self._play, body = play_control_step(self._play, fsm_event, self.assets.bodies)

        speaking = speak is not None and speak.epoch_pts <= pts < speak.end_pts
        if speaking:
            t_ms = (pts - speak.epoch_pts) // 1000
            face = render_face(sample_face_params(speak.track, t_ms), self.cfg.face_size)
            self.face_render_calls += 1
            if self._turn is not None and self._turn.t_first_frame is None:
                self._turn.t_first_frame = self._elapsed()
            frame = fuse(body, face, (self.cfg.anchor_x, self.cfg.anchor_y))

            chunk = speak.chunks[(pts - speak.epoch_pts) // self.frame_period]
            packets.append(MediaPacket(
                PacketKind.AUDIO, pts, AudioPayload(SAMPLE_RATE_HZ, 1, chunk)))
            if self._turn is not None and self._turn.t_first_packet_sent is None:
                self._turn.t_first_packet_sent = self._elapsed()
        else:
            frame = body

        packets.append(MediaPacket(
            PacketKind.VIDEO, pts,
            VideoPayload(frame.width, frame.height, FORMAT_RAW_RGB24,
                         frame.rgb24_bytes()),
        ))

        if speak is not None and pts == speak.end_pts:
            self._finish_turn()
        return packets

    def _finish_turn(self) -> None:
        turn = self._turn
        if turn is not None and turn.t_first_packet_sent is not None:
            assert turn.t_first_frame is not None
            self._reports.append(LatencyReport(
                t_request=turn.t_request,
                t_transcript=turn.t_transcript,
                t_reply_text=turn.t_reply_text,
                t_first_audio=turn.t_first_audio,
                t_first_frame=turn.t_first_frame,
                t_first_packet_sent=turn.t_first_packet_sent,
            ))
        self._speak = None
        self._turn = None
        self._in_flight = False


class Engine:
    """Owns the shared assets and the open-session table."""

    def __init__(self, cfg: EngineConfig, assets: EngineAssets | None = None,
                 clock: Clock | None = None) -> None:
        self.cfg = cfg
        self.assets = assets if assets is not None else load_engine_assets(cfg)
        self.clock: Clock = clock if clock is not None else RealClock()
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._archived: list[tuple[str, list[LatencyReport], int]] = []
        self._next_id = 0

    def open_session(self, clock: Clock | None = None) -> Session:
        with self._lock:
            if len(self._sessions) >= self.cfg.max_sessions:
                raise SessionLimitError(
                    f"session limit reached ({self.cfg.max_sessions} open)")
            self._next_id += 1
            session = Session(f"sess-{self._next_id}", self.cfg, self.assets,
                              clock if clock is not None else self.clock)
            self._sessions[session.session_id] = session
            return session

    def close_session(self, session_id: str) -> None:
        with self._lock:
            session = self._sessions.pop(session_id, None)
        if session is None:
            return
        session.close()
        with self._lock:
            self._archived.append((
                session.session_id,
                session.latency_report(),
                session.queue.dropped_video,
            ))

    def sessions(self) -> list[Session]:
        with self._lock:
            return list(self._sessions.values())

    def metrics_document(self) -> dict:
        """The /metrics JSON body: every turn's report plus drop counters."""
        with self._lock:
            archived = list(self._archived)
            active = list(self._sessions.values())
        reports: list[dict] = []
        drops: dict[str, dict] = {}
        for sid, session_reports, dropped in archived:
            reports.extend({"session_id": sid, **r.to_dict()} for r in session_reports)
            drops[sid] = {"dropped_video": dropped}
        for session in active:
            reports.extend({"session_id": session.session_id, **r.to_dict()}
                           for r in session.latency_report())
            drops[session.session_id] = {"dropped_video": session.queue.dropped_video}
        return {
            "schema": 1,
            "latency_budget_ms": self.cfg.latency_budget_ms,
            "reports": reports,
            "drop_counters": drops,
        }
