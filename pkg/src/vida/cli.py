"""Operator entry points.

``vida serve`` runs the WebSocket media server, ``vida chat`` runs a
terminal conversation, ``vida dump`` records one scripted turn under the
virtual clock as reviewable files, ``vida roundtrip`` synthesizes and
re-decodes every unique-pronunciation lexicon word, and ``vida bench``
measures multi-session frame pacing against the real clock.

Every subcommand exits non-zero on errors, prints errors to stderr and
results to stdout.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import socket
import sys
import threading
from pathlib import Path

import click
import numpy as np

from vida import __version__
from vida.clock import VirtualClock
from vida.config import ConfigError, EngineConfig, load_config
from vida.dialog.engine import DialogEngine, load_dialog_assets
from vida.dialog.kb import DialogError
from vida.media import AudioBuffer, MediaError, RgbaImage
from vida.speech.decode import asr_decode
from vida.speech.lexicon import g2p, load_lexicon
from vida.speech.phonemes import SpeechError, predict_durations
from vida.speech.synth import synthesize
from vida.avatar.visemes import AvatarError
from vida.streamer.packets import (
    CONTROL_SPEAK_END,
    CONTROL_SPEAK_START,
    MediaPacket,
    PacketKind,
    write_packets,
)
from vida.streamer.session import Engine, Session

_LOAD_ERRORS = (ConfigError, DialogError, SpeechError, AvatarError, MediaError, OSError)

_DUMP_LEAD_TICKS = 5
_DUMP_TAIL_TICKS = 5
_DUMP_MAX_TICKS = 25_000

_BENCH_SCRIPT = (
    "hello",
    "what is the weather in beijing",
    "turn on the lamp",
)


def _load_cfg(config_path: str | None) -> EngineConfig:
    try:
        return load_config(config_path)
    except ConfigError as exc:
        raise click.ClickException(str(exc))


def _build_engine(cfg: EngineConfig, clock=None) -> Engine:
    try:
        return Engine(cfg, clock=clock)
    except _LOAD_ERRORS as exc:
        raise click.ClickException(str(exc))


def _parse_listen(addr: str) -> tuple[str, int]:
    host, sep, port = addr.rpartition(":")
    if not sep or not host or not port.isdigit():
        raise click.ClickException(f"listen address must be HOST:PORT, got {addr!r}")
    return host, int(port)


@click.group()
@click.version_option(version=__version__, prog_name="vida")
def main() -> None:
    """Realtime talking-avatar agent: requests in, paced audio/video out."""


@main.command()
@click.option("--config", "config_path", default=None,
              help="Path to a TOML config file.")
@click.option("--listen", default=None, metavar="HOST:PORT",
              help="Override the configured listen address.")
@click.option("--assets-dir", default=None,
              help="Directory of static browser-console files served at /.")
@click.option("--virtual-clock", is_flag=True,
              help="Drive each connection in deterministic lockstep instead "
                   "of wall time.")
def serve(config_path: str | None, listen: str | None,
          assets_dir: str | None, virtual_clock: bool) -> None:
    """Serve the WebSocket packet stream and /metrics until interrupted."""
    import uvicorn

    from vida.streamer.server import create_app

    cfg = _load_cfg(config_path)
    engine = _build_engine(cfg)
    host, port = _parse_listen(listen or cfg.listen_addr)

    if assets_dir is not None and not Path(assets_dir).is_dir():
        raise click.ClickException(f"static assets directory not found: {assets_dir}")
    static_dir = assets_dir
    if static_dir is None and Path("frontend/dist/index.html").is_file():
        static_dir = "frontend/dist"

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        raise click.ClickException(f"cannot listen on {host}:{port}: {exc}")
    finally:
        probe.close()

    logging.basicConfig(level=logging.INFO,
                        format="%(asctime)s %(name)s %(message)s")
    app = create_app(engine, virtual_clock=virtual_clock, static_dir=static_dir)
    click.echo(f"listening on http://{host}:{port}/ (WebSocket endpoint /ws)", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--config", "config_path", default=None,
              help="Path to a TOML config file.")
def chat(config_path: str | None) -> None:
    """Converse over stdin/stdout; :state prints the dialog state, :quit exits."""
    cfg = _load_cfg(config_path)
    try:
        assets = load_dialog_assets(cfg)
    except _LOAD_ERRORS as exc:
        raise click.ClickException(str(exc))
    dialog = DialogEngine(assets)
    state = dialog.new_state("chat")

    while True:
        print("> ", end="", file=sys.stderr, flush=True)
        line = sys.stdin.readline()
        if not line:
            return
        line = line.strip()
        if not line:
            continue
        if line == ":quit":
            return
        if line == ":state":
            click.echo(json.dumps(dataclasses.asdict(state)))
            continue
        state, reply, _ = dialog.converse(state, line)
        click.echo(reply)


@main.command()
@click.option("--text", required=True, help="The user utterance to send.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False), help="Output directory.")
@click.option("--config", "config_path", default=None,
              help="Path to a TOML config file.")
def dump(text: str, out_dir: str, config_path: str | None) -> None:
    """Record one text turn under the virtual clock as reviewable files.

    Writes reply.txt, audio.wav, frames/NNNN.png for the spoken interval,
    packets.bin (length-prefixed encoded packets), and report.json.  Output
    is bit-stable across runs.
    """
    cfg = _load_cfg(config_path)
    clock = VirtualClock()
    engine = _build_engine(cfg, clock=clock)
    session = engine.open_session()
    period = session.frame_period

    released: list[MediaPacket] = []

    def tick() -> None:
        clock.advance(period)
        released.extend(session.pace(clock.now_micros()))

    for _ in range(_DUMP_LEAD_TICKS):
        tick()
    ack = session.handle_text_request(text)
    if ack != "ok":
        raise click.ClickException(f"request was not accepted: {ack}")
    ticks = 0
    while session.busy:
        tick()
        ticks += 1
        if ticks > _DUMP_MAX_TICKS:
            raise click.ClickException("utterance did not finish pacing")
    for _ in range(_DUMP_TAIL_TICKS):
        tick()

    reply = next(p.payload.parsed()["text"] for p in released
                 if p.kind == PacketKind.EVENT
                 and p.payload.parsed()["event"] == "reply")
    audio_bytes = b"".join(p.payload.data for p in released
                           if p.kind == PacketKind.AUDIO)
    speak_start = next(p.pts for p in released
                       if p.kind == PacketKind.CONTROL
                       and p.payload.code == CONTROL_SPEAK_START)
    speak_end = next(p.pts for p in released
                     if p.kind == PacketKind.CONTROL
                     and p.payload.code == CONTROL_SPEAK_END)
    spoken_frames = [p for p in released
                     if p.kind == PacketKind.VIDEO
                     and speak_start <= p.pts < speak_end]

    out = Path(out_dir)
    try:
        frames_dir = out / "frames"
        frames_dir.mkdir(parents=True, exist_ok=True)
        (out / "reply.txt").write_text(reply + "\n", encoding="utf-8")
        AudioBuffer.from_bytes_le(audio_bytes).write_wav(str(out / "audio.wav"))
        write_packets(out / "packets.bin", released)
        for i, packet in enumerate(spoken_frames):
            image = RgbaImage.from_rgb24(packet.payload.width,
                                         packet.payload.height,
                                         packet.payload.data)
            (frames_dir / f"{i:04d}.png").write_bytes(image.to_png())
        report = json.dumps(engine.metrics_document(), indent=2) + "\n"
        (out / "report.json").write_text(report, encoding="utf-8")
    except OSError as exc:
        raise click.ClickException(f"cannot write dump output: {exc}")

    click.echo(
        f"wrote {len(released)} packets and {len(spoken_frames)} spoken frames to {out}",
        err=True,
    )


@main.command()
@click.option("--config", "config_path", default=None,
              help="Path to a TOML config file.")
def roundtrip(config_path: str | None) -> None:
    """Check decode(synthesize(word)) == word for the whole lexicon."""
    cfg = _load_cfg(config_path)
    try:
        lex = load_lexicon(cfg.lexicon_path)
    except _LOAD_ERRORS as exc:
        raise click.ClickException(str(exc))

    words = lex.unique_pronunciation_words()
    skipped = len(lex) - len(words)
    if not words:
        raise click.ClickException("no words with unique pronunciations in the lexicon")

    failures = 0
    for word in words:
        audio = synthesize(predict_durations(g2p(word, lex)))
        decoded = asr_decode(audio, lex).text
        if decoded != word:
            failures += 1
            click.echo(f"FAIL {word}: decoded as {decoded!r}")

    click.echo(f"{len(words) - failures}/{len(words)} passed")
    click.echo(f"skipped {skipped} words with shared pronunciations")
    if failures:
        sys.exit(1)


def _bench_session(engine: Engine, end_after_micros: int,
                   results: list, index: int) -> None:
    session = engine.open_session()
    clock = session.clock
    period = session.frame_period
    end_abs = session.epoch_micros + end_after_micros
    next_wake = session.epoch_micros + period
    next_turn_at = session.epoch_micros + 500_000
    turn_index = 0
    video_count = 0
    audio_count = 0
    departures: list[int] = []

    while next_wake <= end_abs:
        clock.wait_until(next_wake)
        now = clock.now_micros()
        session.pace_and_enqueue(now)
        for packet in session.queue.drain():
            if packet.kind == PacketKind.VIDEO:
                if packet.pts < end_after_micros:
                    video_count += 1
                    departures.append(clock.now_micros())
            elif packet.kind == PacketKind.AUDIO:
                audio_count += 1
        if not session.busy and now >= next_turn_at:
            session.handle_text_request(_BENCH_SCRIPT[turn_index % len(_BENCH_SCRIPT)])
            turn_index += 1
            next_turn_at = now + 2_000_000
        while next_wake <= clock.now_micros():
            next_wake += period

    dropped = session.queue.dropped_video
    engine.close_session(session.session_id)

    deltas = np.diff(np.asarray(departures, dtype=np.int64))
    deviations_ms = np.abs(deltas - period) / 1000.0
    seconds = end_after_micros / 1e6
    results[index] = {
        "session_id": session.session_id,
        "video_packets": video_count,
        "audio_packets": audio_count,
        "turns": turn_index,
        "achieved_fps": round(video_count / seconds, 3),
        "p95_jitter_ms": round(float(np.percentile(deviations_ms, 95)), 3)
        if len(deviations_ms) else 0.0,
        "dropped_video": dropped,
    }


@main.command()
@click.option("--sessions", "n_sessions", type=click.IntRange(min=1), default=4,
              show_default=True, help="Concurrent sessions to pace.")
@click.option("--seconds", type=click.FloatRange(min=0.5), default=10.0,
              show_default=True, help="How long to run each session.")
@click.option("--config", "config_path", default=None,
              help="Path to a TOML config file.")
def bench(n_sessions: int, seconds: float, config_path: str | None) -> None:
    """Pace N concurrent sessions on the real clock and report fps and jitter.

    Exits 0 only if every session achieved at least 99% of the configured
    frame rate.  The p95 jitter figure is reported, not asserted.
    """
    cfg = _load_cfg(config_path)
    engine = _build_engine(cfg)

    results: list = [None] * n_sessions
    threads = [
        threading.Thread(target=_bench_session,
                         args=(engine, int(seconds * 1e6), results, i),
                         name=f"bench-{i}")
        for i in range(n_sessions)
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    document = {"schema": 1, "target_fps": cfg.fps, "seconds": seconds,
                "sessions": results}
    click.echo(json.dumps(document, indent=2))

    floor_fps = 0.99 * cfg.fps
    for row in results:
        if row["p95_jitter_ms"] > 10.0:
            click.echo(f"note: {row['session_id']} p95 jitter "
                       f"{row['p95_jitter_ms']} ms exceeds the 10 ms soft target",
                       err=True)
    if any(row["achieved_fps"] < floor_fps for row in results):
        click.echo(f"achieved fps fell below {floor_fps:.2f}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
