"""WebSocket media server: binary packet stream out, JSON control frames in.

One WebSocket connection is one session.  Outbound traffic is one encoded
MediaPacket per binary message.  Inbound text frames carry control JSON:
``{"type": "text", "text": ...}`` submits a text turn,
``{"type": "audio_begin"}`` + binary s16le PCM chunks + ``{"type":
"audio_end"}`` submit an audio turn, and ``{"type": "metrics"}`` answers
with the metrics document on a text frame.  HTTP GET ``/metrics`` serves
the same document; ``/`` serves the static browser console when a directory
for it is configured, else a plain placeholder page.

Under the real clock each connection runs a pacing thread (the only writer
of play state and the outbound queue) and an async sender that drains the
queue to the socket.  Under a virtual clock the connection is driven in
lockstep instead: advance one frame period, pace, send, repeat; with no
client connected no virtual time passes anywhere, so no packets exist.
"""

from __future__ import annotations

import asyncio
import json
import logging
import threading
from contextlib import asynccontextmanager, suppress
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, JSONResponse
from starlette.staticfiles import StaticFiles

from vida.clock import VirtualClock
from vida.media import AudioBuffer, MediaError
from vida.streamer.packets import encode_packet
from vida.streamer.queueing import QueueClosedError
from vida.streamer.session import Engine, Session, SessionLimitError

log = logging.getLogger("vida.server")

_PLACEHOLDER_PAGE = """<!DOCTYPE html>
<html><head><title>vida</title></head>
<body style="font-family: system-ui, sans-serif; margin: 3rem auto; max-width: 40rem">
<h1>vida media server</h1>
<p>The server is up. The browser console is not installed at this path;
build the frontend package and pass its dist directory via
<code>--assets-dir</code>, or connect your own client to the
<code>/ws</code> WebSocket endpoint.</p>
<p><a href="/metrics">/metrics</a></p>
</body></html>
"""


class _ClientInbox:
    """Applies parsed client control frames to a session."""

    def __init__(self, ws: WebSocket, engine: Engine, session: Session,
                 executor: ThreadPoolExecutor) -> None:
        self.ws = ws
        self.engine = engine
        self.session = session
        self.executor = executor
        self._audio: bytearray | None = None

    async def _call(self, fn, *args) -> None:
        loop = asyncio.get_running_loop()
        await loop.run_in_executor(self.executor, fn, *args)

    async def handle(self, message: dict) -> bool:
        """Apply one raw WebSocket message; False once the client is gone."""
        if message["type"] == "websocket.disconnect":
            return False
        data = message.get("bytes")
        if data is not None:
            if self._audio is not None:
                self._audio += data
            else:
                log.warning("session %s: binary frame outside audio_begin/audio_end",
                            self.session.session_id)
            return True

        try:
            control = json.loads(message.get("text") or "")
        except json.JSONDecodeError:
            log.warning("session %s: unparseable control frame", self.session.session_id)
            return True

        kind = control.get("type")
        if kind == "text":
            await self._call(self.session.handle_text_request, str(control.get("text", "")))
        elif kind == "audio_begin":
            self._audio = bytearray()
        elif kind == "audio_end":
            raw = bytes(self._audio or b"")
            self._audio = None
            try:
                audio = AudioBuffer.from_bytes_le(raw)
            except MediaError:
                audio = AudioBuffer.from_bytes_le(b"")
            await self._call(self.session.handle_audio_request, audio)
        elif kind == "metrics":
            await self.ws.send_text(json.dumps(self.engine.metrics_document()))
        else:
            log.warning("session %s: unknown control type %r", self.session.session_id, kind)
        return True


def _pace_loop(session: Session, stop: threading.Event) -> None:
    """Real-clock pacing: wake just past each grid tick, release, enqueue."""
    clock = session.clock
    next_wake = session.epoch_micros + session.frame_period
    logged = 0
    while not stop.is_set() and not session.closed:
        clock.wait_until(next_wake)
        now = clock.now_micros()
        try:
            session.pace_and_enqueue(now)
        except QueueClosedError:
            break
        reports = session.latency_report()
        while logged < len(reports):
            log.info("session %s turn %d e2e_ms=%.1f",
                     session.session_id, logged + 1, reports[logged].end_to_end_ms)
            logged += 1
        while next_wake <= now:
            next_wake += session.frame_period


async def _send_queue(ws: WebSocket, session: Session,
                      executor: ThreadPoolExecutor) -> None:
    loop = asyncio.get_running_loop()
    try:
        while True:
            batch = await loop.run_in_executor(executor, session.queue.get_batch, 0.25)
            if not batch and session.queue.closed:
                return
            for packet in batch:
                await ws.send_bytes(encode_packet(packet))
    except (WebSocketDisconnect, RuntimeError):
        return


async def _run_real(ws: WebSocket, engine: Engine, session: Session,
                    executor: ThreadPoolExecutor) -> None:
    stop = threading.Event()
    pacer = threading.Thread(target=_pace_loop, args=(session, stop),
                             name=f"pace-{session.session_id}", daemon=True)
    pacer.start()
    sender = asyncio.create_task(_send_queue(ws, session, executor))
    inbox = _ClientInbox(ws, engine, session, executor)
    try:
        while await inbox.handle(await ws.receive()):
            pass
    except WebSocketDisconnect:
        pass
    finally:
        stop.set()
        session.close()
        sender.cancel()
        with suppress(asyncio.CancelledError):
            await sender
        pacer.join(timeout=2.0)


async def _run_virtual(ws: WebSocket, engine: Engine, session: Session,
                       executor: ThreadPoolExecutor) -> None:
    clock = session.clock
    assert isinstance(clock, VirtualClock)
    inbox = _ClientInbox(ws, engine, session, executor)
    receiver = asyncio.create_task(ws.receive())
    try:
        while True:
            if receiver.done():
                if not await inbox.handle(receiver.result()):
                    break
                receiver = asyncio.create_task(ws.receive())
            clock.advance(session.frame_period)
            for packet in session.pace(clock.now_micros()):
                await ws.send_bytes(encode_packet(packet))
            await asyncio.sleep(0)
    except (WebSocketDisconnect, RuntimeError):
        pass
    finally:
        receiver.cancel()
        with suppress(asyncio.CancelledError, WebSocketDisconnect, RuntimeError):
            await receiver
        session.close()


def create_app(engine: Engine, *, virtual_clock: bool = False,
               static_dir: str | None = None) -> FastAPI:
    executor = ThreadPoolExecutor(
        max_workers=engine.cfg.max_sessions * 2 + 4, thread_name_prefix="vida-ws")

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        executor.shutdown(wait=False)

    app = FastAPI(title="vida", lifespan=lifespan,
                  docs_url=None, redoc_url=None, openapi_url=None)
    app.state.engine = engine

    @app.get("/metrics")
    async def metrics() -> JSONResponse:
        return JSONResponse(engine.metrics_document())

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        try:
            session = engine.open_session(VirtualClock() if virtual_clock else None)
        except SessionLimitError as exc:
            await ws.close(code=1013, reason=str(exc))
            return
        log.info("session %s open", session.session_id)
        try:
            if virtual_clock:
                await _run_virtual(ws, engine, session, executor)
            else:
                await _run_real(ws, engine, session, executor)
        finally:
            dropped = session.queue.dropped_video
            engine.close_session(session.session_id)
            log.info("session %s close dropped_video=%d", session.session_id, dropped)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="console")
    else:
        @app.get("/")
        async def index() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER_PAGE)

    return app
