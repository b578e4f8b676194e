"""Binary wire codec for the muxed audio/video/event/control stream.

Layout (big-endian), one packet per transport frame:

  byte 0      kind: 0x01 Video, 0x02 Audio, 0x03 Event, 0x04 Control
  bytes 1-8   pts in microseconds, unsigned 64-bit
  payload     kind-specific:
    Video:   u16 width, u16 height, u8 format (0 raw RGB24, 1 PNG), pixels
    Audio:   u32 sample_rate, u8 channels, interleaved s16le samples
    Event:   u16 byte length, UTF-8 JSON {"event": ..., "text": ...}
    Control: u8 code (0 SpeakStart, 1 SpeakEnd)

Video and Audio payloads run to the end of the frame, so the wire format
leans on the transport (one WebSocket message per packet) for framing.
Packet files written to disk therefore prefix every encoded packet with a
u32 big-endian byte length; ``write_packets`` / ``read_packets`` apply and
strip that framing.

Decoding distinguishes three failure classes: ``TruncatedPacketError`` when
the buffer ends inside a fixed header field, ``UnknownKindError`` for an
unrecognized kind byte, and ``PayloadLengthError`` when a parsed header
implies a payload size that disagrees with the bytes actually present.
"""

from __future__ import annotations

import enum
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Union

_HEADER = struct.Struct(">BQ")
_VIDEO_HEAD = struct.Struct(">HHB")
_AUDIO_HEAD = struct.Struct(">IB")
_EVENT_HEAD = struct.Struct(">H")
_FILE_FRAME = struct.Struct(">I")

_MAX_PTS = 2**64 - 1

FORMAT_RAW_RGB24 = 0
FORMAT_PNG = 1

CONTROL_SPEAK_START = 0
CONTROL_SPEAK_END = 1


class PacketError(ValueError):
    """A packet could not be built, encoded or decoded."""


class TruncatedPacketError(PacketError):
    """The buffer ended before a fixed header field was complete."""


class UnknownKindError(PacketError):
    """The kind byte does not name any packet kind."""


class PayloadLengthError(PacketError):
    """The payload length disagrees with what the header implies."""


class PacketKind(enum.IntEnum):
    VIDEO = 0x01
    AUDIO = 0x02
    EVENT = 0x03
    CONTROL = 0x04


@dataclass(frozen=True)
class VideoPayload:
    width: int
    height: int
    pixel_format: int
    data: bytes

    def __post_init__(self) -> None:
        if not 1 <= self.width <= 0xFFFF or not 1 <= self.height <= 0xFFFF:
            raise PacketError(f"video dimensions out of range: {self.width}x{self.height}")
        if self.pixel_format not in (FORMAT_RAW_RGB24, FORMAT_PNG):
            raise PacketError(f"unknown video pixel format: {self.pixel_format}")
        if self.pixel_format == FORMAT_RAW_RGB24:
            expected = self.width * self.height * 3
            if len(self.data) != expected:
                raise PayloadLengthError(
                    f"raw RGB24 payload is {len(self.data)} bytes,"
                    f" expected {expected} for {self.width}x{self.height}"
                )
        elif not self.data:
            raise PayloadLengthError("PNG video payload is empty")


@dataclass(frozen=True)
class AudioPayload:
    sample_rate: int
    channels: int
    data: bytes

    def __post_init__(self) -> None:
        if not 1 <= self.sample_rate <= 0xFFFFFFFF:
            raise PacketError(f"sample rate out of range: {self.sample_rate}")
        if not 1 <= self.channels <= 0xFF:
            raise PacketError(f"channel count out of range: {self.channels}")
        frame_bytes = 2 * self.channels
        if len(self.data) == 0 or len(self.data) % frame_bytes != 0:
            raise PayloadLengthError(
                f"audio payload of {len(self.data)} bytes is not a whole number"
                f" of {frame_bytes}-byte sample frames"
            )

    @property
    def sample_count(self) -> int:
        return len(self.data) // (2 * self.channels)


@dataclass(frozen=True)
class EventPayload:
    """The raw JSON text of an event; kept verbatim so packets round-trip."""

    text: str

    def __post_init__(self) -> None:
        if len(self.text.encode("utf-8")) > 0xFFFF:
            raise PacketError("event JSON exceeds 65535 bytes")

    def parsed(self) -> dict:
        return json.loads(self.text)


@dataclass(frozen=True)
class ControlPayload:
    code: int

    def __post_init__(self) -> None:
        if not 0 <= self.code <= 0xFF:
            raise PacketError(f"control code out of range: {self.code}")


Payload = Union[VideoPayload, AudioPayload, EventPayload, ControlPayload]

_PAYLOAD_TYPES = {
    PacketKind.VIDEO: VideoPayload,
    PacketKind.AUDIO: AudioPayload,
    PacketKind.EVENT: EventPayload,
    PacketKind.CONTROL: ControlPayload,
}


@dataclass(frozen=True)
class MediaPacket:
    kind: PacketKind
    pts: int
    payload: Payload

    def __post_init__(self) -> None:
        if self.kind not in _PAYLOAD_TYPES:
            raise PacketError(f"unknown packet kind: {self.kind!r}")
        if not 0 <= self.pts <= _MAX_PTS:
            raise PacketError(f"pts out of unsigned 64-bit range: {self.pts}")
        expected = _PAYLOAD_TYPES[PacketKind(self.kind)]
        if not isinstance(self.payload, expected):
            raise PacketError(
                f"{PacketKind(self.kind).name} packet carries"
                f" {type(self.payload).__name__}, expected {expected.__name__}"
            )


def event_json(event: str, text: str) -> str:
    """Canonical event JSON: fixed key order, compact, UTF-8 friendly."""
    return json.dumps({"event": event, "text": text},
                      separators=(",", ":"), ensure_ascii=False)


def encode_packet(packet: MediaPacket) -> bytes:
    head = _HEADER.pack(int(packet.kind), packet.pts)
    p = packet.payload
    if isinstance(p, VideoPayload):
        return head + _VIDEO_HEAD.pack(p.width, p.height, p.pixel_format) + p.data
    if isinstance(p, AudioPayload):
        return head + _AUDIO_HEAD.pack(p.sample_rate, p.channels) + p.data
    if isinstance(p, EventPayload):
        body = p.text.encode("utf-8")
        return head + _EVENT_HEAD.pack(len(body)) + body
    return head + bytes([p.code])


def _need(buf: bytes, end: int, what: str) -> None:
    if len(buf) < end:
        raise TruncatedPacketError(
            f"buffer of {len(buf)} bytes ends inside the {what}"
        )


def decode_packet(buf: bytes) -> MediaPacket:
    _need(buf, _HEADER.size, "packet header")
    kind_byte, pts = _HEADER.unpack_from(buf, 0)
    try:
        kind = PacketKind(kind_byte)
    except ValueError:
        raise UnknownKindError(f"unknown packet kind byte: 0x{kind_byte:02X}") from None

    body = buf[_HEADER.size:]
    if kind is PacketKind.VIDEO:
        _need(buf, _HEADER.size + _VIDEO_HEAD.size, "video header")
        width, height, pixel_format = _VIDEO_HEAD.unpack_from(body, 0)
        data = body[_VIDEO_HEAD.size:]
        if pixel_format == FORMAT_RAW_RGB24 and len(data) < width * height * 3:
            raise PayloadLengthError(
                f"raw RGB24 payload is {len(data)} bytes,"
                f" expected {width * height * 3} for {width}x{height}"
            )
        payload: Payload = VideoPayload(width, height, pixel_format, data)
    elif kind is PacketKind.AUDIO:
        _need(buf, _HEADER.size + _AUDIO_HEAD.size, "audio header")
        sample_rate, channels = _AUDIO_HEAD.unpack_from(body, 0)
        payload = AudioPayload(sample_rate, channels, body[_AUDIO_HEAD.size:])
    elif kind is PacketKind.EVENT:
        _need(buf, _HEADER.size + _EVENT_HEAD.size, "event header")
        (length,) = _EVENT_HEAD.unpack_from(body, 0)
        data = body[_EVENT_HEAD.size:]
        if len(data) < length:
            raise TruncatedPacketError(
                f"event payload has {len(data)} of {length} declared bytes"
            )
        if len(data) > length:
            raise PayloadLengthError(
                f"event payload has {len(data) - length} bytes past its declared length"
            )
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise PacketError(f"event payload is not valid UTF-8: {exc}") from None
        payload = EventPayload(text)
    else:
        _need(buf, _HEADER.size + 1, "control code")
        if len(body) > 1:
            raise PayloadLengthError(
                f"control payload has {len(body) - 1} bytes past its single code byte"
            )
        payload = ControlPayload(body[0])

    return MediaPacket(kind, pts, payload)


def write_packets(path: str | Path, packets: list[MediaPacket]) -> None:
    """Write length-prefixed encoded packets to a file."""
    with open(path, "wb") as fh:
        for packet in packets:
            data = encode_packet(packet)
            fh.write(_FILE_FRAME.pack(len(data)))
            fh.write(data)


def split_packet_frames(data: bytes) -> list[bytes]:
    """Split a length-prefixed packet file body into encoded packet frames."""
    frames: list[bytes] = []
    offset = 0
    while offset < len(data):
        if offset + _FILE_FRAME.size > len(data):
            raise TruncatedPacketError("packet file ends inside a length prefix")
        (length,) = _FILE_FRAME.unpack_from(data, offset)
        offset += _FILE_FRAME.size
        if offset + length > len(data):
            raise TruncatedPacketError("packet file ends inside a packet frame")
        frames.append(data[offset:offset + length])
        offset += length
    return frames


def read_packets(path: str | Path) -> list[MediaPacket]:
    """Read a file produced by ``write_packets``."""
    return [decode_packet(frame) for frame in split_packet_frames(Path(path).read_bytes())]
