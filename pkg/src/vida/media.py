"""Core media value types: 16 kHz mono PCM audio and RGBA raster images.

Includes stdlib-only WAV read/write and a minimal deterministic PNG writer
(fixed zlib level, filter 0, one IDAT chunk) so golden image bytes stay
stable across runs.  PNG *decoding* of arbitrary files is delegated to
Pillow, which handles the formats image editors actually produce.
"""

from __future__ import annotations

import io
import struct
import wave
import zlib
from dataclasses import dataclass

import numpy as np

SAMPLE_RATE_HZ = 16_000

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_PNG_ZLIB_LEVEL = 6


class MediaError(ValueError):
    """Raised for malformed audio or image data."""


@dataclass
class AudioBuffer:
    """Mono signed 16-bit PCM at 16 kHz."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples)
        if arr.dtype != np.int16:
            raise MediaError(f"audio samples must be int16, got {arr.dtype}")
        if arr.ndim != 1:
            raise MediaError(f"audio must be mono (1-D), got shape {arr.shape}")
        self.samples = arr

    def __len__(self) -> int:
        return len(self.samples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AudioBuffer):
            return NotImplemented
        return np.array_equal(self.samples, other.samples)

    @property
    def duration_ms(self) -> int:
        return len(self.samples) * 1000 // SAMPLE_RATE_HZ

    @property
    def duration_micros(self) -> int:
        return len(self.samples) * 1_000_000 // SAMPLE_RATE_HZ

    @classmethod
    def silence(cls, duration_ms: int) -> "AudioBuffer":
        n = duration_ms * SAMPLE_RATE_HZ // 1000
        return cls(np.zeros(n, dtype=np.int16))

    @classmethod
    def concat(cls, parts: list["AudioBuffer"]) -> "AudioBuffer":
        if not parts:
            return cls(np.zeros(0, dtype=np.int16))
        return cls(np.concatenate([p.samples for p in parts]))

    def to_bytes_le(self) -> bytes:
        """Samples as little-endian s16 byte pairs, the wire layout."""
        return self.samples.astype("<i2").tobytes()

    @classmethod
    def from_bytes_le(cls, data: bytes) -> "AudioBuffer":
        if len(data) % 2 != 0:
            raise MediaError(f"PCM byte length {len(data)} is not a multiple of 2")
        return cls(np.frombuffer(data, dtype="<i2").astype(np.int16))

    def write_wav(self, path: str) -> None:
        with wave.open(path, "wb") as wf:
            wf.setnchannels(1)
            wf.setsampwidth(2)
            wf.setframerate(SAMPLE_RATE_HZ)
            wf.writeframes(self.to_bytes_le())

    @classmethod
    def read_wav(cls, path: str) -> "AudioBuffer":
        with wave.open(path, "rb") as wf:
            if wf.getnchannels() != 1:
                raise MediaError(f"{path}: expected mono WAV, got {wf.getnchannels()} channels")
            if wf.getsampwidth() != 2:
                raise MediaError(f"{path}: expected 16-bit samples, got {wf.getsampwidth() * 8}-bit")
            if wf.getframerate() != SAMPLE_RATE_HZ:
                raise MediaError(f"{path}: expected {SAMPLE_RATE_HZ} Hz, got {wf.getframerate()}")
            data = wf.readframes(wf.getnframes())
        return cls.from_bytes_le(data)


@dataclass
class RgbaImage:
    """Packed 8-bit RGBA raster, row-major, no padding."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self) -> None:
        expected = self.width * self.height * 4
        if len(self.pixels) != expected:
            raise MediaError(
                f"pixel buffer is {len(self.pixels)} bytes, expected {expected}"
                f" for {self.width}x{self.height} RGBA"
            )

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width, 4).copy()

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RgbaImage":
        if arr.ndim != 3 or arr.shape[2] != 4 or arr.dtype != np.uint8:
            raise MediaError(f"expected (h, w, 4) uint8 array, got {arr.shape} {arr.dtype}")
        return cls(arr.shape[1], arr.shape[0], arr.tobytes())

    @classmethod
    def filled(cls, width: int, height: int, rgba: tuple[int, int, int, int]) -> "RgbaImage":
        arr = np.empty((height, width, 4), dtype=np.uint8)
        arr[:, :] = rgba
        return cls.from_array(arr)

    def rgb24_bytes(self) -> bytes:
        """Drop the alpha channel; the raw video payload layout."""
        return self.to_array()[:, :, :3].tobytes()

    @classmethod
    def from_rgb24(cls, width: int, height: int, data: bytes) -> "RgbaImage":
        if len(data) != width * height * 3:
            raise MediaError(f"RGB24 buffer is {len(data)} bytes, expected {width * height * 3}")
        rgb = np.frombuffer(data, dtype=np.uint8).reshape(height, width, 3)
        arr = np.empty((height, width, 4), dtype=np.uint8)
        arr[:, :, :3] = rgb
        arr[:, :, 3] = 255
        return cls.from_array(arr)

    def to_png(self, drop_alpha: bool = False) -> bytes:
        arr = self.to_array()
        if drop_alpha:
            return _encode_png(arr[:, :, :3])
        return _encode_png(arr)

    @classmethod
    def from_png(cls, data: bytes) -> "RgbaImage":
        from PIL import Image

        with Image.open(io.BytesIO(data)) as img:
            rgba = img.convert("RGBA")
            return cls(rgba.width, rgba.height, rgba.tobytes())


def _png_chunk(tag: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(tag + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + tag + payload + struct.pack(">I", crc)


def _encode_png(arr: np.ndarray) -> bytes:
    """Write an 8-bit RGB or RGBA PNG with filter 0 on every row."""
    height, width, channels = arr.shape
    color_type = 6 if channels == 4 else 2
    ihdr = struct.pack(">IIBBBBB", width, height, 8, color_type, 0, 0, 0)
    raw = b"".join(b"\x00" + arr[y].tobytes() for y in range(height))
    idat = zlib.compress(raw, _PNG_ZLIB_LEVEL)
    return (
        _PNG_SIGNATURE
        + _png_chunk(b"IHDR", ihdr)
        + _png_chunk(b"IDAT", idat)
        + _png_chunk(b"IEND", b"")
    )
