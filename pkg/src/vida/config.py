"""Engine configuration: typed settings, TOML loading, and the video frame grid.

All stream timing derives from one rule: video frames sit on a fixed grid of
``1_000_000 / fps`` microseconds, so ``fps`` must divide 1000 evenly to keep
the frame period an integral number of milliseconds.
"""

from __future__ import annotations

import importlib.resources
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

MICROS_PER_SECOND = 1_000_000

DEFAULT_CONFIG_FILENAME = "vida.toml"
CONFIG_ENV_VAR = "VIDA_CONFIG"


class ConfigError(ValueError):
    """Raised for unparseable config files or invariant violations."""


def _bundled_asset(name: str) -> str:
    return str(importlib.resources.files("vida").joinpath("assets", name))


@dataclass(frozen=True)
class EngineConfig:
    """Validated engine settings.

    ``anchor_x``/``anchor_y`` default to centering the face horizontally and
    placing it in the upper part of the video canvas; pass explicit values to
    override.  Asset paths default to the data files bundled with the package.
    """

    fps: int = 25
    video_width: int = 320
    video_height: int = 240
    face_size: int = 128
    anchor_x: Optional[int] = None
    anchor_y: Optional[int] = None
    latency_budget_ms: int = 400
    outbound_queue_cap: int = 64
    max_sessions: int = 16
    listen_addr: str = "127.0.0.1:8775"
    lexicon_path: str = field(default_factory=lambda: _bundled_asset("lexicon.txt"))
    kg_path: str = field(default_factory=lambda: _bundled_asset("kg.tsv"))
    qa_path: str = field(default_factory=lambda: _bundled_asset("qa_pairs.tsv"))
    templates_path: str = field(default_factory=lambda: _bundled_asset("templates.toml"))
    body_frames: str = "procedural"

    def __post_init__(self) -> None:
        if self.anchor_x is None:
            object.__setattr__(self, "anchor_x", max(0, (self.video_width - self.face_size) // 2))
        if self.anchor_y is None:
            object.__setattr__(self, "anchor_y", max(0, (self.video_height - self.face_size) // 2 - 16))
        self._validate()

    def _validate(self) -> None:
        def err(key: str, msg: str) -> ConfigError:
            return ConfigError(f"config key '{key}': {msg}")

        for key in ("fps", "video_width", "video_height", "face_size",
                    "latency_budget_ms", "outbound_queue_cap", "max_sessions",
                    "anchor_x", "anchor_y"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool):
                raise err(key, f"expected integer, got {value!r}")

        if self.fps < 1:
            raise err("fps", f"must be >= 1, got {self.fps}")
        if 1000 % self.fps != 0:
            raise err("fps", f"must divide 1000 evenly; 1000 % {self.fps} != 0")
        for key in ("video_width", "video_height", "face_size"):
            if getattr(self, key) < 16:
                raise err(key, f"must be >= 16, got {getattr(self, key)}")
        if self.anchor_x < 0 or self.anchor_x + self.face_size > self.video_width:
            raise err("anchor_x", f"face rectangle [{self.anchor_x}, {self.anchor_x + self.face_size})"
                                  f" exceeds video width {self.video_width}")
        if self.anchor_y < 0 or self.anchor_y + self.face_size > self.video_height:
            raise err("anchor_y", f"face rectangle [{self.anchor_y}, {self.anchor_y + self.face_size})"
                                  f" exceeds video height {self.video_height}")
        if self.latency_budget_ms < 1:
            raise err("latency_budget_ms", f"must be >= 1, got {self.latency_budget_ms}")
        if self.outbound_queue_cap < 8:
            raise err("outbound_queue_cap", f"must be >= 8, got {self.outbound_queue_cap}")
        if self.max_sessions < 1:
            raise err("max_sessions", f"must be >= 1, got {self.max_sessions}")

    @property
    def frame_period_ms(self) -> int:
        return 1000 // self.fps


def frame_period_micros(cfg: EngineConfig) -> int:
    """Microseconds between consecutive video frames (integral by construction)."""
    return MICROS_PER_SECOND // cfg.fps


def quantize_pts(t_micros: int, cfg: EngineConfig) -> int:
    """Snap a timestamp down onto the video frame grid."""
    if t_micros < 0:
        raise ValueError(f"timestamp must be >= 0, got {t_micros}")
    period = frame_period_micros(cfg)
    return (t_micros // period) * period


def quantize_pts_up(t_micros: int, cfg: EngineConfig) -> int:
    """Snap a timestamp up to the next grid point at or after it."""
    if t_micros < 0:
        raise ValueError(f"timestamp must be >= 0, got {t_micros}")
    period = frame_period_micros(cfg)
    return ((t_micros + period - 1) // period) * period


# TOML schema: flat scalar keys plus the [assets] sub-table.
_FLAT_KEYS = {
    "fps": int,
    "video_width": int,
    "video_height": int,
    "face_size": int,
    "anchor_x": int,
    "anchor_y": int,
    "latency_budget_ms": int,
    "outbound_queue_cap": int,
    "max_sessions": int,
    "listen_addr": str,
}
_ASSET_KEYS = {
    "lexicon": "lexicon_path",
    "kg": "kg_path",
    "qa_pairs": "qa_path",
    "templates": "templates_path",
    "body_frames": "body_frames",
}


def load_config(path: Optional[str] = None) -> EngineConfig:
    """Load engine settings from a TOML file.

    Resolution order: explicit ``path`` argument, then the ``VIDA_CONFIG``
    environment variable, then ``./vida.toml`` if present, else built-in
    defaults.  Relative asset paths are resolved against the config file's
    directory.  Unknown keys are rejected so typos fail loudly.
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None and Path(DEFAULT_CONFIG_FILENAME).is_file():
        path = DEFAULT_CONFIG_FILENAME
    if path is None:
        return EngineConfig()

    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}")

    base_dir = Path(path).resolve().parent
    kwargs: dict[str, Any] = {}

    for key, value in raw.items():
        if key == "assets":
            continue
        if key not in _FLAT_KEYS:
            raise ConfigError(f"{path}: unknown config key '{key}'")
        want = _FLAT_KEYS[key]
        if not isinstance(value, want) or isinstance(value, bool):
            raise ConfigError(f"{path}: config key '{key}': expected {want.__name__}, got {value!r}")
        kwargs[key] = value

    assets = raw.get("assets", {})
    if not isinstance(assets, dict):
        raise ConfigError(f"{path}: [assets] must be a table")
    for key, value in assets.items():
        if key not in _ASSET_KEYS:
            raise ConfigError(f"{path}: unknown config key 'assets.{key}'")
        if not isinstance(value, str):
            raise ConfigError(f"{path}: config key 'assets.{key}': expected string, got {value!r}")
        if key != "body_frames" or value != "procedural":
            value = str((base_dir / value).resolve()) if not Path(value).is_absolute() else value
        kwargs[_ASSET_KEYS[key]] = value

    try:
        return EngineConfig(**kwargs)
    except ConfigError:
        raise
    except TypeError as exc:  # pragma: no cover
        raise ConfigError(f"{path}: {exc}")


def config_field_names() -> tuple[str, ...]:
    return tuple(f.name for f in fields(EngineConfig))
