"""vida: a deterministic real-time talking-avatar interaction engine.

Text or speech goes in, a paced stream of synchronized audio, video and
event packets comes out.  Every stage (speech recognition, dialog,
speech synthesis, face animation, packet pacing) is a small deterministic
reference implementation, so full sessions are byte-reproducible under a
virtual clock.
"""

from vida.config import EngineConfig, ConfigError, load_config, frame_period_micros, quantize_pts
from vida.clock import Clock, RealClock, VirtualClock
from vida.media import AudioBuffer, RgbaImage, SAMPLE_RATE_HZ

__all__ = [
    "EngineConfig",
    "ConfigError",
    "load_config",
    "frame_period_micros",
    "quantize_pts",
    "Clock",
    "RealClock",
    "VirtualClock",
    "AudioBuffer",
    "RgbaImage",
    "SAMPLE_RATE_HZ",
]

__version__ = "0.1.0"
