"""Tone-codec speech synthesis.

Each phoneme renders as a pure sine at its own frequency, amplitude 0.5 of
full scale, with 5 ms linear fades at both ends so concatenation points do
not click.  SIL renders as digital silence.  The output is the sample-exact
concatenation of the per-phoneme renders, so decode-side analysis windows
see one dominant tone per phoneme interval.
"""

from __future__ import annotations

import numpy as np

from vida.media import SAMPLE_RATE_HZ, AudioBuffer
from vida.speech.phonemes import SIL, PhonemeTiming, SpeechError, tone_hz

AMPLITUDE = 0.5
FADE_MS = 5
MIN_PHONEME_MS = 10

_FADE_SAMPLES = FADE_MS * SAMPLE_RATE_HZ // 1000  # 80


def _render_tone(freq_hz: float, n_samples: int) -> np.ndarray:
    t = np.arange(n_samples, dtype=np.float64) / SAMPLE_RATE_HZ
    wave = AMPLITUDE * np.sin(2.0 * np.pi * freq_hz * t)
    env = np.ones(n_samples, dtype=np.float64)
    ramp = (np.arange(_FADE_SAMPLES, dtype=np.float64) + 1.0) / _FADE_SAMPLES
    env[:_FADE_SAMPLES] = ramp
    env[n_samples - _FADE_SAMPLES:] *= ramp[::-1]
    return np.rint(wave * env * 32767.0).astype(np.int16)


def synthesize(timings: list[PhonemeTiming]) -> AudioBuffer:
    """Render a contiguous phoneme timing sequence to 16 kHz PCM.

    Timings must be contiguous (each starts where the previous ended) and at
    least 10 ms each, long enough to hold both boundary fades.
    """
    if not timings:
        return AudioBuffer(np.zeros(0, dtype=np.int16))

    expected_start = timings[0].start_ms
    parts: list[np.ndarray] = []
    for timing in timings:
        if timing.start_ms != expected_start:
            raise SpeechError(
                f"timings not contiguous: {timing.phoneme} starts at {timing.start_ms} ms,"
                f" expected {expected_start} ms"
            )
        if timing.dur_ms < MIN_PHONEME_MS:
            raise SpeechError(
                f"{timing.phoneme} duration {timing.dur_ms} ms is below the {MIN_PHONEME_MS} ms minimum"
            )
        n = timing.dur_ms * SAMPLE_RATE_HZ // 1000
        if timing.phoneme == SIL:
            parts.append(np.zeros(n, dtype=np.int16))
        else:
            parts.append(_render_tone(float(tone_hz(timing.phoneme)), n))
        expected_start += timing.dur_ms

    return AudioBuffer(np.concatenate(parts))
