"""Tone-codec speech recognition: windowed Goertzel analysis + reverse lexicon.

A 20 ms window slides in 10 ms hops.  A window is SIL when its RMS (on the
[-1, 1] scale) is under 0.01, otherwise it takes the label of the phoneme
tone with the most energy.  Runs of at least 4 identical window labels emit
a phoneme; shorter runs are boundary noise and are dropped.  Emitted SIL
runs split word boundaries, and each phoneme group is looked up in the
reverse lexicon ("<unk>" when no word matches).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from vida.media import SAMPLE_RATE_HZ, AudioBuffer
from vida.speech.goertzel import bank_energies, goertzel_bank
from vida.speech.lexicon import Lexicon
from vida.speech.phonemes import PHONEMES, SIL, SpeechError, tone_hz

WINDOW_MS = 20
HOP_MS = 10
WINDOW_SAMPLES = WINDOW_MS * SAMPLE_RATE_HZ // 1000  # 320
HOP_SAMPLES = HOP_MS * SAMPLE_RATE_HZ // 1000  # 160
SILENCE_RMS = 0.01
MIN_RUN_WINDOWS = 4

UNKNOWN_WORD = "<unk>"

# Non-SIL phonemes in id order; index k here is phoneme id k+1.
_TONE_PHONEMES = PHONEMES[1:]
_BANK = goertzel_bank(np.array([tone_hz(p) for p in _TONE_PHONEMES]), WINDOW_SAMPLES)


@dataclass(frozen=True)
class WordTiming:
    word: str
    start_ms: int
    end_ms: int


@dataclass(frozen=True)
class Transcript:
    text: str
    confidence: float
    word_timings: tuple[WordTiming, ...]


def _window_labels(samples: np.ndarray) -> list[str]:
    x = samples.astype(np.float64) / 32767.0
    labels: list[str] = []
    for start in range(0, len(x) - WINDOW_SAMPLES + 1, HOP_SAMPLES):
        window = x[start:start + WINDOW_SAMPLES]
        rms = float(np.sqrt(np.mean(window * window)))
        if rms < SILENCE_RMS:
            labels.append(SIL)
        else:
            energies = bank_energies(_BANK, window)
            labels.append(_TONE_PHONEMES[int(np.argmax(energies))])
    return labels


def _runs(labels: list[str]) -> list[tuple[str, int, int]]:
    """Maximal runs of identical labels as (label, first_window, last_window)."""
    runs: list[tuple[str, int, int]] = []
    for i, label in enumerate(labels):
        if runs and runs[-1][0] == label:
            runs[-1] = (label, runs[-1][1], i)
        else:
            runs.append((label, i, i))
    return runs


def asr_decode(audio: AudioBuffer, lex: Lexicon) -> Transcript:
    """Decode tone-codec audio back to text via the reverse lexicon."""
    if len(audio) < WINDOW_SAMPLES:
        raise SpeechError(
            f"audio of {len(audio)} samples is shorter than one {WINDOW_MS} ms analysis window"
        )

    labels = _window_labels(audio.samples)
    emitted = [run for run in _runs(labels) if run[2] - run[1] + 1 >= MIN_RUN_WINDOWS]
    agreeing = sum(run[2] - run[1] + 1 for run in emitted)
    confidence = agreeing / len(labels)

    # Split the emitted phoneme runs into word groups at SIL runs.
    words: list[WordTiming] = []
    group: list[tuple[str, int, int]] = []

    def flush() -> None:
        if not group:
            return
        pron = tuple(label for label, _, _ in group)
        word = lex.reverse.get(pron, UNKNOWN_WORD)
        start_ms = group[0][1] * HOP_MS
        end_ms = group[-1][2] * HOP_MS + WINDOW_MS
        words.append(WordTiming(word, start_ms, end_ms))
        group.clear()

    for run in emitted:
        if run[0] == SIL:
            flush()
        else:
            group.append(run)
    flush()

    return Transcript(
        text=" ".join(w.word for w in words),
        confidence=confidence,
        word_timings=tuple(words),
    )
