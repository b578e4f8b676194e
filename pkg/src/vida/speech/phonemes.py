"""The phoneme inventory, tone mapping, and the rule-based duration model.

Each phoneme owns one pure tone: ``400 + 35 * id`` Hz, with SIL (id 0)
rendered as digital silence.  The 35 Hz spacing keeps neighboring tones
separable by the 20 ms Goertzel filters on the decode side (the filter at
the true frequency sees roughly 7x the energy that leaks into a neighbor).
"""

from __future__ import annotations

from dataclasses import dataclass

# Index in this tuple is the phoneme id.
PHONEMES: tuple[str, ...] = (
    "SIL",
    "AA", "AE", "AH", "AO", "AW", "AY",
    "B", "CH", "D", "DH",
    "EH", "ER", "EY",
    "F", "G", "HH",
    "IH", "IY", "JH", "K", "L", "M", "N", "NG",
    "OW", "OY", "P", "R", "S", "SH", "T", "TH",
    "UH", "UW", "V", "W", "Y", "Z", "ZH",
)

PHONEME_IDS: dict[str, int] = {p: i for i, p in enumerate(PHONEMES)}

SIL = "SIL"

VOWELS: frozenset[str] = frozenset(
    {"AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY",
     "IH", "IY", "OW", "OY", "UH", "UW"}
)

TONE_BASE_HZ = 400
TONE_STEP_HZ = 35

VOWEL_MS = 120
CONSONANT_MS = 80
SIL_MS = 100


class SpeechError(ValueError):
    """Raised for invalid phoneme sequences, timings, or undecodable audio."""


def is_phoneme(symbol: str) -> bool:
    return symbol in PHONEME_IDS


def phoneme_id(symbol: str) -> int:
    try:
        return PHONEME_IDS[symbol]
    except KeyError:
        raise SpeechError(f"unknown phoneme symbol: {symbol!r}")


def tone_hz(symbol: str) -> int:
    """Carrier frequency for a (non-SIL) phoneme."""
    return TONE_BASE_HZ + TONE_STEP_HZ * phoneme_id(symbol)


@dataclass(frozen=True)
class PhonemeTiming:
    phoneme: str
    start_ms: int
    dur_ms: int


def predict_durations(phonemes: list[str]) -> list[PhonemeTiming]:
    """Assign fixed per-class durations and contiguous start times.

    Vowels get 120 ms, SIL 100 ms, everything else 80 ms; the first phoneme
    starts at 0 and each next one starts where the previous ended.
    """
    timings: list[PhonemeTiming] = []
    t = 0
    for symbol in phonemes:
        if not is_phoneme(symbol):
            raise SpeechError(f"unknown phoneme symbol: {symbol!r}")
        if symbol == SIL:
            dur = SIL_MS
        elif symbol in VOWELS:
            dur = VOWEL_MS
        else:
            dur = CONSONANT_MS
        timings.append(PhonemeTiming(symbol, t, dur))
        t += dur
    return timings
