from vida.speech.phonemes import (
    PHONEMES,
    PHONEME_IDS,
    SIL,
    VOWELS,
    PhonemeTiming,
    SpeechError,
    is_phoneme,
    phoneme_id,
    predict_durations,
    tone_hz,
)
from vida.speech.lexicon import Lexicon, load_lexicon, g2p, normalize_text
from vida.speech.synth import synthesize
from vida.speech.goertzel import goertzel_energy, goertzel_bank
from vida.speech.decode import Transcript, asr_decode

__all__ = [
    "PHONEMES",
    "PHONEME_IDS",
    "SIL",
    "VOWELS",
    "PhonemeTiming",
    "SpeechError",
    "is_phoneme",
    "phoneme_id",
    "predict_durations",
    "tone_hz",
    "Lexicon",
    "load_lexicon",
    "g2p",
    "normalize_text",
    "synthesize",
    "goertzel_energy",
    "goertzel_bank",
    "Transcript",
    "asr_decode",
]
