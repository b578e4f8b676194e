"""Pronunciation lexicon loading and grapheme-to-phoneme conversion.

The lexicon file is plain text, one ``word PH1 PH2 ...`` entry per line with
``#`` comments.  Unknown words fall back to spelling them out with a fixed
letter-to-phoneme table.  Digits are expanded to their spoken names during
normalization ("17" becomes "one seven") so numeric replies stay speakable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from vida.speech.phonemes import SIL, SpeechError, is_phoneme

# Crude but total: every ASCII letter maps to one phoneme.
LETTER_FALLBACK: dict[str, str] = {
    "a": "AH", "b": "B", "c": "K", "d": "D", "e": "EH", "f": "F", "g": "G",
    "h": "HH", "i": "IH", "j": "JH", "k": "K", "l": "L", "m": "M", "n": "N",
    "o": "OW", "p": "P", "q": "K", "r": "R", "s": "S", "t": "T", "u": "UH",
    "v": "V", "w": "W", "x": "S", "y": "Y", "z": "Z",
}

_DIGIT_NAMES = {
    "0": "zero", "1": "one", "2": "two", "3": "three", "4": "four",
    "5": "five", "6": "six", "7": "seven", "8": "eight", "9": "nine",
}


@dataclass
class Lexicon:
    """Word to pronunciation map plus the reverse map used by the decoder.

    When several words share a pronunciation the reverse map keeps the
    lexicographically smallest word, so reverse lookup is deterministic.
    """

    entries: dict[str, tuple[str, ...]] = field(default_factory=dict)
    reverse: dict[tuple[str, ...], str] = field(default_factory=dict)

    def add(self, word: str, pronunciation: tuple[str, ...]) -> None:
        self.entries[word] = pronunciation
        existing = self.reverse.get(pronunciation)
        if existing is None or word < existing:
            self.reverse[pronunciation] = word

    def lookup(self, word: str) -> tuple[str, ...] | None:
        return self.entries.get(word)

    def unique_pronunciation_words(self) -> list[str]:
        """Words whose pronunciation no other word shares, in file order."""
        counts: dict[tuple[str, ...], int] = {}
        for pron in self.entries.values():
            counts[pron] = counts.get(pron, 0) + 1
        return [w for w, p in self.entries.items() if counts[p] == 1]

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(path: str) -> Lexicon:
    """Parse a lexicon file; malformed lines raise with file and line number."""
    lex = Lexicon()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise SpeechError(f"{path}:{lineno}: entry needs a word and at least one phoneme")
            word = parts[0].lower()
            pron = tuple(parts[1:])
            for symbol in pron:
                if not is_phoneme(symbol):
                    raise SpeechError(f"{path}:{lineno}: unknown phoneme {symbol!r} in word {word!r}")
                if symbol == SIL:
                    raise SpeechError(f"{path}:{lineno}: SIL is not allowed inside a pronunciation")
            lex.add(word, pron)
    return lex


def normalize_text(text: str) -> list[str]:
    """Lowercase, strip punctuation to spaces, collapse whitespace, split.

    Digits become their spoken names as separate words, and words mixing
    letters and digits are split apart ("bk3f" -> ["bk", "three", "f"]).
    """
    cleaned = []
    for ch in text.lower():
        cleaned.append(ch if ch.isalnum() else " ")
    words: list[str] = []
    for token in "".join(cleaned).split():
        run = ""
        for ch in token:
            if ch in _DIGIT_NAMES:
                if run:
                    words.append(run)
                    run = ""
                words.append(_DIGIT_NAMES[ch])
            else:
                run += ch
        if run:
            words.append(run)
    return words


def _fallback_pronunciation(word: str) -> tuple[str, ...]:
    return tuple(LETTER_FALLBACK[ch] for ch in word if ch in LETTER_FALLBACK)


def g2p(text: str, lex: Lexicon) -> list[str]:
    """Convert text to a phoneme sequence.

    One SIL separates consecutive words and one SIL terminates the sequence.
    """
    words = normalize_text(text)
    if not words:
        raise SpeechError(f"no pronounceable words in input: {text!r}")
    phonemes: list[str] = []
    for word in words:
        pron = lex.lookup(word)
        if pron is None:
            pron = _fallback_pronunciation(word)
        if not pron:
            continue  # word had no mappable characters
        if phonemes:
            phonemes.append(SIL)
        phonemes.extend(pron)
    if not phonemes:
        raise SpeechError(f"no pronounceable words in input: {text!r}")
    phonemes.append(SIL)
    return phonemes
