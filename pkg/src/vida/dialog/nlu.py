"""Rule-based natural language understanding: intents and entities.

Intent selection walks a fixed, ordered pattern table; the first hit wins
and anything unmatched is chitchat.  Entities come from gazetteers (cities,
devices, news topics), surface patterns (dates, numbers, on/off), a relation
keyword list, and longest-match against the knowledge base entity set.
Entity spans never overlap; earlier extractors claim their spans first.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field

from vida.dialog.kb import KnowledgeBase

INTENTS = (
    "greet", "weather_query", "news_query", "hotel_book",
    "device_control", "kg_question", "reset", "chitchat",
)

PATTERN_CONFIDENCE = 0.9
CHITCHAT_CONFIDENCE = 0.3

KG_RELATION_KEYWORDS = ("director", "actor", "singer", "author", "genre", "capital")

# Intent patterns in priority order; kg_question is handled separately since
# it also requires a relation keyword and a known entity.
_INTENT_PATTERNS: tuple[tuple[str, re.Pattern], ...] = (
    ("reset", re.compile(r"\breset\b|\bstart over\b")),
    ("greet", re.compile(r"^(hi|hello|hey)\b")),
    ("weather_query", re.compile(r"\bweather\b|\btemperature\b|\bforecast\b")),
    ("hotel_book", re.compile(r"\bhotel\b|\bbook\b.*\broom\b|\breserve\b")),
    ("news_query", re.compile(r"\bnews\b|\bheadline\b|\bheadlines\b")),
    ("device_control", re.compile(r"\bturn (on|off)\b|\bswitch\b")),
)

_KG_QUESTION_WORD = re.compile(r"\b(who|what|which)\b")

_DATE_PATTERN = re.compile(
    r"\b\d{4}-\d{2}-\d{2}\b"
    r"|\b(today|tomorrow|tonight|monday|tuesday|wednesday|thursday|friday|saturday|sunday)\b"
)
_NUMBER_PATTERN = re.compile(r"\b\d+\b")
_ON_OFF_PATTERN = re.compile(r"\b(on|off)\b")


@dataclass(frozen=True)
class Entity:
    etype: str
    surface: str
    span: tuple[int, int]


@dataclass(frozen=True)
class NluResult:
    text: str
    intent: str
    confidence: float
    entities: tuple[Entity, ...] = field(default=())


@functools.lru_cache(maxsize=64)
def _gazetteer_pattern(entries: tuple[str, ...]) -> re.Pattern | None:
    if not entries:
        return None
    ordered = sorted(set(entries), key=lambda e: (-len(e), e))
    return re.compile(r"\b(" + "|".join(re.escape(e) for e in ordered) + r")\b")


class _SpanClaims:
    def __init__(self) -> None:
        self._claimed: list[tuple[int, int]] = []

    def try_claim(self, start: int, end: int) -> bool:
        for s, e in self._claimed:
            if start < e and s < end:
                return False
        self._claimed.append((start, end))
        return True


def _extract(pattern: re.Pattern | None, etype: str, text: str,
             claims: _SpanClaims, out: list[Entity]) -> None:
    if pattern is None:
        return
    for m in pattern.finditer(text):
        if claims.try_claim(m.start(), m.end()):
            out.append(Entity(etype, m.group(0), (m.start(), m.end())))


def nlu_parse(text: str, kb: KnowledgeBase,
              cities: list[str] | None = None,
              devices: list[str] | None = None,
              topics: list[str] | None = None) -> NluResult:
    """Classify intent and extract typed entities from one user utterance."""
    if not text.strip():
        return NluResult(text, "chitchat", CHITCHAT_CONFIDENCE)

    lowered = text.lower()
    claims = _SpanClaims()
    entities: list[Entity] = []

    _extract(_gazetteer_pattern(tuple(cities or ())), "city", lowered, claims, entities)
    _extract(_gazetteer_pattern(tuple(devices or ())), "device", lowered, claims, entities)
    _extract(_gazetteer_pattern(tuple(topics or ())), "topic", lowered, claims, entities)
    _extract(_DATE_PATTERN, "date", lowered, claims, entities)
    _extract(_NUMBER_PATTERN, "number", lowered, claims, entities)
    _extract(_ON_OFF_PATTERN, "on_off", lowered, claims, entities)
    _extract(_gazetteer_pattern(KG_RELATION_KEYWORDS), "kg_relation", lowered, claims, entities)
    _extract(_gazetteer_pattern(tuple(sorted(kb.entities))), "kg_entity", lowered, claims, entities)

    entities.sort(key=lambda e: e.span)

    intent = None
    for name, pattern in _INTENT_PATTERNS:
        if pattern.search(lowered):
            intent = name
            break

    if intent is None and _KG_QUESTION_WORD.search(lowered):
        has_relation = any(e.etype == "kg_relation" for e in entities)
        has_entity = any(e.etype == "kg_entity" for e in entities)
        if has_relation and has_entity:
            intent = "kg_question"

    if intent is None:
        return NluResult(text, "chitchat", CHITCHAT_CONFIDENCE, tuple(entities))
    return NluResult(text, intent, PATTERN_CONFIDENCE, tuple(entities))
