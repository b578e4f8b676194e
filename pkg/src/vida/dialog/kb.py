"""Knowledge assets: the triple store, QA pairs, gazetteers, news corpus.

File formats are deliberately dumb: TSV for triples (subject, relation,
object), TSV for QA pairs (question, answer) and news (topic, headline),
one entry per line for gazetteers.  Lookups normalize by lowercasing and
trimming only; there is no stemming or fuzzy matching beyond the token
Jaccard retrieval for chit-chat.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

CHITCHAT_DEFAULT_REPLY = "I'm not sure about that."
JACCARD_THRESHOLD = 0.5


class DialogError(ValueError):
    """Raised for malformed knowledge files or NLG failures."""


def _norm(s: str) -> str:
    return s.strip().lower()


def _tokens(s: str) -> frozenset[str]:
    cleaned = "".join(ch if ch.isalnum() else " " for ch in s.lower())
    return frozenset(cleaned.split())


@dataclass(frozen=True)
class Triple:
    subject: str
    relation: str
    object: str


@dataclass
class KnowledgeBase:
    triples: list[Triple] = field(default_factory=list)
    index: dict[tuple[str, str], list[str]] = field(default_factory=dict)
    entities: set[str] = field(default_factory=set)
    qa_pairs: list[tuple[str, str]] = field(default_factory=list)

    def lookup(self, subject: str, relation: str) -> list[str]:
        return self.index.get((_norm(subject), _norm(relation)), [])


def kb_load(kg_path: str, qa_path: str) -> KnowledgeBase:
    """Load and index the triple store and QA pairs.

    Duplicate triples collapse to one; the entity set is all subjects and
    objects.  Malformed rows raise with file and line number.  An empty KG
    is allowed but warned about since it disables the kg skill.
    """
    kb = KnowledgeBase()
    seen: set[Triple] = set()

    with open(kg_path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DialogError(f"{kg_path}:{lineno}: expected 3 tab-separated fields, got {len(parts)}")
            subject, relation, obj = (p.strip() for p in parts)
            if not subject or not relation or not obj:
                raise DialogError(f"{kg_path}:{lineno}: empty field in triple")
            triple = Triple(subject, relation, obj)
            if triple in seen:
                continue
            seen.add(triple)
            kb.triples.append(triple)
            kb.index.setdefault((_norm(subject), _norm(relation)), []).append(obj)
            kb.entities.add(_norm(subject))
            kb.entities.add(_norm(obj))

    if not kb.triples:
        log.warning("knowledge graph at %s is empty; kg skill will answer not-found", kg_path)

    with open(qa_path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DialogError(f"{qa_path}:{lineno}: expected 2 tab-separated fields, got {len(parts)}")
            kb.qa_pairs.append((parts[0].strip(), parts[1].strip()))

    return kb


def load_gazetteer(path: str) -> list[str]:
    """One lowercased entry per line; blank lines and # comments skipped."""
    entries: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip().lower()
            if line:
                entries.append(line)
    return entries


def load_news(path: str) -> dict[str, list[str]]:
    """Topic -> headlines, preserving file order within each topic."""
    corpus: dict[str, list[str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DialogError(f"{path}:{lineno}: expected 2 tab-separated fields, got {len(parts)}")
            topic, headline = _norm(parts[0]), parts[1].strip()
            corpus.setdefault(topic, []).append(headline)
    return corpus


def kg_answer(entity: str, relation: str, kb: KnowledgeBase) -> str | None:
    """Exact (normalized) subject+relation lookup; None when absent.

    Multiple objects join with ", " in load order.
    """
    objects = kb.lookup(entity, relation)
    if not objects:
        return None
    return ", ".join(objects)


def chitchat_retrieve(text: str, kb: KnowledgeBase) -> str:
    """Exact question match, else best token-Jaccard >= 0.5, else the default."""
    query_norm = _norm(text)
    for question, answer in kb.qa_pairs:
        if _norm(question) == query_norm:
            return answer

    query_tokens = _tokens(text)
    best_score = 0.0
    best_answer: str | None = None
    for question, answer in kb.qa_pairs:
        q_tokens = _tokens(question)
        union = query_tokens | q_tokens
        if not union:
            continue
        score = len(query_tokens & q_tokens) / len(union)
        if score > best_score:
            best_score = score
            best_answer = answer

    if best_answer is not None and best_score >= JACCARD_THRESHOLD:
        return best_answer
    return CHITCHAT_DEFAULT_REPLY
