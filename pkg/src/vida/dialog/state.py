"""Dialog state tracking: per-skill slot maps under a global skill stack.

``dst_update`` is pure: it returns a fresh state and never touches its
input, so replaying a transcript reproduces the final state exactly.  A new
intent whose skill differs from the active one suspends the active skill on
the stack; a chitchat-classified turn that carries entities fillable into
the active skill's schema is treated as a slot answer (e.g. "paris" replying
to "Which city?"), not as an interruption.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace

from vida.dialog.nlu import NluResult

HISTORY_MAX_TURNS = 20

# Each intent maps to exactly one skill.
INTENT_AFFINITY: dict[str, str] = {
    "greet": "chitchat",
    "weather_query": "weather",
    "news_query": "news",
    "hotel_book": "hotel",
    "device_control": "device",
    "kg_question": "kg",
    "reset": "chitchat",
    "chitchat": "chitchat",
}

# How entity types land in each skill's slots.
ENTITY_SLOT_MAP: dict[str, dict[str, str]] = {
    "weather": {"city": "city", "date": "date"},
    "hotel": {"city": "city", "date": "date", "number": "nights"},
    "news": {"topic": "topic"},
    "device": {"device": "device", "on_off": "on_off"},
    "kg": {"kg_entity": "entity", "kg_relation": "relation"},
    "chitchat": {},
}


@dataclass(frozen=True)
class DialogState:
    session_id: str
    active_skill: str | None = None
    skill_stack: tuple[str, ...] = ()
    slots: dict[str, dict[str, str]] = field(default_factory=dict)
    results: dict[str, dict[str, str]] = field(default_factory=dict)
    turn_count: int = 0
    last_intent: str | None = None
    history: tuple[tuple[str, str], ...] = ()


def bound_history(history: tuple[tuple[str, str], ...],
                  entry: tuple[str, str]) -> tuple[tuple[str, str], ...]:
    combined = history + (entry,)
    return combined[-(HISTORY_MAX_TURNS * 2):]


def _fillable(nlu: NluResult, skill: str) -> bool:
    slot_map = ENTITY_SLOT_MAP.get(skill, {})
    return any(e.etype in slot_map for e in nlu.entities)


def dst_update(state: DialogState, nlu: NluResult) -> DialogState:
    """Fold one parsed user turn into a new dialog state."""
    slots = copy.deepcopy(state.slots)
    results = copy.deepcopy(state.results)
    history = bound_history(state.history, ("user", nlu.text))
    turn_count = state.turn_count + 1

    if nlu.intent == "reset":
        return replace(
            state,
            active_skill=None,
            skill_stack=(),
            slots={},
            results={},
            turn_count=turn_count,
            last_intent="reset",
            history=history,
        )

    active = state.active_skill
    stack = state.skill_stack
    if active is not None and nlu.intent == "chitchat" and _fillable(nlu, active):
        target = active  # slot answer for the pending request
    else:
        target = INTENT_AFFINITY[nlu.intent]
        if target != active:
            if active is not None:
                stack = stack + (active,)
            stack = tuple(s for s in stack if s != target)
            active = target

    slot_map = ENTITY_SLOT_MAP.get(target, {})
    if slot_map:
        filled = slots.setdefault(target, {})
        for entity in nlu.entities:
            slot = slot_map.get(entity.etype)
            if slot is not None:
                filled[slot] = entity.surface

    return replace(
        state,
        active_skill=active,
        skill_stack=stack,
        slots=slots,
        results=results,
        turn_count=turn_count,
        last_intent=nlu.intent,
        history=history,
    )


def pop_skill(state: DialogState) -> DialogState:
    """Resume the most recently suspended skill (no-op on an empty stack)."""
    if not state.skill_stack:
        return state
    return replace(state, active_skill=state.skill_stack[-1], skill_stack=state.skill_stack[:-1])


def clear_episode(state: DialogState, skill: str) -> DialogState:
    """Drop a skill's slots and stored result after its Inform completes."""
    slots = {k: dict(v) for k, v in state.slots.items() if k != skill}
    results = {k: dict(v) for k, v in state.results.items() if k != skill}
    return replace(state, slots=slots, results=results)


def store_result(state: DialogState, skill: str, payload: dict[str, str]) -> DialogState:
    results = {k: dict(v) for k, v in state.results.items()}
    results[skill] = dict(payload)
    return replace(state, results=results)


def append_agent_reply(state: DialogState, reply: str) -> DialogState:
    return replace(state, history=bound_history(state.history, ("agent", reply)))
