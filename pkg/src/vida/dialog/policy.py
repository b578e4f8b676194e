"""The two-level dialog policy.

``policy_top`` picks the skill (sticky active skill, else intent affinity);
``policy_low`` picks the primitive act for that skill by walking the
slot-filling automaton: Request the first unfilled required slot, ApiCall
once everything is filled, Inform once the call's result is stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from vida.dialog.state import INTENT_AFFINITY, DialogState

# Fixed skill order, used to break affinity ties.
SKILLS = ("weather", "hotel", "news", "device", "kg", "chitchat")

# required slot order, optional slots with defaults
SKILL_SCHEMAS: dict[str, tuple[tuple[str, ...], dict[str, str]]] = {
    "weather": (("city",), {"date": "today"}),
    "hotel": (("city", "date", "nights"), {}),
    "news": (("topic",), {}),
    "device": (("device", "on_off"), {}),
    "kg": (("entity", "relation"), {}),
    "chitchat": ((), {}),
}

REQUEST = "request"
INFORM = "inform"
CONFIRM = "confirm"
API_CALL = "api_call"
GREET = "greet"
FALLBACK = "fallback"


@dataclass(frozen=True)
class AgentAction:
    skill: str
    act: str
    slot: str | None = None
    api_name: str | None = None
    api_args: dict[str, str] = field(default_factory=dict)
    bindings: dict[str, str] = field(default_factory=dict)
    nlg_key: str = ""

    def __post_init__(self) -> None:
        if not self.nlg_key:
            key = f"{self.act}_{self.slot}" if self.act in (REQUEST, CONFIRM) else self.act
            object.__setattr__(self, "nlg_key", key)


def policy_top(state: DialogState) -> str:
    """Skill selection: the active skill wins; else affinity of the last intent."""
    if state.active_skill is not None:
        return state.active_skill
    if state.last_intent is None:
        return "chitchat"
    return INTENT_AFFINITY[state.last_intent]


def policy_low(state: DialogState, skill: str) -> AgentAction:
    """Primitive action selection for the chosen skill."""
    if state.last_intent == "greet":
        return AgentAction("chitchat", GREET)
    if state.last_intent == "reset":
        return AgentAction("chitchat", FALLBACK, nlg_key="reset")
    return slot_automaton(state, skill)


def slot_automaton(state: DialogState, skill: str) -> AgentAction:
    """The Request -> ApiCall -> Inform progression, ignoring intent overrides.

    The engine also calls this directly when resuming a suspended skill, where
    the turn's intent (a greet, say) must not mask the pending Request.
    """
    if skill == "chitchat":
        return AgentAction("chitchat", FALLBACK)

    required, optional = SKILL_SCHEMAS[skill]
    filled = state.slots.get(skill, {})

    for slot in required:
        if slot not in filled:
            return AgentAction(skill, REQUEST, slot=slot)

    if skill not in state.results:
        args = {slot: filled[slot] for slot in required}
        for slot, default in optional.items():
            args[slot] = filled.get(slot, default)
        return AgentAction(skill, API_CALL, api_name=skill, api_args=args)

    payload = state.results[skill]
    found = payload.get("found", "true") == "true"
    bindings = dict(filled)
    for slot, default in optional.items():
        bindings.setdefault(slot, default)
    bindings.update({k: v for k, v in payload.items() if k != "found"})
    return AgentAction(skill, INFORM, bindings=bindings,
                       nlg_key=INFORM if found else "notfound")
