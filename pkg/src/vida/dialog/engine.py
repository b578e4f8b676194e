"""End-to-end dialog turns: NLU -> DST -> policy -> providers -> NLG.

``DialogAssets`` bundles the read-only knowledge (KB, templates, gazetteers,
news corpus) shared across sessions.  ``DialogEngine`` is cheap and
per-session: it owns the only mutable provider state (device switches), so
concurrent sessions cannot observe each other.

A turn always yields exactly one reply.  ApiCall results are stored and
immediately rendered as the Inform of the same turn; after a terminal act
(Inform, Greet, Fallback) a suspended skill pops off the stack and its next
Request, if any, is appended to the same reply.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

from vida.config import EngineConfig
from vida.dialog.kb import (
    KnowledgeBase,
    chitchat_retrieve,
    kb_load,
    load_gazetteer,
    load_news,
)
from vida.dialog.nlg import Templates, load_templates, nlg_realize
from vida.dialog.nlu import nlu_parse
from vida.dialog.policy import (
    API_CALL,
    FALLBACK,
    GREET,
    INFORM,
    REQUEST,
    AgentAction,
    policy_low,
    policy_top,
    slot_automaton,
)
from vida.dialog.providers import MockProviders
from vida.dialog.state import (
    DialogState,
    append_agent_reply,
    clear_episode,
    dst_update,
    pop_skill,
    store_result,
)

_TERMINAL_ACTS = (INFORM, GREET, FALLBACK)


@dataclass
class DialogAssets:
    kb: KnowledgeBase
    templates: Templates
    cities: list[str]
    devices: list[str]
    news: dict[str, list[str]]

    @property
    def topics(self) -> list[str]:
        return sorted(self.news.keys())


def _fixed_asset(name: str) -> str:
    return str(importlib.resources.files("vida").joinpath("assets", name))


def load_dialog_assets(cfg: EngineConfig) -> DialogAssets:
    """Load KB and templates from config paths, gazetteers and news from the
    bundled data files."""
    return DialogAssets(
        kb=kb_load(cfg.kg_path, cfg.qa_path),
        templates=load_templates(cfg.templates_path),
        cities=load_gazetteer(_fixed_asset("cities.txt")),
        devices=load_gazetteer(_fixed_asset("devices.txt")),
        news=load_news(_fixed_asset("news.tsv")),
    )


class DialogEngine:
    """Per-session conversation engine over shared read-only assets."""

    def __init__(self, assets: DialogAssets, providers: MockProviders | None = None) -> None:
        self.assets = assets
        self.providers = providers or MockProviders(assets.kb, assets.news, assets.devices)

    def new_state(self, session_id: str) -> DialogState:
        return DialogState(session_id=session_id)

    def converse(self, state: DialogState, user_text: str) -> tuple[DialogState, str, AgentAction]:
        """Process one user turn, returning (new state, reply, primary action)."""
        assets = self.assets
        nlu = nlu_parse(user_text, assets.kb, cities=assets.cities,
                        devices=assets.devices, topics=assets.topics)
        state = dst_update(state, nlu)

        skill = policy_top(state)
        action = policy_low(state, skill)

        if action.act == API_CALL:
            payload = self.providers.call(action.api_name, action.api_args)
            state = store_result(state, skill, payload)
            action = policy_low(state, skill)

        if action.act == FALLBACK and action.nlg_key == FALLBACK:
            answer = chitchat_retrieve(user_text, assets.kb)
            action = AgentAction(action.skill, action.act,
                                 bindings={"answer": answer}, nlg_key=action.nlg_key)

        reply = nlg_realize(action, assets.templates, state.turn_count)

        if action.act in _TERMINAL_ACTS:
            if action.act == INFORM:
                state = clear_episode(state, action.skill)
            if state.skill_stack:
                state = pop_skill(state)
                resumed = slot_automaton(state, state.active_skill)
                if resumed.act == REQUEST:
                    reply = reply + " " + nlg_realize(resumed, assets.templates, state.turn_count)

        state = append_agent_reply(state, reply)
        return state, reply, action
