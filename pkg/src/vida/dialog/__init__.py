from vida.dialog.kb import (
    Triple,
    KnowledgeBase,
    DialogError,
    kb_load,
    load_gazetteer,
    load_news,
    kg_answer,
    chitchat_retrieve,
    CHITCHAT_DEFAULT_REPLY,
)
from vida.dialog.nlu import Entity, NluResult, nlu_parse, INTENTS
from vida.dialog.state import DialogState, dst_update, INTENT_AFFINITY
from vida.dialog.policy import (
    AgentAction,
    SKILLS,
    SKILL_SCHEMAS,
    policy_top,
    policy_low,
)
from vida.dialog.providers import fnv1a64, MockProviders
from vida.dialog.nlg import Templates, load_templates, nlg_realize
from vida.dialog.engine import DialogEngine

__all__ = [
    "Triple",
    "KnowledgeBase",
    "DialogError",
    "kb_load",
    "load_gazetteer",
    "load_news",
    "kg_answer",
    "chitchat_retrieve",
    "CHITCHAT_DEFAULT_REPLY",
    "Entity",
    "NluResult",
    "nlu_parse",
    "INTENTS",
    "DialogState",
    "dst_update",
    "INTENT_AFFINITY",
    "AgentAction",
    "SKILLS",
    "SKILL_SCHEMAS",
    "policy_top",
    "policy_low",
    "fnv1a64",
    "MockProviders",
    "Templates",
    "load_templates",
    "nlg_realize",
    "DialogEngine",
]
