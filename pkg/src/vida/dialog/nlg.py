"""Template-based reply generation.

Templates live in a TOML file as ``[skill.act]`` tables, each holding a
``texts`` list.  Requests of a specific slot use the act key
``request_<slot>``, informs use ``inform`` (or ``notfound`` when the skill
payload came back empty).  Template choice is turn_count modulo list length
for deterministic variety, and every ``{placeholder}`` must resolve from the
action's bindings.
"""

from __future__ import annotations

import re

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from vida.dialog.kb import DialogError
from vida.dialog.policy import AgentAction

Templates = dict[str, dict[str, list[str]]]

_PLACEHOLDER = re.compile(r"\{(\w+)\}")


def load_templates(path: str) -> Templates:
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise DialogError(f"{path}: {exc}")

    templates: Templates = {}
    for skill, acts in raw.items():
        if not isinstance(acts, dict):
            raise DialogError(f"{path}: [{skill}] must be a table of acts")
        templates[skill] = {}
        for act, body in acts.items():
            texts = body.get("texts") if isinstance(body, dict) else None
            if (not isinstance(texts, list) or not texts
                    or not all(isinstance(t, str) for t in texts)):
                raise DialogError(f"{path}: [{skill}.{act}] needs a non-empty texts list")
            templates[skill][act] = list(texts)
    return templates


def nlg_realize(action: AgentAction, templates: Templates, turn_count: int = 0) -> str:
    """Render one action to text; unresolved placeholders raise, naming the slot."""
    texts = templates.get(action.skill, {}).get(action.nlg_key)
    if not texts:
        raise DialogError(f"no template for ({action.skill}, {action.nlg_key})")
    template = texts[turn_count % len(texts)]

    def substitute(match: re.Match) -> str:
        name = match.group(1)
        if name not in action.bindings:
            raise DialogError(
                f"unresolved placeholder '{name}' in template for"
                f" ({action.skill}, {action.nlg_key})"
            )
        return str(action.bindings[name])

    return _PLACEHOLDER.sub(substitute, template)
