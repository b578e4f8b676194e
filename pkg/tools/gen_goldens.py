"""Regenerate the committed golden artifacts under tests/golden/.

Usage: python3 tools/gen_goldens.py

Produces:
  faces/V_*.png    pure-viseme face renders at size 128
  dialog/*.txt     scripted conversations with expected replies
  dumps/<name>/    cmd_dump output for three canonical utterances
"""

from __future__ import annotations

import shutil
import subprocess
import sys
from pathlib import Path

from vida.avatar.face import render_face
from vida.avatar.visemes import VISEME_NAMES, FaceParams
from vida.config import EngineConfig
from vida.dialog.engine import DialogEngine, load_dialog_assets
from vida.dialog.state import DialogState

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

SCRIPTS: dict[str, list[str]] = {
    "hotel_three_turn": [
        "book a hotel in paris",
        "friday",
        "2 nights",
    ],
    "hotel_one_turn": [
        "book a hotel in paris for 2 nights from friday",
    ],
    "weather": [
        "what is the weather in beijing",
    ],
    "news": [
        "tell me the news",
        "sports",
    ],
    "device_on_off": [
        "turn on the lamp",
        "turn off the lamp",
    ],
    "kg_hit": [
        "who is the director of inception",
    ],
    "kg_miss": [
        "what is the capital of inception",
    ],
    "chitchat_exact": [
        "tell me a joke",
    ],
    "chitchat_fuzzy": [
        "can you tell me a joke please",
    ],
    "chitchat_default": [
        "quux flibber zorp",
    ],
    "reset": [
        "book a hotel in paris",
        "start over",
        "book a hotel",
    ],
    "interrupt_resume": [
        "book a hotel in paris for 2 nights",
        "what is the weather in beijing",
        "friday",
    ],
}

DUMPS: dict[str, str] = {
    "hello": "hello",
    "weather": "what is the weather in beijing",
    "hotel": "book a hotel in paris for 2 nights from friday",
}


def gen_faces() -> None:
    out = GOLDEN / "faces"
    out.mkdir(parents=True, exist_ok=True)
    for i, name in enumerate(VISEME_NAMES):
        weights = [0.0] * len(VISEME_NAMES)
        weights[i] = 1.0
        image = render_face(FaceParams(tuple(weights), blink=0.0), 128)
        (out / f"{name}.png").write_bytes(image.to_png())
        print(f"faces/{name}.png")


def gen_dialog() -> None:
    out = GOLDEN / "dialog"
    out.mkdir(parents=True, exist_ok=True)
    assets = load_dialog_assets(EngineConfig())
    for name, turns in SCRIPTS.items():
        engine = DialogEngine(assets)
        state = DialogState(session_id=name)
        lines: list[str] = []
        for text in turns:
            state, reply, _ = engine.converse(state, text)
            lines.append(f"U: {text}")
            lines.append(f"A: {reply}")
            lines.append("")
        (out / f"{name}.txt").write_text("\n".join(lines), encoding="utf-8")
        print(f"dialog/{name}.txt")


def gen_dumps() -> None:
    config = GOLDEN / "golden.toml"
    for name, text in DUMPS.items():
        out = GOLDEN / "dumps" / name
        if out.exists():
            shutil.rmtree(out)
        subprocess.run(
            [sys.executable, "-m", "vida.cli", "dump",
             "--config", str(config), "--text", text, "--out", str(out)],
            check=True,
        )
        print(f"dumps/{name}/")


def main() -> None:
    gen_faces()
    gen_dialog()
    gen_dumps()


if __name__ == "__main__":
    main()
