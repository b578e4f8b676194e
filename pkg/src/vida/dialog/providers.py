"""Deterministic mock skill backends behind a pluggable provider interface.

Results are derived from an FNV-1a 64-bit hash of the argument string, so
the same request always gets the same weather or booking id on every
platform.  Payload values are strings; "found" is "true"/"false" and a
false payload makes NLG pick the skill's apology template.
"""

from __future__ import annotations

from vida.dialog.kb import KnowledgeBase, kg_answer

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

WEATHER_CONDITIONS = ("sunny", "cloudy", "rain", "snow")


def fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash over the UTF-8 encoding of ``text``."""
    h = FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


class MockProviders:
    """One provider object per session; only device state is mutable."""

    def __init__(self, kb: KnowledgeBase, news: dict[str, list[str]],
                 devices: list[str]) -> None:
        self._kb = kb
        self._news = news
        self._devices = set(devices)
        self.device_states: dict[str, str] = {}

    def call(self, skill: str, args: dict[str, str]) -> dict[str, str]:
        handler = {
            "weather": self._weather,
            "hotel": self._hotel,
            "news": self._news_call,
            "device": self._device,
            "kg": self._kg,
        }.get(skill)
        if handler is None:
            raise ValueError(f"no provider for skill {skill!r}")
        return handler(args)

    def _weather(self, args: dict[str, str]) -> dict[str, str]:
        h = fnv1a64(args["city"] + args["date"])
        return {
            "found": "true",
            "condition": WEATHER_CONDITIONS[h % 4],
            "temp": str(10 + h % 20),
        }

    def _hotel(self, args: dict[str, str]) -> dict[str, str]:
        h = fnv1a64(args["city"] + args["date"] + args["nights"])
        return {"found": "true", "confirmation": "BK" + format(h, "016x")[:6]}

    def _news_call(self, args: dict[str, str]) -> dict[str, str]:
        headlines = self._news.get(args["topic"].lower())
        if not headlines:
            return {"found": "false"}
        return {"found": "true", "headlines": "; ".join(headlines[:3])}

    def _device(self, args: dict[str, str]) -> dict[str, str]:
        device = args["device"]
        if device not in self._devices:
            return {"found": "false"}
        self.device_states[device] = args["on_off"]
        return {"found": "true", "state": args["on_off"]}

    def _kg(self, args: dict[str, str]) -> dict[str, str]:
        answer = kg_answer(args["entity"], args["relation"], self._kb)
        if answer is None:
            return {"found": "false"}
        return {"found": "true", "answer": answer}
