"""Per-turn latency instrumentation.

Each completed user turn records six stage timestamps, all in microseconds
of elapsed session time, in strictly pipeline order: request received,
transcript available, reply text ready, first audio synthesized, first
video frame rendered, first media packet released.  The headline number is
``end_to_end_ms``, the span from request to first released media packet.
"""

from __future__ import annotations

from dataclasses import dataclass

STAGE_FIELDS = (
    "t_request",
    "t_transcript",
    "t_reply_text",
    "t_first_audio",
    "t_first_frame",
    "t_first_packet_sent",
)


@dataclass(frozen=True)
class LatencyReport:
    t_request: int
    t_transcript: int
    t_reply_text: int
    t_first_audio: int
    t_first_frame: int
    t_first_packet_sent: int

    def __post_init__(self) -> None:
        if self.t_request < 0:
            raise ValueError(f"t_request must be non-negative, got {self.t_request}")
        values = [getattr(self, name) for name in STAGE_FIELDS]
        for (a_name, a), (b_name, b) in zip(
            zip(STAGE_FIELDS, values), zip(STAGE_FIELDS[1:], values[1:])
        ):
            if b < a:
                raise ValueError(
                    f"stage timestamps out of order: {b_name}={b} precedes {a_name}={a}"
                )

    @property
    def end_to_end_ms(self) -> float:
        return (self.t_first_packet_sent - self.t_request) / 1000.0

    def to_dict(self) -> dict:
        doc = {name: getattr(self, name) for name in STAGE_FIELDS}
        doc["end_to_end_ms"] = self.end_to_end_ms
        return doc
