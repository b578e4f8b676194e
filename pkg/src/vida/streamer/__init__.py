from vida.streamer.packets import (
    CONTROL_SPEAK_END,
    CONTROL_SPEAK_START,
    FORMAT_PNG,
    FORMAT_RAW_RGB24,
    AudioPayload,
    ControlPayload,
    EventPayload,
    MediaPacket,
    PacketError,
    PacketKind,
    PayloadLengthError,
    TruncatedPacketError,
    UnknownKindError,
    VideoPayload,
    decode_packet,
    encode_packet,
    event_json,
    read_packets,
    write_packets,
)
from vida.streamer.queueing import OutboundQueue, QueueClosedError
from vida.streamer.metrics import STAGE_FIELDS, LatencyReport
from vida.streamer.session import (
    Engine,
    EngineAssets,
    Session,
    SessionLimitError,
    load_engine_assets,
)
from vida.streamer.server import create_app

__all__ = [
    "CONTROL_SPEAK_END",
    "CONTROL_SPEAK_START",
    "FORMAT_PNG",
    "FORMAT_RAW_RGB24",
    "AudioPayload",
    "ControlPayload",
    "EventPayload",
    "MediaPacket",
    "PacketError",
    "PacketKind",
    "PayloadLengthError",
    "TruncatedPacketError",
    "UnknownKindError",
    "VideoPayload",
    "decode_packet",
    "encode_packet",
    "event_json",
    "read_packets",
    "write_packets",
    "OutboundQueue",
    "QueueClosedError",
    "STAGE_FIELDS",
    "LatencyReport",
    "Engine",
    "EngineAssets",
    "Session",
    "SessionLimitError",
    "load_engine_assets",
    "create_app",
]
