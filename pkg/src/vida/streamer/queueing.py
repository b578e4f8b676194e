"""Bounded outbound packet queue with a drop-oldest-video overflow policy.

A full queue never discards audio, event or control packets.  An arriving
video packet evicts the oldest queued video packet to make room (counted);
any other arrival, or a video arrival with no queued video to evict,
blocks the producer until the consumer drains.  Because drops only ever
remove the oldest video, the surviving video pts stay strictly increasing.
"""

from __future__ import annotations

import threading

from vida.streamer.packets import MediaPacket, PacketKind


class QueueClosedError(RuntimeError):
    """Raised when putting into a closed queue."""


class OutboundQueue:
    def __init__(self, cap: int) -> None:
        if cap < 1:
            raise ValueError(f"queue capacity must be at least 1, got {cap}")
        self.cap = cap
        self._items: list[MediaPacket] = []
        self._cond = threading.Condition()
        self._dropped_video = 0
        self._closed = False

    @property
    def dropped_video(self) -> int:
        with self._cond:
            return self._dropped_video

    @property
    def closed(self) -> bool:
        with self._cond:
            return self._closed

    def qsize(self) -> int:
        with self._cond:
            return len(self._items)

    def put(self, packet: MediaPacket) -> bool:
        """Enqueue; returns True when an older video packet was evicted."""
        with self._cond:
            while True:
                if self._closed:
                    raise QueueClosedError("outbound queue is closed")
                if len(self._items) < self.cap:
                    self._items.append(packet)
                    self._cond.notify_all()
                    return False
                if packet.kind == PacketKind.VIDEO:
                    victim = next(
                        (i for i, p in enumerate(self._items)
                         if p.kind == PacketKind.VIDEO),
                        None,
                    )
                    if victim is not None:
                        del self._items[victim]
                        self._dropped_video += 1
                        self._items.append(packet)
                        self._cond.notify_all()
                        return True
                self._cond.wait()

    def get(self, timeout: float | None = None) -> MediaPacket | None:
        """Pop the oldest packet; None on timeout or on a closed, empty queue."""
        with self._cond:
            if not self._items and not self._closed:
                self._cond.wait(timeout)
            if not self._items:
                return None
            packet = self._items.pop(0)
            self._cond.notify_all()
            return packet

    def get_batch(self, timeout: float | None = None) -> list[MediaPacket]:
        """Pop everything queued, waiting up to ``timeout`` for the first item."""
        with self._cond:
            if not self._items and not self._closed:
                self._cond.wait(timeout)
            batch = self._items
            self._items = []
            if batch:
                self._cond.notify_all()
            return batch

    def drain(self) -> list[MediaPacket]:
        """Pop everything queued without waiting."""
        return self.get_batch(timeout=0)

    def close(self) -> None:
        with self._cond:
            self._closed = True
            self._cond.notify_all()
