"""Network card simulation and the loopback factory-server stub.

Packets are JSON bytes in FIFO queues; delivery takes one tick. The factory
stub stands in for the plant-wide scheduling server: it collects machine
reports (optionally persisting them as newline-delimited JSON) and can push
orders back at the machine.
"""
from __future__ import annotations

import json
from collections import deque


class NetEndpointSim:
    def __init__(self, clock, ledger):
        self.clock = clock
        self.ledger = ledger
        self.connected = True
        self._inbound = deque()    # (deliver_tick, bytes)
        self._unsent = deque()     # held while disconnected
        self.peer = None

    def pe_net_send(self, packet: bytes) -> None:
        self.ledger.record("net")
        if self.connected and self.peer is not None:
            self.peer.deliver(packet, self.clock.tick + 1)
        else:
            self._unsent.append(packet)

    def pe_net_poll(self):
        self.ledger.record("net")
        if not self.connected:
            return None
        if self._inbound and self._inbound[0][0] <= self.clock.tick:
            return self._inbound.popleft()[1]
        return None

    def deliver(self, packet: bytes, deliver_tick: int) -> None:
        self._inbound.append((deliver_tick, packet))

    def set_connected(self, connected: bool) -> None:
        was = self.connected
        self.connected = connected
        if connected and not was and self.peer is not None:
            while self._unsent:
                self.peer.deliver(self._unsent.popleft(), self.clock.tick + 1)


class FactoryServerStub:
    """Loopback server: absorbs reports, hands out orders."""

    def __init__(self, clock, persist_path=None):
        self.clock = clock
        self.persist_path = persist_path
        self.machine_endpoint = None
        self._inbox = deque()      # (deliver_tick, bytes)
        self.records = []
        self.malformed = 0

    def attach(self, endpoint: NetEndpointSim) -> None:
        self.machine_endpoint = endpoint
        endpoint.peer = self

    def deliver(self, packet: bytes, deliver_tick: int) -> None:
        self._inbox.append((deliver_tick, packet))

    def drain(self) -> list:
        """Decode every report that has arrived; returns the new records."""
        new = []
        while self._inbox and self._inbox[0][0] <= self.clock.tick:
            packet = self._inbox.popleft()[1]
            try:
                new.append(json.loads(packet.decode("utf-8")))
            except (ValueError, UnicodeDecodeError):
                self.malformed += 1
        if new:
            self.records.extend(new)
            if self.persist_path is not None:
                with open(self.persist_path, "a", encoding="utf-8") as f:
                    for rec in new:
                        f.write(json.dumps(rec, sort_keys=True,
                                           separators=(",", ":")) + "\n")
        return new

    def send_order(self, order: dict) -> None:
        if self.machine_endpoint is not None:
            packet = json.dumps(order, sort_keys=True).encode("utf-8")
            self.machine_endpoint.deliver(packet, self.clock.tick + 1)
