"""Triangle counting by mobile agents.

Phase 1 learns the neighbor table, phase 2 counts common neighbors per
incident edge (twice the per-node triangle count), phase 3 floods the
per-node sums for d_param schedule repetitions; every agent then holds
all n sums and reports their total divided by six.
"""

from __future__ import annotations

from ..engine import SimulationFault
from .schedule import MeetingBehavior


class TriangleBehavior(MeetingBehavior):

    def __init__(self, aid, degree, config):
        super().__init__(aid, degree, config)
        self.ports = {}        # neighbor id -> local port
        self.table = {}        # local port -> neighbor id
        self.nbr_set = frozenset()
        self.edge = {}         # neighbor id -> common-neighbor count
        self.local_sum = None
        self.tv = None
        self.flood = {}        # agent id -> its local_sum
        self._flood_view = None   # cached round-start snapshot of flood

    # -- meetings ----------------------------------------------------------

    def on_meet(self, peer, port):
        mode = self.mode
        if mode == "phase1":
            if peer.aid not in self.ports:
                self.ports[peer.aid] = port
                self.table[port] = peer.aid
                self.dirty = True
        elif mode == "phase2":
            if peer.aid in self.ports and peer.aid not in self.edge:
                self.edge[peer.aid] = len(self.nbr_set & peer.payload)
                self.dirty = True
        elif mode == "phase3":
            mine = self.flood
            grew = False
            for k, v in peer.payload.items():
                if k not in mine:
                    mine[k] = v
                    grew = True
            if grew:
                self._flood_view = None
                self.dirty = True

    def exchange(self):
        if self.mode == "phase2":
            return self.nbr_set
        if self.mode == "phase3":
            # copy-on-write: rebuilt only after the table actually grew,
            # which keeps round-start snapshot semantics cheap
            if self._flood_view is None:
                self._flood_view = dict(self.flood)
            return self._flood_view
        return None

    # -- phase boundaries ----------------------------------------------------

    def end_phase(self, name):
        if name == "phase1":
            if len(self.ports) != self.degree:
                raise SimulationFault(
                    f"neighbor table has {len(self.ports)} of "
                    f"{self.degree} entries after phase 1", self.aid)
            self.nbr_set = frozenset(self.ports)
        elif name == "phase2":
            if len(self.edge) != self.degree:
                raise SimulationFault("missed a neighbor in phase 2",
                                      self.aid)
            self.local_sum = sum(self.edge.values())
            if self.local_sum % 2:
                raise SimulationFault("odd local_sum", self.aid)
            self.tv = self.local_sum // 2
            self.flood = {self.aid: self.local_sum}
            self._flood_view = None
        self.dirty = True

    def total(self):
        s = sum(self.flood.values())
        if s % 6:
            raise SimulationFault("flooded sum not divisible by 6", self.aid)
        return s // 6

    # -- metering ------------------------------------------------------------

    def memory_atoms(self):
        for aid, port in self.ports.items():
            yield ("id", aid)
            yield ("port", port)
        for count in self.edge.values():
            yield ("counter", count)
        if self.local_sum is not None:
            yield ("counter", self.local_sum)
            yield ("counter", self.tv)
        for aid, v in self.flood.items():
            yield ("id", aid)
            yield ("counter", v)

    def memory_bits(self, cost):
        # closed form of memory_atoms; kept in sync by tests
        bits = (len(self.ports) + len(self.flood)) * cost.id_bits
        bits += len(self.ports) * cost.port_bits
        bits += sum(c.bit_length() for c in self.edge.values())
        if self.local_sum is not None:
            bits += self.local_sum.bit_length() + self.tv.bit_length()
        bits += sum(v.bit_length() for v in self.flood.values())
        return bits
