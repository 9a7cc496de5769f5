"""Triangle centrality by mobile agents.

Runs the triangle-counting phases (the flood phase only when the total is
not already known), then one more meeting schedule in which neighbors
exchange their per-node triangle counts.  A neighbor with at least one
common neighbor is in the triangle neighborhood; the centrality is
(A/3 + B) / T(G) where A sums T over the closed triangle neighborhood and
B over the remaining neighbors.
"""

from __future__ import annotations

from fractions import Fraction

from ..engine import SimulationFault
from .triangles import TriangleBehavior


class CentralityBehavior(TriangleBehavior):

    def __init__(self, aid, degree, config):
        super().__init__(aid, degree, config)
        self.nbr_tv = {}       # neighbor id -> its T(v)
        self.tc = None
        self.tc_defined = False

    def on_meet(self, peer, port):
        if self.mode == "phase4":
            if peer.aid in self.ports and peer.aid not in self.nbr_tv:
                self.nbr_tv[peer.aid] = peer.payload
                self.dirty = True
        else:
            super().on_meet(peer, port)

    def exchange(self):
        if self.mode == "phase4":
            return self.tv
        return super().exchange()

    def end_phase(self, name):
        if name != "phase4":
            super().end_phase(name)
            return
        if len(self.nbr_tv) != self.degree:
            raise SimulationFault("missed a neighbor's triangle count",
                                  self.aid)
        total = self.config.known_total
        if total is None:
            total = self.total()
        in_triangles = {j for j, c in self.edge.items() if c > 0}
        a = self.tv + sum(self.nbr_tv[j] for j in in_triangles)
        b = sum(c for j, c in self.nbr_tv.items() if j not in in_triangles)
        if total > 0:
            self.tc = Fraction(a + 3 * b, 3 * total)
            self.tc_defined = True
        else:
            self.tc = Fraction(0)
            self.tc_defined = False
        self.dirty = True

    def memory_atoms(self):
        yield from super().memory_atoms()
        for aid, v in self.nbr_tv.items():
            yield ("id", aid)
            yield ("counter", v)

    def memory_bits(self, cost):
        bits = super().memory_bits(cost)
        bits += len(self.nbr_tv) * cost.id_bits
        bits += sum(v.bit_length() for v in self.nbr_tv.values())
        return bits
