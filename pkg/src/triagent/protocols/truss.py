"""Truss decomposition by mobile agents.

Each edge is owned by its smaller-ID endpoint and carries an h value,
initialized to the edge's support.  Every iteration runs three meeting
schedules: (1) rebuild, agents harvest the h values of all edges inside
their neighborhood and recompute each scheduled owned edge's h-index;
(2) notify, owners of co-triangle edges learn which edges must be
re-examined; (3) flood, agents spread their change bits for d_param
schedule repetitions and terminate when the product of all bits is 1.
Final trussness is h + 2.
"""

from __future__ import annotations

from ..engine import SimulationFault
from ..oracles import h_index
from .schedule import MeetingBehavior
from .triangles import TriangleBehavior


def _key(a, b):
    return (a, b) if a < b else (b, a)


class TrussBehavior(TriangleBehavior):

    def __init__(self, aid, degree, config):
        super().__init__(aid, degree, config)
        self.owned = {}        # (self.aid, j) with j > self.aid -> h
        self.scheduled = {}    # edge -> bool
        self.change = 0
        self.change_table = {}
        self._harvest = {}     # edge -> h, gathered during a rebuild
        self._outbox = ()      # (owner, edge, new_h, old_h) notifications
        self._inbox = set()
        self._owned_view = {}
        self._change_view = None
        # running bit-length sums so memory_bits stays O(1) per round
        self._owned_hbits = 0
        self._harvest_hbits = 0
        self._outbox_hbits = 0
        self._tri_bits = None  # triangle-layer bits, frozen after phase 2

    # -- meetings ------------------------------------------------------------

    def on_meet(self, peer, port):
        mode = self.mode
        if mode == "rebuild":
            mine = self.nbr_set
            harvest = self._harvest
            for eid, h in peer.payload.items():
                if eid not in harvest and (eid[1] == self.aid
                                           or eid[1] in mine):
                    harvest[eid] = h
                    self._harvest_hbits += h.bit_length()
            self.dirty = True
        elif mode == "notify":
            for note in peer.payload:
                if note[0] == self.aid:
                    self._inbox.add(note[1:])
                    self.dirty = True
        elif mode == "flood":
            mine = self.change_table
            grew = False
            for k, v in peer.payload.items():
                if k not in mine:
                    mine[k] = v
                    grew = True
            if grew:
                self._change_view = None
                self.dirty = True
        else:
            super().on_meet(peer, port)

    def exchange(self):
        mode = self.mode
        if mode == "rebuild":
            return self._owned_view
        if mode == "notify":
            return self._outbox
        if mode == "flood":
            if self._change_view is None:
                self._change_view = dict(self.change_table)
            return self._change_view
        return super().exchange()

    # -- phase boundaries ------------------------------------------------------

    def begin_phase(self, name):
        super().begin_phase(name)
        if self.mode == "rebuild":
            self._harvest = {}
            self._harvest_hbits = 0
            self._inbox = set()
            self._outbox = ()
            self._outbox_hbits = 0
            self.change_table = {}
            # immutable for the whole schedule, so peers may share it
            self._owned_view = dict(self.owned)

    def end_phase(self, name):
        mode = name.rsplit(".", 1)[-1]
        if mode == "phase2":
            super().end_phase(name)
            self.owned = {(self.aid, j): c for j, c in self.edge.items()
                          if j > self.aid}
            self.scheduled = {e: True for e in self.owned}
            self._owned_hbits = sum(h.bit_length()
                                    for h in self.owned.values())
            return
        if mode == "rebuild":
            self._finish_rebuild()
        elif mode == "notify":
            for eid, new_h, old_h in self._inbox:
                if eid in self.owned and new_h < self.owned[eid] <= old_h:
                    self.scheduled[eid] = True
            self.change = 0 if any(self.scheduled.values()) else 1
            self.change_table = {self.aid: self.change}
            self._change_view = None
        elif mode == "flood":
            pass
        else:
            super().end_phase(name)
            return
        self.dirty = True

    def _finish_rebuild(self):
        snapshot = self._owned_view
        harvest = self._harvest
        outbox = []
        self_notes = []
        for e in self.owned:
            if not self.scheduled[e]:
                continue
            a, b = e
            l_values = []
            n_edges = []
            for p in self.nbr_set:
                if p == b:
                    continue
                e2 = _key(p, b)
                h2 = harvest.get(e2)
                if h2 is None:
                    h2 = snapshot.get(e2)
                    if h2 is None:
                        continue          # (p, b) is not an edge
                e1 = _key(p, a)
                h1 = snapshot.get(e1, harvest.get(e1))
                if h1 is None:
                    raise SimulationFault(
                        f"missing h value for edge {e1}", self.aid)
                l_values.append(h1 if h1 < h2 else h2)
                n_edges.append(e1)
                n_edges.append(e2)
            new_h = h_index(l_values)
            old_h = snapshot[e]
            if new_h < old_h:
                self.owned[e] = new_h     # stays scheduled
                self._owned_hbits += new_h.bit_length() - old_h.bit_length()
                for ee in set(n_edges):
                    if ee[0] == self.aid:
                        self_notes.append((ee, new_h, old_h))
                    else:
                        outbox.append((ee[0], ee, new_h, old_h))
            else:
                self.scheduled[e] = False
        for eid, new_h, old_h in self_notes:
            if new_h < self.owned[eid] <= old_h:
                self.scheduled[eid] = True
        self._outbox = tuple(sorted(set(outbox)))
        self._outbox_hbits = sum(n.bit_length() + o.bit_length()
                                 for _, _, n, o in self._outbox)

    def verdict(self):
        return all(v == 1 for v in self.change_table.values())

    def trussness(self):
        return {e: h + 2 for e, h in self.owned.items()}

    # -- metering ----------------------------------------------------------------

    def memory_atoms(self):
        yield from super().memory_atoms()
        for (a, b), h in self.owned.items():
            yield ("id", a)
            yield ("id", b)
            yield ("counter", h)
        for flag in self.scheduled.values():
            yield ("bool", flag)
        yield ("bool", self.change)
        for (a, b), h in self._harvest.items():
            yield ("id", a)
            yield ("id", b)
            yield ("counter", h)
        for owner, (a, b), new_h, old_h in self._outbox:
            yield ("id", owner)
            yield ("id", a)
            yield ("id", b)
            yield ("counter", new_h)
            yield ("counter", old_h)
        for aid, v in self.change_table.items():
            yield ("id", aid)
            yield ("bool", v)

    def memory_bits(self, cost):
        if self.mode in ("rebuild", "notify", "flood"):
            # the triangle-layer fields are frozen once phase 2 ended
            if self._tri_bits is None:
                self._tri_bits = super().memory_bits(cost)
            bits = self._tri_bits
        else:
            bits = super().memory_bits(cost)
        ell = cost.id_bits
        bits += len(self.owned) * 2 * ell + self._owned_hbits
        bits += len(self.scheduled) + 1      # booleans incl. change
        bits += len(self._harvest) * 2 * ell + self._harvest_hbits
        bits += len(self._outbox) * 3 * ell + self._outbox_hbits
        bits += len(self.change_table) * (ell + 1)
        return bits
