"""The ID-bit meeting schedule shared by every protocol.

One schedule is L windows of 2*delta rounds, one window per ID bit
(rightmost first).  In a window an agent whose current bit is 0 waits at
home; an agent whose bit is 1 visits port p at window offsets 2p (out) and
2p+1 (meet and return), idling once its ports are exhausted.  A visit
registers only against the resident bit-0 agent, which guarantees the
peer really is the neighbor who lives there.  Two co-located bit-1
visitors ignore each other.
"""

from __future__ import annotations

from ..engine import Behavior


class MeetingBehavior(Behavior):
    """Movement for the bit schedule; subclasses react to meetings."""

    def __init__(self, aid, degree, config):
        super().__init__(aid, degree, config)
        self._span = 2 * config.delta
        self.mode = None

    def begin_phase(self, name):
        self.mode = name.rsplit(".", 1)[-1]

    def step(self, offset, peers, at_home, entry_port):
        window = offset // self._span
        bit_pos = window % self.config.id_bits
        my_bit = (self.aid >> bit_pos) & 1
        if my_bit == 0:
            if peers:
                for peer in peers:
                    if peer.away and (peer.aid >> bit_pos) & 1:
                        self.on_meet(peer, peer.entry_port)
            return None
        sub = offset % self._span
        if sub % 2 == 0:
            port = sub // 2
            return port if port < self.degree else None
        if not at_home:
            for peer in peers:
                if not (peer.aid >> bit_pos) & 1:
                    # the resident agent of the visited node
                    self.on_meet(peer, sub // 2)
                    break
            return entry_port
        return None

    def on_meet(self, peer, port):
        """Handle a valid meeting; port is this agent's port to the peer."""
        raise NotImplementedError
