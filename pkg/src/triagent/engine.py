"""Synchronous Communicate-Compute-Move execution of agents on a PortGraph.

One round: every agent reads a round-start snapshot of the state exchanged
by co-located agents, computes on its own store, then moves through a port
(or stays).  Agents never see node indices; the engine keeps positions to
itself and hands behaviors only ports, co-located exchange snapshots and
their own store.
"""

from __future__ import annotations

import random
from collections import defaultdict, namedtuple
from dataclasses import dataclass, field


class SimulationFault(RuntimeError):
    """A behavior violated the model (bad port, non-convergence, ...)."""

    def __init__(self, message, agent_id=None, round_no=None):
        if agent_id is not None:
            message = f"agent {agent_id} at round {round_no}: {message}"
        super().__init__(message)
        self.agent_id = agent_id
        self.round_no = round_no


class ProtocolError(ValueError):
    """Invalid protocol configuration (bad ID window, duplicate IDs, ...)."""


# ---------------------------------------------------------------------------
# Memory metering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CostModel:
    """Bit costs for agent-visible state: IDs, ports, counters, booleans."""

    id_bits: int      # L, the ID window
    port_bits: int    # ceil(log2 max-degree)

    def cost(self, kind: str, value) -> int:
        if kind == "id":
            return self.id_bits
        if kind == "port":
            return self.port_bits
        if kind == "counter":
            return int(value).bit_length()
        if kind == "bool":
            return 1
        raise ValueError(f"unknown atom kind {kind!r}")


def meter_memory(atoms, cost: CostModel) -> int:
    """Total bit cost of a store expressed as (kind, value) atoms."""
    return sum(cost.cost(kind, value) for kind, value in atoms)


def port_bits_for(delta: int) -> int:
    return max(delta - 1, 0).bit_length()


def id_window(ids) -> int:
    """Bit-length L of the largest ID (at least 1)."""
    return max(max(ids).bit_length(), 1)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProtocolConfig:
    """Knowledge handed to the agents: max degree, ID window, D (or n)."""

    delta: int                 # known max degree (>= actual)
    id_bits: int               # L: every agent ID fits in this many bits
    d_param: int               # diameter, or n when D is unknown
    n: int | None = None       # optional node count (reporting/asserts)
    lcc_standard: bool = False
    known_total: int | None = None   # pre-known T(G) for centrality

    @property
    def schedule_rounds(self) -> int:
        """Rounds in one full meeting schedule: 2 * delta * L."""
        return 2 * self.delta * self.id_bits

    def cost_model(self) -> CostModel:
        return CostModel(id_bits=self.id_bits,
                         port_bits=port_bits_for(self.delta))


def make_config(graph, ids, d_mode: str = "exact", **kw) -> ProtocolConfig:
    d = graph.diameter() if d_mode == "exact" else graph.node_count
    return ProtocolConfig(delta=graph.max_degree, id_bits=id_window(ids),
                          d_param=d, n=graph.node_count, **kw)


# ---------------------------------------------------------------------------
# Engine state
# ---------------------------------------------------------------------------

# What a co-located peer reveals: its ID, whether it is away from home,
# the port it entered the current node through, and its exchanged payload.
PeerView = namedtuple("PeerView", "aid away entry_port payload")


class _Agent:
    __slots__ = ("aid", "home", "node", "entry_port", "behavior",
                 "moves", "dirty")

    def __init__(self, aid, home, behavior):
        self.aid = aid
        self.home = home
        self.node = home
        self.entry_port = None
        self.behavior = behavior
        self.moves = 0
        self.dirty = True


@dataclass
class RoundMetrics:
    rounds_elapsed: int = 0
    phases: list = field(default_factory=list)   # (name, start, end)
    peak_bits: dict = field(default_factory=dict)        # aid -> bits
    phase_peak_bits: dict = field(default_factory=dict)  # name -> {aid: bits}
    move_counts: dict = field(default_factory=dict)      # aid -> moves
    extra: dict = field(default_factory=dict)

    def phase_rounds(self, name: str) -> int:
        return sum(end - start for pn, start, end in self.phases
                   if pn == name or pn.startswith(name + "."))


class World:
    """Engine state: a graph, one agent per node, a round counter."""

    def __init__(self, graph, ids, behavior_factory, config: ProtocolConfig,
                 order_seed=None, trace=None):
        if len(ids) != graph.node_count:
            raise ProtocolError("need exactly one agent per node")
        if len(set(ids)) != len(ids):
            raise ProtocolError("agent IDs must be distinct")
        if any(i < 0 for i in ids):
            raise ProtocolError("agent IDs must be non-negative")
        if max(max(ids).bit_length(), 1) > config.id_bits:
            raise ProtocolError("ID window L is smaller than an agent ID")
        if graph.max_degree > config.delta:
            raise ProtocolError("configured max degree below actual")
        self.graph = graph
        self.config = config
        self.cost = config.cost_model()
        self.round = 0
        self.trace = trace
        self.metrics = RoundMetrics()
        self._mutations = 0
        self.agents = {}
        for home, aid in enumerate(ids):
            deg = graph.degree(home)
            self.agents[aid] = _Agent(aid, home, behavior_factory(aid, deg))
        # engine-internal iteration order; observationally irrelevant
        self._order = sorted(self.agents.values(), key=lambda a: a.aid)
        if order_seed is not None:
            random.Random(order_seed).shuffle(self._order)

    def behaviors(self):
        return {aid: ag.behavior for aid, ag in self.agents.items()}

    def run_phase(self, name: str, rounds: int, repeats: int = 1):
        """Run a fixed-length phase; behaviors see phase-relative offsets.

        With repeats > 1 the same round pattern runs back to back (e.g. a
        flooding phase repeating the meeting schedule d_param times).  Once
        a full repetition passes with zero agent-state mutations, the
        remaining repetitions are provably identical no-ops, so only the
        round and move counters advance.  Disabled while tracing so the
        trace stays complete.
        """
        start = self.round
        for ag in self._order:
            ag.behavior.begin_phase(name)
            ag.dirty = True
        self._meter(name)
        for rep in range(repeats):
            moves_before = {ag.aid: ag.moves for ag in self._order}
            self._mutations = 0
            for offset in range(rounds):
                self.run_round(name, rep * rounds + offset)
            remaining = repeats - rep - 1
            if remaining and self._mutations == 0 and self.trace is None:
                for ag in self._order:
                    ag.moves += (ag.moves - moves_before[ag.aid]) * remaining
                self.round += remaining * rounds
                break
        for ag in self._order:
            ag.behavior.end_phase(name)
            ag.dirty = True
        self._meter(name)
        self.metrics.phases.append((name, start, self.round))

    def run_round(self, phase: str, offset: int):
        graph = self.graph
        occupancy = defaultdict(list)
        for ag in self._order:
            occupancy[ag.node].append(ag)

        # Communicate: snapshot exchanged state wherever agents co-locate.
        views = {}
        for group in occupancy.values():
            if len(group) < 2:
                continue
            for ag in group:
                views[ag.aid] = PeerView(
                    aid=ag.aid, away=ag.node != ag.home,
                    entry_port=ag.entry_port,
                    payload=ag.behavior.exchange())

        # Compute: each agent sees only its co-located peers' snapshots.
        moves = []
        for ag in self._order:
            group = occupancy[ag.node]
            if len(group) > 1:
                peers = tuple(views[o.aid]
                              for o in sorted(group, key=lambda a: a.aid)
                              if o is not ag)
            else:
                peers = ()
            port = ag.behavior.step(offset, peers,
                                    at_home=ag.node == ag.home,
                                    entry_port=ag.entry_port)
            if port is not None:
                moves.append((ag, port))

        # Move: relocate along chosen ports, atomically.
        for ag, port in moves:
            if not 0 <= port < graph.degree(ag.node):
                raise SimulationFault(f"exit port {port} out of range",
                                      ag.aid, self.round)
            ag.node, ag.entry_port = graph.traverse(ag.node, port)
            ag.moves += 1
            if self.trace is not None:
                self.trace.write(f"{self.round} {ag.aid} {port}\n")

        self._meter(phase)
        self.round += 1

    def _meter(self, phase: str):
        peaks = self.metrics.phase_peak_bits.setdefault(phase, {})
        for ag in self._order:
            if not (ag.dirty or ag.behavior.dirty):
                continue
            if ag.behavior.dirty:
                self._mutations += 1
            ag.dirty = False
            ag.behavior.dirty = False
            bits = ag.behavior.memory_bits(self.cost)
            if bits > peaks.get(ag.aid, -1):
                peaks[ag.aid] = bits
            if bits > self.metrics.peak_bits.get(ag.aid, -1):
                self.metrics.peak_bits[ag.aid] = bits

    def finish(self) -> RoundMetrics:
        self.metrics.rounds_elapsed = self.round
        self.metrics.move_counts = {aid: ag.moves
                                    for aid, ag in self.agents.items()}
        return self.metrics

    def placement(self) -> dict:
        """node -> agent ID (simulator-side bookkeeping, not agent-visible)."""
        return {ag.home: aid for aid, ag in self.agents.items()}


class Behavior:
    """Per-agent protocol state machine driven by the engine.

    Subclasses implement exchange/step and expose their store through
    memory_atoms for metering.  Set self.dirty after any store mutation
    so the engine re-meters.
    """

    def __init__(self, aid: int, degree: int, config: ProtocolConfig):
        self.aid = aid
        self.degree = degree       # degree of the home node
        self.config = config
        self.dirty = True

    def begin_phase(self, name: str):
        pass

    def end_phase(self, name: str):
        pass

    def exchange(self):
        """Payload revealed to co-located agents (must be a fresh copy)."""
        return None

    def step(self, offset, peers, at_home, entry_port):
        """Compute for one round; return an exit port or None to stay."""
        return None

    def memory_atoms(self):
        """Iterable of (kind, value) atoms describing the metered store."""
        return ()

    def memory_bits(self, cost: CostModel) -> int:
        """Metered store size; subclasses may override with closed forms
        (must stay equal to meter_memory over memory_atoms)."""
        return meter_memory(self.memory_atoms(), cost)
