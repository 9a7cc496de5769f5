import pytest

from triagent import (CostModel, ProtocolConfig, ProtocolError,
                      SimulationFault, World, id_window, meter_memory)
from triagent.engine import Behavior

from conftest import gnp, k3


def cfg_for(graph, ids, **kw):
    return ProtocolConfig(delta=graph.max_degree, id_bits=id_window(ids),
                          d_param=graph.diameter(), n=graph.node_count, **kw)


# ---------------------------------------------------------------------------
# meter_memory cost model
# ---------------------------------------------------------------------------

def test_meter_empty_store():
    assert meter_memory([], CostModel(4, 2)) == 0


def test_meter_neighbor_table():
    atoms = [("id", 9), ("id", 2), ("id", 5),
             ("port", 0), ("port", 1), ("port", 2)]
    assert meter_memory(atoms, CostModel(id_bits=4, port_bits=2)) == 18


def test_meter_counter_and_bool():
    cost = CostModel(4, 2)
    assert meter_memory([("counter", 6)], cost) == 3
    assert meter_memory([("counter", 0)], cost) == 0
    assert meter_memory([("bool", True), ("bool", False)], cost) == 2
    with pytest.raises(ValueError):
        meter_memory([("blob", 1)], cost)


# ---------------------------------------------------------------------------
# CCM round semantics
# ---------------------------------------------------------------------------

class AlwaysPortZero(Behavior):
    def __init__(self, aid, degree, config):
        super().__init__(aid, degree, config)
        self.seen = set()

    def step(self, offset, peers, at_home, entry_port):
        self.seen |= {p.aid for p in peers}
        return 0


class Stay(AlwaysPortZero):
    def step(self, offset, peers, at_home, entry_port):
        self.seen |= {p.aid for p in peers}
        return None


def test_k2_agents_swap_without_meeting():
    from triagent import load_graph
    g = load_graph("0 1")
    ids = [1, 2]
    config = cfg_for(g, ids)
    world = World(g, ids, lambda a, d: AlwaysPortZero(a, d, config), config)
    world.run_phase("swap", 1)
    # both crossed the edge simultaneously; neither saw the other
    assert {ag.node for ag in world.agents.values()} == {0, 1}
    assert all(ag.node != ag.home for ag in world.agents.values())
    assert all(not ag.behavior.seen for ag in world.agents.values())
    world.run_phase("swap2", 1)
    assert all(ag.node == ag.home for ag in world.agents.values())


def test_stay_keeps_position_and_counts_rounds():
    g = k3()
    ids = [1, 2, 3]
    config = cfg_for(g, ids)
    world = World(g, ids, lambda a, d: Stay(a, d, config), config)
    world.run_phase("idle", 5)
    metrics = world.finish()
    assert metrics.rounds_elapsed == 5
    assert all(ag.node == ag.home for ag in world.agents.values())
    assert metrics.move_counts == {1: 0, 2: 0, 3: 0}


def test_colocated_agents_see_each_other():
    # all three agents of K3 walk to the same node via their port to it
    from triagent import load_graph
    g = load_graph("0 1\n0 2\n1 2")

    class GoToNodeZero(Stay):
        def step(self, offset, peers, at_home, entry_port):
            self.seen |= {p.aid for p in peers}
            if offset == 0 and self.aid != 10:
                return 0   # ports are ascending, port 0 leads to node 0
            return None

    ids = [10, 20, 30]
    config = cfg_for(g, ids)
    world = World(g, ids, lambda a, d: GoToNodeZero(a, d, config), config)
    world.run_phase("gather", 2)
    behaviors = world.behaviors()
    assert behaviors[10].seen == {20, 30}
    assert behaviors[20].seen == {10, 30}
    assert behaviors[30].seen == {10, 20}


def test_out_of_range_port_faults_with_context():
    g = k3()
    ids = [1, 2, 3]
    config = cfg_for(g, ids)

    class BadPort(Behavior):
        def step(self, offset, peers, at_home, entry_port):
            return 7 if self.aid == 2 else None

    world = World(g, ids, lambda a, d: BadPort(a, d, config), config)
    with pytest.raises(SimulationFault, match="agent 2 at round 0"):
        world.run_phase("bad", 1)


# ---------------------------------------------------------------------------
# configuration validation
# ---------------------------------------------------------------------------

def test_world_rejects_bad_setups():
    g = k3()
    config = cfg_for(g, [1, 2, 3])
    factory = lambda a, d: Behavior(a, d, config)
    with pytest.raises(ProtocolError, match="one agent per node"):
        World(g, [1, 2], factory, config)
    with pytest.raises(ProtocolError, match="distinct"):
        World(g, [1, 1, 2], factory, config)
    small = ProtocolConfig(delta=2, id_bits=1, d_param=1)
    with pytest.raises(ProtocolError, match="ID window"):
        World(g, [1, 2, 4], factory, small)
    lowdeg = ProtocolConfig(delta=1, id_bits=3, d_param=1)
    with pytest.raises(ProtocolError, match="max degree"):
        World(g, [1, 2, 3], factory, lowdeg)


def test_id_window():
    assert id_window([0, 1]) == 1
    assert id_window([1, 2]) == 2
    assert id_window([0]) == 1
    assert id_window([5, 9, 3]) == 4


# ---------------------------------------------------------------------------
# determinism and order independence
# ---------------------------------------------------------------------------

def test_protocol_runs_are_deterministic_and_order_independent():
    from triagent import run_protocol
    from triagent.report import assign_ids
    g = gnp(10, 0.4, 3)
    ids = assign_ids(10, "random", 5)
    config = cfg_for(g, ids)
    base_out, base_metrics = run_protocol(g, ids, "triangles", config)
    for order_seed in (None, 1, 2, 3):
        out, metrics = run_protocol(g, ids, "triangles", config,
                                    order_seed=order_seed)
        assert out == base_out
        assert metrics.rounds_elapsed == base_metrics.rounds_elapsed
        assert metrics.peak_bits == base_metrics.peak_bits
        assert metrics.move_counts == base_metrics.move_counts
