"""Mobile-agent graph analytics on anonymous port-labeled graphs.

A deterministic simulator for synchronous Communicate-Compute-Move agent
protocols (triangle counting, truss decomposition, triangle centrality,
local clustering), with brute-force oracles and exact round and memory
metering.
"""

from .engine import (CostModel, ProtocolConfig, ProtocolError, RoundMetrics,
                     SimulationFault, World, id_window, make_config,
                     meter_memory)
from .graph import (GeneratorConfig, GraphError, PortGraph, build_graph,
                    generate, load_graph, relabel_nodes, serialize_graph,
                    shuffle_ports)
from .oracles import (CentralityVector, LccVector, TriangleTally,
                      TrussLabeling, h_index, oracle_centrality, oracle_lcc,
                      oracle_triangles, oracle_truss, oracle_truss_hindex)
from .protocols import PROTOCOLS, run_protocol
from .report import assign_ids, compare_run, render_report

__version__ = "0.1.0"
