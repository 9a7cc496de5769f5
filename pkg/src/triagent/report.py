"""Run a protocol next to its oracle and build a comparison report.

Reports are plain dicts (JSON-serializable, deterministically ordered)
embedding the run configuration, graph stats, protocol and oracle outputs,
their deltas and the metered round/memory figures.  The verdict is "pass"
only when every delta is zero (integers) or exactly equal (rationals).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from . import oracles
from .engine import ProtocolConfig, id_window
from .graph import PortGraph
from .protocols import run_protocol


def assign_ids(n: int, mode: str = "sequential", seed: int = 0,
               c: int = 2) -> list:
    """Agent IDs per node: sequential 0..n-1 or seeded-random in [0, n^c]."""
    if mode == "sequential":
        return list(range(n))
    if mode == "random":
        rng = random.Random(("ids", n, seed).__repr__())
        return rng.sample(range(n ** c + 1), n)
    raise ValueError(f"unknown id mode {mode!r}")


def _ekey(a, b):
    return (a, b) if a < b else (b, a)


def _edge_label(a, b):
    lo, hi = _ekey(a, b)
    return f"{lo}-{hi}"


def _frac(x: Fraction):
    return {"exact": str(x), "float": float(x)}


def _node_to_agent_edges(mapping, ids):
    """Re-key a node-edge map by agent IDs."""
    return {_ekey(ids[u], ids[v]): val for (u, v), val in mapping.items()}


def compare_run(graph: PortGraph, ids, protocol: str,
                config: ProtocolConfig, order_seed=None, trace=None):
    """Execute protocol and oracle; return (report_dict, passed)."""
    output, metrics = run_protocol(graph, ids, protocol, config,
                                   order_seed=order_seed, trace=trace)
    deltas = {}
    proto_section = {}
    oracle_section = {}

    if protocol == "neighbors":
        mismatches = 0
        for v in range(graph.node_count):
            expected = {p: ids[u] for p, (u, _) in enumerate(graph.port_map[v])}
            if output[ids[v]] != expected:
                mismatches += 1
        deltas["table_mismatches"] = mismatches
        proto_section["tables"] = {
            str(aid): {str(p): j for p, j in sorted(table.items())}
            for aid, table in sorted(output.items())}

    elif protocol == "triangles":
        tally = oracles.oracle_triangles(graph)
        want_nodes = {ids[v]: t for v, t in tally.per_node.items()}
        want_edges = _node_to_agent_edges(tally.per_edge, ids)
        deltas["per_node_mismatches"] = sum(
            1 for aid, t in output["per_agent"].items()
            if t != want_nodes[aid])
        deltas["per_edge_mismatches"] = sum(
            1 for e, s in output["per_edge"].items() if s != want_edges[e])
        deltas["total_delta"] = output["total"] - tally.total
        proto_section = {
            "per_node": {str(a): t for a, t in sorted(output["per_agent"].items())},
            "per_edge": {_edge_label(*e): s
                         for e, s in sorted(output["per_edge"].items())},
            "total": output["total"],
        }
        oracle_section = {
            "per_node": {str(a): t for a, t in sorted(want_nodes.items())},
            "per_edge": {_edge_label(*e): s
                         for e, s in sorted(want_edges.items())},
            "total": tally.total,
        }

    elif protocol == "truss":
        labeling = oracles.oracle_truss(graph)
        want = _node_to_agent_edges(labeling.per_edge, ids)
        deltas["per_edge_mismatches"] = sum(
            1 for e, t in output["per_edge"].items() if t != want[e])
        proto_section = {
            "per_edge": {_edge_label(*e): t
                         for e, t in sorted(output["per_edge"].items())},
            "t_max": output["t_max"],
            "iterations": output["iterations"],
        }
        oracle_section = {
            "per_edge": {_edge_label(*e): t for e, t in sorted(want.items())},
            "t_max": labeling.t_max,
        }

    elif protocol == "centrality":
        vec = oracles.oracle_centrality(graph)
        want = {ids[v]: tc for v, tc in vec.per_node.items()}
        deltas["per_node_mismatches"] = sum(
            1 for aid, tc in output["per_agent"].items()
            if tc != want[aid])
        deltas["defined_mismatch"] = int(output["defined"] != vec.defined)
        proto_section = {
            "per_node": {str(a): _frac(tc)
                         for a, tc in sorted(output["per_agent"].items())},
            "defined": output["defined"],
        }
        oracle_section = {
            "per_node": {str(a): _frac(tc) for a, tc in sorted(want.items())},
            "defined": vec.defined,
        }

    elif protocol == "lcc":
        vec = oracles.oracle_lcc(graph, standard=config.lcc_standard)
        want = {ids[v]: x for v, x in vec.per_node.items()}
        deltas["per_node_mismatches"] = sum(
            1 for aid, x in output.items() if x != want[aid])
        proto_section = {
            "per_node": {str(a): _frac(x) for a, x in sorted(output.items())}}
        oracle_section = {
            "per_node": {str(a): _frac(x) for a, x in sorted(want.items())}}

    else:
        raise ValueError(f"unknown protocol {protocol!r}")

    passed = all(d == 0 for d in deltas.values())
    sched = config.schedule_rounds
    phase12_peak = max(
        (bits
         for name in ("phase1", "phase2")
         for bits in metrics.phase_peak_bits.get(name, {}).values()),
        default=0)
    report = {
        "protocol": protocol,
        "graph": {
            "n": graph.node_count,
            "m": graph.edge_count,
            "max_degree": graph.max_degree,
            "diameter": graph.diameter(),
        },
        "agents": {
            "ids": [ids[v] for v in range(graph.node_count)],
            "id_bits": config.id_bits,
            "d_param": config.d_param,
        },
        "output": proto_section,
        "oracle": oracle_section,
        "deltas": deltas,
        "metrics": {
            "rounds": metrics.rounds_elapsed,
            "schedule_rounds": sched,
            "phase_rounds": {name: end - start
                             for name, start, end in metrics.phases},
            "peak_bits": max(metrics.peak_bits.values(), default=0),
            "phase12_peak_bits": phase12_peak,
            "memory_constant": (phase12_peak / (config.delta * config.id_bits)
                                if config.delta else 0.0),
            "max_flood_entries": max(
                metrics.extra.get("flood_entries", {0: 0}).values()),
            "iterations": metrics.extra.get("iterations"),
        },
        "verdict": "pass" if passed else "fail",
    }
    return report, passed


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
