"""Shared graphs and corpus helpers for the test suite."""

from __future__ import annotations

import pytest

from triagent import GeneratorConfig, build_graph, generate


def k3():
    return generate(GeneratorConfig("complete", 3))


def k4():
    return generate(GeneratorConfig("complete", 4))


def c5():
    return generate(GeneratorConfig("cycle", 5))


def p3():
    return generate(GeneratorConfig("path", 3))


def p4():
    return generate(GeneratorConfig("path", 4))


def s5():
    return generate(GeneratorConfig("star", 5))


def petersen():
    return generate(GeneratorConfig("petersen"))


def diamond():
    return generate(GeneratorConfig("diamond"))


NAMED = {
    "K3": k3,
    "K4": k4,
    "C5": c5,
    "P4": p4,
    "S5": s5,
    "petersen": petersen,
    "diamond": diamond,
}

# 4 sizes x 3 densities x 17 seeds = 204 random connected graphs
GNP_SIZES = (8, 16, 32, 64)
GNP_PROBS = (0.1, 0.3, 0.6)
GNP_SEEDS = range(17)


def gnp(n, p, seed):
    return generate(GeneratorConfig("gnp", n, p, seed))


def corpus_keys(max_n=None):
    keys = [("gnp", n, p, s) for n in GNP_SIZES for p in GNP_PROBS
            for s in GNP_SEEDS if max_n is None or n <= max_n]
    keys += [(name,) for name in NAMED]
    return keys


def corpus_graph(key):
    if key[0] == "gnp":
        return gnp(*key[1:])
    return NAMED[key[0]]()
