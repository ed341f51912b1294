"""Shared test utilities: independent oracles and alternative constructions.

Everything here recomputes results from first principles (full enumeration,
no pruning, no holonomy machinery) so package code is checked against a
genuinely separate route.
"""

from __future__ import annotations

import itertools
import random

from gainchroma import GainGraph, SpinAction, gain_graph


def naive_count(graph: GainGraph, action: SpinAction) -> int:
    """Totally frustrated states by exhaustive product enumeration."""
    act = action.act
    total = 0
    for state in itertools.product(range(action.size), repeat=graph.vertex_count):
        if all(act[state[e.u]][e.gain] != state[e.v] for e in graph.edges):
            total += 1
    return total


def all_states(graph: GainGraph, action: SpinAction):
    return itertools.product(range(action.size), repeat=graph.vertex_count)


def dfs_forest(graph: GainGraph, subset) -> frozenset[int]:
    """A maximal forest chosen depth-first with edges in reversed id order,
    deliberately different from the library's breadth-first choice."""
    subset = frozenset(subset)
    touched = sorted(
        {w for eid in subset for w in (graph.edge(eid).u, graph.edge(eid).v)}
    )
    visited: set[int] = set()
    forest: set[int] = set()
    for start in touched:
        if start in visited:
            continue
        visited.add(start)
        stack = [start]
        while stack:
            w = stack[-1]
            advanced = False
            for eid in reversed(graph.incident_ids(w)):
                if eid not in subset:
                    continue
                e = graph.edge(eid)
                other = e.v if e.u == w else e.u
                if other not in visited:
                    visited.add(other)
                    forest.add(eid)
                    stack.append(other)
                    advanced = True
                    break
            if not advanced:
                stack.pop()
    return frozenset(forest)


def random_graph(rng: random.Random, group, max_vertices=4, max_edges=6) -> GainGraph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    triples = [
        (rng.randrange(n), rng.randrange(n), rng.randrange(group.order))
        for _ in range(m)
    ]
    return gain_graph(group, n, triples)


def powerset(ids):
    ids = sorted(ids)
    for r in range(len(ids) + 1):
        yield from (frozenset(c) for c in itertools.combinations(ids, r))
