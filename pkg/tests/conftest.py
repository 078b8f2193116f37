import random

import pytest

from msotd.graphs import Graph, HalinInput, halin_from_plane_tree, random_halin


def make_halin(internal: int, seed: int) -> HalinInput:
    return halin_from_plane_tree(random_halin(internal, seed))


def small_halin(seed: int, max_vertices: int = 12) -> HalinInput:
    """Halin instance with at most ``max_vertices`` vertices."""
    for attempt in range(50):
        h = make_halin(1 + (seed + attempt) % 2, seed * 1000 + attempt)
        if len(h.graph.vertices) <= max_vertices:
            return h
    raise AssertionError("could not generate a small Halin instance")


def random_connected_graph(rng: random.Random, n: int, extra: int) -> Graph:
    """Random tree plus ``extra`` chords."""
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        edges.append((vs[rng.randrange(i)], vs[i]))
    present = {frozenset(e) for e in edges}
    attempts = 0
    while extra > 0 and attempts < 50 * n:
        attempts += 1
        u, v = rng.sample(vs, 2)
        if frozenset((u, v)) not in present:
            present.add(frozenset((u, v)))
            edges.append((u, v))
            extra -= 1
    return Graph(tuple(vs), tuple(edges))


@pytest.fixture
def rng():
    return random.Random(0)
