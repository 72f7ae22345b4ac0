import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from dp468.generate import GenOptions, generate
from dp468.planegraph import PlaneGraph
from dp468.signing import Perm, Signature, SignedPlaneGraph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def cycle_graph(n: int) -> PlaneGraph:
    return PlaneGraph([[(v + 1) % n, (v - 1) % n] for v in range(n)], (0, 1))


def signed_cycle(n: int, perms=None) -> SignedPlaneGraph:
    g = cycle_graph(n)
    arcs = {(v, (v + 1) % n): Perm.parse(p) for v, p in enumerate(perms or [])}
    return SignedPlaneGraph(g, Signature(arcs))


def random_signing(sg: SignedPlaneGraph, rng: random.Random) -> SignedPlaneGraph:
    perms = list(Perm)
    return sg.with_sig(Signature({e: rng.choice(perms) for e in sg.graph.edges()}))


def instance(n: int, seed: int, **kw) -> SignedPlaneGraph:
    return generate(n, seed, GenOptions(**kw))


@pytest.fixture
def triangle():
    return SignedPlaneGraph(PlaneGraph([[1, 2], [2, 0], [0, 1]], (0, 1)))


@pytest.fixture
def c4():
    return SignedPlaneGraph(cycle_graph(4))


def random_planar(n: int, rng: random.Random, density: float = 0.6) -> PlaneGraph:
    """Connected planar graph on ``n`` vertices, embedded by networkx."""
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(n))
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        G.add_edge(order[i], order[rng.randrange(i)])
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if not G.has_edge(a, b)]
    rng.shuffle(pairs)
    for a, b in pairs[: int(density * len(pairs))]:
        G.add_edge(a, b)
        if not nx.check_planarity(G)[0]:
            G.remove_edge(a, b)
    _, emb = nx.check_planarity(G)
    rot = [list(emb.neighbors_cw_order(v)) for v in range(n)]
    u = next(v for v in range(n) if rot[v])
    return PlaneGraph(rot, (u, rot[u][0]))


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
