"""Deterministic catalogs of graphs and matroids used by the checks."""

import random
from itertools import combinations, product

from .graphs import MultiGraph, named_graph
from .matroid import (DualMatroid, make_graphic, make_lattice_path, make_uniform)

NAMED = ("k4", "k5", "theta(2)", "theta(3)", "theta(4)", "theta(5)", "theta(6)",
         "bouquet(2)", "bouquet(3)", "bouquet(4)", "doubled_triangle", "prism(3)", "prism(4)",
         "wheel(4)", "wheel(5)", "cycle(3)", "cycle(4)", "cycle(5)", "petersen")


def _connected(nv, edges):
    if nv == 0:
        return True
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(nv)}) == 1


def connected_simple_graphs(nv):
    """All connected simple graphs on exactly nv vertices, up to isomorphism."""
    pairs = list(combinations(range(nv), 2))
    seen = {}
    for bits in range(1 << len(pairs)):
        edges = tuple(p for i, p in enumerate(pairs) if bits >> i & 1)
        if not _connected(nv, edges):
            continue
        g = MultiGraph(nv, edges)
        seen.setdefault(g.canonical_key(), g)
    return [seen[k] for k in sorted(seen)]


def connected_multigraphs(nv, max_mult=2, loops=False):
    """Connected multigraphs on nv vertices with bounded multiplicity (loops at most one per vertex)."""
    slots = list(combinations(range(nv), 2)) + ([(v, v) for v in range(nv)] if loops else [])
    bounds = [max_mult if u != v else 1 for u, v in slots]
    seen = {}
    for counts in product(*(range(b + 1) for b in bounds)):
        edges = tuple(s for s, c in zip(slots, counts) for _ in range(c))
        if not edges or not _connected(nv, edges):
            continue
        g = MultiGraph(nv, edges)
        seen.setdefault(g.canonical_key(), g)
    return [seen[k] for k in sorted(seen)]


def random_min_degree3_multigraph(rng, max_edges=14, loopless=True):
    """Random connected multigraph with every degree >= 3 and at most max_edges edges."""
    while True:
        nv = rng.randint(2, 2 * max_edges // 3)
        edges = [(i, i + 1) for i in range(nv - 1)]
        deg = [0] * nv
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        while min(deg) < 3 and len(edges) < max_edges:
            low = [v for v in range(nv) if deg[v] < 3]
            u = rng.choice(low)
            v = rng.randrange(nv)
            if u == v and (loopless or nv > 1 and rng.random() < 0.7):
                continue
            edges.append((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
        if min(deg) >= 3:
            return MultiGraph(nv, tuple(edges))


def random_min_degree3_multigraphs(count=100, seed=1, max_edges=14, loopless=True):
    rng = random.Random(seed)
    return [random_min_degree3_multigraph(rng, max_edges, loopless) for _ in range(count)]


def graph_catalog():
    """(name, graph) pairs: named graphs, all small connected simple graphs and
    multigraphs, and seeded random min-degree-3 multigraphs."""
    out = [(name, named_graph(name)) for name in NAMED]
    for nv in (3, 4, 5):
        out += [(f"simple{nv}_{i}", g) for i, g in enumerate(connected_simple_graphs(nv))]
    for nv in (2, 3):
        out += [(f"multi{nv}_{i}", g) for i, g in enumerate(connected_multigraphs(nv, 2, loops=True))
                if g.m <= 9]
    out += [(f"multi4_{i}", g) for i, g in enumerate(connected_multigraphs(4, 2)) if g.m <= 9]
    out += [(f"random{i}", g) for i, g in enumerate(random_min_degree3_multigraphs(60, seed=7,
                                                                                 max_edges=12))]
    return out


def series_parallel_graphs(count=40, seed=3, max_edges=10):
    """Seeded graphs grown from one edge by subdividing or doubling edges."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        nv = 2
        edges = [(0, 1)]
        target = rng.randint(2, max_edges)
        while len(edges) < target:
            i = rng.randrange(len(edges))
            u, v = edges[i]
            if rng.random() < 0.5:
                edges.append((u, v))
            else:
                edges[i] = (u, nv)
                edges.append((nv, v))
                nv += 1
        out.append(MultiGraph(nv, tuple(edges)))
    return out


def binary_catalog(max_n=10):
    """Graphic matroids: every connected simple graph on <= 5 vertices, the
    3-prism, the wheel W4 and seeded series-parallel multigraphs."""
    out = []
    for nv in (2, 3, 4, 5):
        for i, g in enumerate(connected_simple_graphs(nv)):
            if g.m <= max_n:
                out.append((f"M(simple{nv}_{i})", make_graphic(g)))
    for name in ("prism(3)", "wheel(4)"):
        g = named_graph(name)
        if g.m <= max_n:
            out.append((f"M({name})", make_graphic(g)))
    for i, g in enumerate(series_parallel_graphs(max_edges=max_n)):
        out.append((f"M(sp{i})", make_graphic(g)))
    return out


def lattice_path_bounds(n, rng):
    """Random pair of bounding paths of length n with the upper weakly above the lower."""
    while True:
        k = rng.randint(1, n - 1)
        a = sorted(rng.sample(range(n), k))
        b = sorted(rng.sample(range(n), k))
        lo = [min(x, y) for x, y in zip(a, b)]
        hi = [max(x, y) for x, y in zip(a, b)]
        if len(set(lo)) == k and len(set(hi)) == k:
            upper = "".join("N" if i in lo else "E" for i in range(n))
            lower = "".join("N" if i in hi else "E" for i in range(n))
            return upper, lower


def lattice_path_sample(count=30, seed=1, min_n=2, max_n=8, loop_coloop_free=True):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_n, max_n)
        upper, lower = lattice_path_bounds(n, rng)
        m = make_lattice_path(upper, lower)
        if loop_coloop_free and (m.loops() or m.coloops()):
            continue
        out.append(((upper, lower), m))
    return out


def matroid_catalog(max_n=10):
    """(name, matroid) pairs on at most max_n elements covering every provenance."""
    from .bicircular import make_bicircular
    out = []
    for n in range(1, min(max_n, 7) + 1):
        for r in range(0, n + 1):
            out.append((f"U_{{{r},{n}}}", make_uniform(r, n)))
    for name, g in graph_catalog():
        if g.m <= max_n and (name in NAMED or name.startswith(("simple4", "multi3", "random"))):
            out.append((f"B({name})", make_bicircular(g)))
            if name in NAMED or name.startswith("simple4"):
                out.append((f"M({name})", make_graphic(g)))
    for i, ((u, l), m) in enumerate(lattice_path_sample(12, seed=5, max_n=min(max_n, 8),
                                                        loop_coloop_free=False)):
        out.append((f"LPM[{u},{l}]", m))
    for name, m in list(out):
        if name.startswith(("B(", "LPM")) and m.n <= max_n and len(out) < 400:
            out.append((f"({name})*", DualMatroid(m)))
    return [(name, m) for name, m in out if m.n <= max_n]
