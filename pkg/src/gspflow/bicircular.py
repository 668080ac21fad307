"""Bicircular matroids: edge sets whose components each carry at most one cycle."""

import logging
from dataclasses import dataclass
from itertools import product

from .bits import elements, mask_of, popcount
from .doublecirc import circuit_partition, is_double_circuit
from .errors import InputError, InvariantError, PreconditionError, ResourceCapError
from .graphs import MultiGraph, maximal_path, subdivision_structure
from .matroid import (Matroid, canonical_key, circuits, generic_circuits, is_cosimple,
                      is_isomorphic, make_uniform, require_cap)

log = logging.getLogger(__name__)

STRUCTURAL_CAP = 24
CYCLE_LIMIT = 200_000


class BicircularMatroid(Matroid):
    kind = "bicircular"
    cache_ranks = False

    def __init__(self, graph):
        super().__init__(graph.m)
        self.graph = graph
        self._ends = graph.edges
        self._nv = graph.vertex_count

    @property
    def matroid(self):
        return self

    def _rank(self, mask):
        # rank = unions performed + number of components that carry a cycle
        parent = list(range(self._nv))
        cyc = [False] * self._nv
        ends = self._ends
        r = 0
        while mask:
            low = mask & -mask
            u, v = ends[low.bit_length() - 1]
            mask ^= low
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u == v:
                if not cyc[u]:
                    cyc[u] = True
                    r += 1
            else:
                parent[u] = v
                r += 1
                if cyc[u] and cyc[v]:
                    r -= 1
                cyc[v] = cyc[u] or cyc[v]
        return r

    def coloops_within(self, mask):
        """Edges of ``mask`` on no bicycle inside ``mask``.

        An edge lies on a bicycle iff it survives repeated leaf stripping and
        its component of the stripped graph has more edges than vertices.
        """
        ends = self._ends
        deg = [0] * self._nv
        inc = {}
        for e in elements(mask):
            u, v = ends[e]
            deg[u] += 1
            deg[v] += 1
            inc.setdefault(u, []).append(e)
            if u != v:
                inc.setdefault(v, []).append(e)
        core = mask
        stack = [v for v in inc if deg[v] == 1]
        while stack:
            v = stack.pop()
            if deg[v] != 1:
                continue
            for e in inc[v]:
                if core >> e & 1:
                    core ^= 1 << e
                    a, b = ends[e]
                    w = b if a == v else a
                    deg[v] -= 1
                    deg[w] -= 1
                    if deg[w] == 1:
                        stack.append(w)
                    break
        keep = 0
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in elements(core):
            u, v = ends[e]
            parent[find(u)] = find(v)
        count = {}
        for e in elements(core):
            root = find(ends[e][0])
            ec, vc = count.get(root, (0, 0))
            count[root] = (ec + 1, vc)
        for v in parent:
            root = find(v)
            ec, vc = count.get(root, (0, 0))
            count[root] = (ec, vc + 1)
        for e in elements(core):
            ec, vc = count[find(ends[e][0])]
            if ec > vc:
                keep |= 1 << e
        return mask & ~keep

    def fast_circuits(self):
        if self.n > STRUCTURAL_CAP:
            return None
        return [b.edges for b in bicircular_circuits(self)]

    def describe(self):
        return f"B(G|V|={self.graph.vertex_count},|E|={self.graph.m})"

    def to_json(self):
        return {"n": self.n, "kind": "bicircular", "graph": self.graph.to_json()}


def make_bicircular(g):
    return BicircularMatroid(g)


@dataclass(frozen=True)
class Bicycle:
    edges: int
    shape: str


def _vertex_mask(g, mask):
    out = 0
    for e in elements(mask):
        u, v = g.edges[e]
        out |= (1 << u) | (1 << v)
    return out


def cycles(g, limit=CYCLE_LIMIT):
    """Edge masks of all cycles of g (loops and parallel pairs included)."""
    inc = g.incidence()
    out = set()
    for s in range(g.vertex_count):
        stack = [(s, 0, 1 << s)]
        while stack:
            x, used, seen = stack.pop()
            for e, y in inc[x]:
                if used >> e & 1:
                    continue
                if y == s:
                    if x != s or g.is_loop(e):
                        out.add(used | (1 << e))
                        if len(out) > limit:
                            raise ResourceCapError(f"more than {limit} cycles")
                elif y > s and not seen >> y & 1:
                    stack.append((y, used | (1 << e), seen | (1 << y)))
    return sorted(out, key=canonical_key)


def bicycle_shape(g, mask):
    sub = g.edge_subgraph(mask)
    deg = sub.degrees()
    branch = [v for v in range(g.vertex_count) if deg[v] >= 3]
    if len(branch) == 1:
        return "figure_eight"
    if len(branch) != 2:
        raise InvariantError(f"{mask:#x} is not a bicycle")
    for e in elements(mask):
        rest = mask & ~(1 << e)
        if len(g.components(rest)) > 1:
            return "dumbbell"
    return "theta"


def bicircular_circuits(b, cap=STRUCTURAL_CAP):
    """All bicycles of b.graph, found from pairs of cycles.

    Two cycles meeting in a vertex give a theta or figure eight when their
    union has one more edge than vertices; two disjoint cycles plus a path
    between them whose interior avoids both give a dumbbell.
    """
    g = b.graph
    require_cap(g.m, cap, "structural bicycle enumeration")
    cyc = cycles(g)
    vmask = [_vertex_mask(g, c) for c in cyc]
    inc = g.incidence()
    found = set()
    for i, (c1, v1) in enumerate(zip(cyc, vmask)):
        for c2, v2 in zip(cyc[i + 1:], vmask[i + 1:]):
            if v1 & v2:
                u = c1 | c2
                if popcount(u) == popcount(v1 | v2) + 1:
                    found.add(u)
                continue
            both = v1 | v2
            for a in elements(v1):
                stack = [(a, 0, 1 << a)]
                while stack:
                    x, path, seen = stack.pop()
                    for e, y in inc[x]:
                        if path >> e & 1 or (c1 | c2) >> e & 1:
                            continue
                        if v2 >> y & 1:
                            found.add(c1 | c2 | path | (1 << e))
                        elif not both >> y & 1 and not seen >> y & 1:
                            stack.append((y, path | (1 << e), seen | (1 << y)))
    return [Bicycle(m, bicycle_shape(g, m)) for m in sorted(found, key=canonical_key)]


@dataclass(frozen=True)
class SymDiffPair:
    c1: int
    c2: int
    method: str     # "construction" or "fallback"


def _construct_pair(b):
    g = b.graph
    seeds = [e for e in range(g.m) if not g.is_loop(e)]
    if not seeds:
        return None
    verts, pe = maximal_path(g, seeds[0])
    inc = g.incidence()
    v1, vk = verts[0], verts[-1]
    path = mask_of(pe)
    for ek, _ in sorted(inc[vk]):
        if ek == pe[-1]:
            continue
        base = path | (1 << ek)
        at_v1 = [e for e, _ in sorted(inc[v1]) if not base >> e & 1]
        if len(at_v1) < 2:
            continue
        c1, c2 = base | (1 << at_v1[0]), base | (1 << at_v1[1])
        if b.is_circuit(c1) and b.is_circuit(c2):
            return c1, c2
    return None


def _fallback_pair(b):
    circs = circuits(b) if b.n <= STRUCTURAL_CAP else generic_circuits(b, cap=b.n)
    cset = set(circs)
    for c in circs:
        for e in elements(c):
            for f in elements(b.full & ~c):
                d = (c & ~(1 << e)) | (1 << f)
                if d in cset:
                    return c, d
    return None


def symdiff2_circuit_pair(b):
    """Two circuits with symmetric difference of size two.

    Needs B(G) cosimple, which forces every non-isolated vertex to have
    degree at least 3 (the converse fails: B(theta(3)) = U_{2,3} has one
    circuit).  Uses a greedy maximal path v1..vk: an extra edge at vk and two
    further edges at v1 close it into two bicycles.  Falls back to a search
    over circuit pairs when no such choice exists.
    """
    g = b.graph
    if not is_cosimple(b):
        raise PreconditionError("B(G) is not cosimple")
    pair = _construct_pair(b)
    method = "construction"
    if pair is not None:
        log.info("maximal-path construction found a pair")
    else:
        method = "fallback"
        log.info("maximal-path construction unavailable on %s; searching circuit pairs",
                 g.to_edge_list().replace("\n", ";"))
        pair = _fallback_pair(b)
        if pair is None:
            raise InvariantError(f"no circuit pair with symmetric difference 2 in {g.to_json()}")
    c1, c2 = pair
    if not (b.is_circuit(c1) and b.is_circuit(c2) and popcount(c1 ^ c2) == 2):
        raise InvariantError("symmetric-difference pair failed verification")
    return SymDiffPair(c1, c2, method)


@dataclass(frozen=True)
class DCStructure:
    double_circuit: int
    distinguished: tuple
    subdivision_classes: tuple
    violations: tuple


def dc_structure(b, D):
    if not is_double_circuit(b, D):
        raise InputError(f"{D:#x} is not a double circuit")
    g = b.graph
    sub = g.edge_subgraph(D)
    deg = sub.degrees()
    violations = []
    if any(d == 1 for d in deg):
        violations.append("leaf present")
        return DCStructure(D, (), (), tuple(violations))
    distinguished = tuple(v for v in range(g.vertex_count) if deg[v] >= 3)
    if len(distinguished) > 4:
        violations.append(f"{len(distinguished)} distinguished vertices")
    st = subdivision_structure(g, D)
    classes = tuple(mask_of(c) for c in st.classes)
    part = circuit_partition(b, D).classes
    for c in classes:
        if not any(c & p == c for p in part):
            violations.append(f"subdivision class {c:#x} splits across circuit classes")
    return DCStructure(D, distinguished, classes, tuple(violations))


def cosimplicity_report(g):
    """(B(G) cosimple, min degree >= 3); the two can differ when G has loops."""
    degs = g.degrees()
    return is_cosimple(make_bicircular(g)), bool(degs) and min(degs) >= 3


# ------------------------------------------------------------ classification

def allowed_uniform(r, n):
    return r in (1, 2) or r == n or r == n - 1 or (r, n) in ((3, 5), (3, 6), (4, 6))


def _uniform_type(b):
    r = b.rank_total
    n = b.n
    for s in _k_subsets(n, r):
        if b.rank(s) != r:
            return None
    return r, n


def _k_subsets(n, k):
    from itertools import combinations
    for c in combinations(range(n), k):
        yield mask_of(c)


@dataclass(frozen=True)
class ClassificationReport:
    max_vertices: int
    graphs_checked: int
    uniform: tuple            # (MultiGraph, (r, n)) pairs
    violations: tuple         # entries of ``uniform`` outside the allowed list

    @property
    def types(self):
        return sorted({t for _, t in self.uniform})


def check_uniform_classification(max_vertices=5, max_mult=3, max_loops=2):
    """Every multigraph on at most ``max_vertices`` vertices (edge multiplicity
    <= max_mult, loops per vertex <= max_loops) with uniform B(G).

    Uniformity is closed under edge deletion, so the search grows graphs one
    edge at a time and only extends graphs that are still uniform.
    """
    if max_vertices > 6:
        raise ResourceCapError("classification sweep supports at most 6 vertices")
    nv = max_vertices
    slots = [(u, v) for u, v in product(range(nv), repeat=2) if u <= v]
    start = MultiGraph(nv, ())
    seen = {start.canonical_key()}
    frontier = [start]
    uniform = []
    checked = 1
    while frontier:
        nxt = []
        for g in frontier:
            t = _uniform_type(make_bicircular(g))
            if t is None:
                continue
            uniform.append((g, t))
            for u, v in slots:
                mult = sum(1 for e in g.edges if e == (u, v))
                if mult >= (max_loops if u == v else max_mult):
                    continue
                h = MultiGraph(nv, g.edges + ((u, v),))
                key = h.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                checked += 1
                nxt.append(h)
        frontier = nxt
    violations = tuple((g, t) for g, t in uniform if not allowed_uniform(*t))
    return ClassificationReport(max_vertices, checked, tuple(uniform), violations)


def bicircular_is(g, r, n):
    """Isomorphism witness between B(g) and U_{r,n}, or None."""
    return is_isomorphic(make_bicircular(g), make_uniform(r, n))
