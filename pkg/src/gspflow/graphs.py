"""Multigraphs with loops and parallel edges.

Edges are identified by their position in ``MultiGraph.edges``; a loop at v is
stored as (v, v) and contributes 2 to the degree of v.
"""

import json
import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, ParseError, PreconditionError

INF = math.inf


@dataclass(frozen=True)
class MultiGraph:
    vertex_count: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputError(f"edge ({u},{v}) has an endpoint outside 0..{self.vertex_count - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self):
        return len(self.edges)

    def degrees(self):
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def incidence(self):
        """vertex -> list of (edge_id, other_endpoint); a loop is listed once."""
        inc = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((i, v))
            if u != v:
                inc[v].append((i, u))
        return inc

    def is_loop(self, e):
        u, v = self.edges[e]
        return u == v

    def edge_subgraph(self, mask):
        """Sub-multigraph on the edges of ``mask`` (vertex ids unchanged)."""
        return MultiGraph(self.vertex_count,
                          tuple(e for i, e in enumerate(self.edges) if mask >> i & 1))

    def vertices_of(self, mask):
        vs = set()
        i = 0
        while mask:
            if mask & 1:
                vs.update(self.edges[i])
            mask >>= 1
            i += 1
        return vs

    def components(self, mask=None):
        """Connected components (as vertex sets) of the graph on the edges of
        ``mask``; vertices not touched by the mask are ignored."""
        if mask is None:
            mask = (1 << self.m) - 1
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        touched = set()
        for i, (u, v) in enumerate(self.edges):
            if mask >> i & 1:
                touched.add(u)
                touched.add(v)
                parent[find(u)] = find(v)
        comps = {}
        for v in sorted(touched):
            comps.setdefault(find(v), set()).add(v)
        return sorted(comps.values(), key=min)

    def is_connected(self):
        if self.vertex_count <= 1:
            return True
        comps = self.components()
        covered = set().union(*comps) if comps else set()
        return len(comps) == 1 and len(covered) == self.vertex_count

    def relabel(self, perm):
        """Apply the vertex permutation ``perm`` (old -> new)."""
        return MultiGraph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))

    def canonical_key(self):
        """Isomorphism-invariant key by brute force over vertex orders (small graphs only)."""
        from itertools import permutations
        best = None
        for perm in permutations(range(self.vertex_count)):
            key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in self.edges))
            if best is None or key < best:
                best = key
        return (self.vertex_count, best)

    def to_edge_list(self):
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def to_json(self):
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class GraphReport:
    girth: float
    min_degree: int
    is_connected: bool


@dataclass(frozen=True)
class SubdivisionStructure:
    classes: tuple           # tuple of edge-id tuples, each ordered along its path
    cycle_class: tuple       # parallel to classes: True for bare-cycle components
    suppressed: MultiGraph   # vertices are re-indexed branch vertices
    branch_vertices: tuple


# ---------------------------------------------------------------- parsing

def parse_graph(fmt, payload):
    if fmt in ("edge-list", "edgelist", "edges"):
        return parse_edge_list(payload)
    if fmt == "graph6":
        return parse_graph6(payload)
    if fmt == "json":
        return parse_json_graph(payload)
    raise InputError(f"unknown graph format {fmt!r}")


def parse_edge_list(text, vertex_count=None):
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {raw.strip()!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be non-negative", line=lineno)
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    if vertex_count is not None:
        n = max(n, vertex_count)
    return MultiGraph(n, tuple(edges))


def parse_json_graph(text):
    try:
        data = json.loads(text) if isinstance(text, str) else text
        edges = tuple(tuple(e) for e in data["edges"])
        n = data.get("vertices")
        if n is None:
            n = max((max(e) for e in edges), default=-1) + 1
        return MultiGraph(int(n), edges)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad JSON graph: {exc}") from None


def _graph6_size(data, offset):
    if not data:
        raise ParseError("empty graph6 record", offset=offset)
    for i, ch in enumerate(data):
        if not 63 <= ch <= 126:
            raise ParseError(f"byte {ch} outside the graph6 range 63..126", offset=offset + i)
    if data[0] < 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] < 126:
        if len(data) < 4:
            raise ParseError("truncated 18-bit vertex count", offset=offset + len(data))
        n = 0
        for ch in data[1:4]:
            n = (n << 6) | (ch - 63)
        return n, 4
    if len(data) < 8:
        raise ParseError("truncated 36-bit vertex count", offset=offset + len(data))
    n = 0
    for ch in data[2:8]:
        n = (n << 6) | (ch - 63)
    return n, 8


def parse_graph6(text):
    """Decode one graph6 record (simple graph).  Edge ids follow bit order:
    column j = 1..n-1, row i = 0..j-1."""
    s = text.strip()
    header = ">>graph6<<"
    base = 0
    if s.startswith(header):
        s = s[len(header):]
        base = len(header)
    if s.startswith(":") or s.startswith("&"):
        raise ParseError("sparse6/digraph6 records are not graph6", offset=base)
    data = s.encode("ascii", errors="replace")
    n, used = _graph6_size(data, base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[used:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}",
                         offset=base + used + min(len(body), need))
    bits = []
    for ch in body:
        x = ch - 63
        for k in range(5, -1, -1):
            bits.append((x >> k) & 1)
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits in graph6 record", offset=base + len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return MultiGraph(n, tuple(edges))


def to_graph6(g):
    n = g.vertex_count
    adj = set()
    for u, v in g.edges:
        if u == v:
            raise InputError("graph6 cannot encode loops")
        key = (min(u, v), max(u, v))
        if key in adj:
            raise InputError("graph6 cannot encode parallel edges")
        adj.add(key)
    if n < 63:
        out = [n + 63]
    elif n < 258048:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(x + 63)
    return bytes(out).decode("ascii")


# ---------------------------------------------------------------- measures

def girth(g):
    if any(u == v for u, v in g.edges):
        return 1
    seen = set()
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            return 2
        seen.add(key)
    adj = [[] for _ in range(g.vertex_count)]
    for i, (u, v) in enumerate(g.edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    best = INF
    for root in range(g.vertex_count):
        dist = {root: 0}
        via = {root: None}
        q = deque([root])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y, e in adj[x]:
                if e == via[x]:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = e
                    q.append(y)
                else:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def graph_report(g):
    degs = g.degrees()
    return GraphReport(girth(g), min(degs) if degs else 0, g.is_connected())


def maximal_path(g, seed_edge):
    """Greedy non-extendable path through ``seed_edge``.

    Returns ``(vertices, edges)`` with ``edges[i]`` joining ``vertices[i]`` and
    ``vertices[i+1]``.  Both ends are extended with the smallest-id edge to a
    vertex not yet on the path, until neither end can move.
    """
    u, v = g.edges[seed_edge]
    if u == v:
        raise InputError(f"seed edge {seed_edge} is a loop")
    inc = g.incidence()
    verts = deque([u, v])
    path_edges = deque([seed_edge])
    on_path = {u, v}

    def step(end):
        for e, w in sorted(inc[end]):
            if w != end and w not in on_path:
                return e, w
        return None

    grown = True
    while grown:
        grown = False
        nxt = step(verts[-1])
        if nxt:
            e, w = nxt
            verts.append(w)
            path_edges.append(e)
            on_path.add(w)
            grown = True
        nxt = step(verts[0])
        if nxt:
            e, w = nxt
            verts.appendleft(w)
            path_edges.appendleft(e)
            on_path.add(w)
            grown = True
    return list(verts), list(path_edges)


def subdivision_structure(g, mask=None):
    """Split the edges of a leafless graph into subdivision classes."""
    sub = g if mask is None else g.edge_subgraph(mask)
    ids = list(range(g.m)) if mask is None else [i for i in range(g.m) if mask >> i & 1]
    deg = sub.degrees()
    if any(d == 1 for d in deg):
        leaf = deg.index(1)
        raise PreconditionError(f"vertex {leaf} is a leaf; subdivision classes need a leafless graph")
    inc = sub.incidence()
    branch = tuple(v for v in range(sub.vertex_count) if deg[v] >= 3)
    used = [False] * sub.m
    classes, cyc, ends = [], [], []

    def walk(start, e, w):
        path = [e]
        used[e] = True
        x = w
        while deg[x] == 2 and x != start:
            nxt = next(((f, y) for f, y in inc[x] if not used[f]), None)
            if nxt is None:
                break
            f, y = nxt
            used[f] = True
            path.append(f)
            x = y
        return path, x

    for b in branch:
        for e, w in sorted(inc[b]):
            if used[e]:
                continue
            path, end = walk(b, e, w)
            classes.append(tuple(path))
            cyc.append(False)
            ends.append((b, end))
    for e in range(sub.m):
        if used[e]:
            continue
        a, w = sub.edges[e]
        path, _ = walk(a, e, w)
        classes.append(tuple(path))
        cyc.append(True)
    index = {b: i for i, b in enumerate(branch)}
    suppressed = MultiGraph(len(branch), tuple((index[a], index[b]) for a, b in ends))
    classes = tuple(tuple(ids[i] for i in c) for c in classes)
    return SubdivisionStructure(classes, tuple(cyc), suppressed, branch)


# ---------------------------------------------------------------- constructions

def _kneser_petersen():
    verts = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2)
             if not set(verts[i]) & set(verts[j])]
    return MultiGraph(10, tuple(edges))


def _lcf(n, shifts):
    edges = {(i, (i + 1) % n) for i in range(n)}
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        edges.add((min(i, j), max(i, j)))
    norm = {(min(a, b), max(a, b)) for a, b in edges}
    return MultiGraph(n, tuple(sorted(norm)))


def complete_graph(k):
    return MultiGraph(k, tuple(combinations(range(k), 2)))


def cycle_graph(k):
    if k == 1:
        return MultiGraph(1, ((0, 0),))
    if k == 2:
        return MultiGraph(2, ((0, 1), (0, 1)))
    return MultiGraph(k, tuple((i, (i + 1) % k) if i + 1 < k else (0, k - 1) for i in range(k)))


def path_graph(k):
    return MultiGraph(k, tuple((i, i + 1) for i in range(k - 1)))


def prism_graph(k):
    outer = [(i, (i + 1) % k) for i in range(k)]
    inner = [(k + i, k + (i + 1) % k) for i in range(k)]
    spokes = [(i, k + i) for i in range(k)]
    return MultiGraph(2 * k, tuple(tuple(sorted(e)) for e in outer + inner + spokes))


def wheel_graph(k):
    rim = [(i, (i + 1) % k) for i in range(k)]
    spokes = [(i, k) for i in range(k)]
    return MultiGraph(k + 1, tuple(tuple(sorted(e)) for e in rim + spokes))


def _split_name(name):
    name = name.strip().lower()
    if "(" in name:
        base, arg = name.split("(", 1)
        arg = arg.rstrip(")")
        try:
            return base.strip(), int(arg)
        except ValueError:
            raise InputError(f"bad parameter in graph name {name!r}") from None
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if tail and head in ("theta", "bouquet", "parallel", "prism", "cycle", "path", "wheel", "k"):
        return head, int(tail)
    return name, None


def named_graph(name):
    """Canonical labeled constructions used throughout the test catalog."""
    base, k = _split_name(name)
    if base == "petersen":
        return _kneser_petersen()
    if base == "dodecahedron":
        return _lcf(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4])
    if base == "doubled_triangle":
        return MultiGraph(3, ((0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)))
    if base == "k" and k is None:
        raise InputError("complete graph needs a size, e.g. k4")
    if k is None:
        raise InputError(f"unknown graph name {name!r}")
    if k < 0:
        raise InputError("graph parameter must be non-negative")
    if base in ("theta", "parallel"):
        return MultiGraph(2, ((0, 1),) * k)
    if base == "bouquet":
        return MultiGraph(1, ((0, 0),) * k)
    if base == "k":
        return complete_graph(k)
    if base == "prism" and k >= 3:
        return prism_graph(k)
    if base == "cycle" and k >= 1:
        return cycle_graph(k)
    if base == "path" and k >= 1:
        return path_graph(k)
    if base == "wheel" and k >= 3:
        return wheel_graph(k)
    raise InputError(f"unknown graph name {name!r}")


NAMED_GRAPHS = ("petersen", "dodecahedron", "k4", "theta(k)", "bouquet(k)",
                "doubled_triangle", "parallel(k)", "prism(k)", "k(n)", "cycle(k)",
                "path(k)", "wheel(k)")
