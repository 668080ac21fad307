"""Matroids given by rank oracles over bitmask-encoded subsets.

Ground sets are {0, ..., n-1} with n <= 64.  Everything else (circuits, flats,
duals, minors, clones, isomorphism) is derived from ``Matroid.rank``; concrete
subclasses may override the derived methods with faster equivalents.
"""

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

from .bits import compress, elements, expand, mask_of, popcount, subsets_of_size, swap_bits
from .errors import InputError, PreconditionError, ResourceCapError
from .intlattice import bareiss_rank, _integer_rows, _as_rows

MAX_GROUND = 64


def canonical_key(mask):
    """Sort key for subsets: by size, then lexicographically by elements."""
    return (popcount(mask), elements(mask))


def require_cap(n, cap, what):
    if n > cap:
        raise ResourceCapError(f"{what}: ground set of {n} elements exceeds cap {cap}")


class Matroid:
    kind = "abstract"
    cache_ranks = True

    def __init__(self, n):
        if n < 0:
            raise InputError("ground set size must be non-negative")
        require_cap(n, MAX_GROUND, "matroid")
        self.n = n
        self.full = (1 << n) - 1
        self._rank_cache = {}

    def _rank(self, mask):
        raise NotImplementedError

    def rank(self, mask):
        if not self.cache_ranks:
            return self._rank(mask)
        r = self._rank_cache.get(mask)
        if r is None:
            if len(self._rank_cache) > 1 << 20:
                self._rank_cache.clear()
            r = self._rank_cache[mask] = self._rank(mask)
        return r

    @cached_property
    def rank_total(self):
        return self.rank(self.full)

    @property
    def corank(self):
        return self.n - self.rank_total

    def is_independent(self, mask):
        return self.rank(mask) == popcount(mask)

    def is_circuit(self, mask):
        k = popcount(mask)
        if k == 0 or self.rank(mask) != k - 1:
            return False
        return all(self.rank(mask ^ (1 << x)) == k - 1 for x in elements(mask))

    def closure(self, mask):
        r = self.rank(mask)
        out = mask
        for x in elements(self.full & ~mask):
            if self.rank(mask | (1 << x)) == r:
                out |= 1 << x
        return out

    def coloops_within(self, mask):
        """Elements of ``mask`` that are coloops of the restriction to ``mask``."""
        r = self.rank(mask)
        out = 0
        for x in elements(mask):
            if self.rank(mask ^ (1 << x)) < r:
                out |= 1 << x
        return out

    def loops(self):
        return mask_of(x for x in range(self.n) if self.rank(1 << x) == 0)

    def coloops(self):
        return self.coloops_within(self.full)

    def dual(self):
        return DualMatroid(self)

    def minor(self, delete=0, contract=0):
        return minor(self, delete, contract)

    def fast_circuits(self):
        """Provenance-specific circuit enumeration, or None."""
        return None

    def describe(self):
        return self.kind

    def to_json(self):
        raise InputError(f"{self.kind} matroids have no JSON form")

    def __repr__(self):
        return f"<{self.describe()} n={self.n} r={self.rank_total}>"


class UniformMatroid(Matroid):
    kind = "uniform"
    cache_ranks = False

    def __init__(self, r, n):
        super().__init__(n)
        if not 0 <= r <= n:
            raise InputError(f"U_{{{r},{n}}} needs 0 <= r <= n")
        self.r = r

    def _rank(self, mask):
        return min(popcount(mask), self.r)

    def coloops_within(self, mask):
        return mask if popcount(mask) <= self.r else 0

    def describe(self):
        return f"U_{{{self.r},{self.n}}}"

    def to_json(self):
        return {"n": self.n, "kind": "uniform", "r": self.r}


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, k):
        self.parent = list(range(k))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x


class GraphicMatroid(Matroid):
    kind = "graphic"
    cache_ranks = False

    def __init__(self, graph):
        super().__init__(graph.m)
        self.graph = graph
        self._ends = graph.edges

    def _rank(self, mask):
        uf = _UnionFind(self.graph.vertex_count)
        r = 0
        ends = self._ends
        while mask:
            low = mask & -mask
            u, v = ends[low.bit_length() - 1]
            mask ^= low
            a, b = uf.find(u), uf.find(v)
            if a != b:
                uf.parent[a] = b
                r += 1
        return r

    def describe(self):
        return f"M(G|V|={self.graph.vertex_count},|E|={self.graph.m})"

    def to_json(self):
        return {"n": self.n, "kind": "graphic", "graph": self.graph.to_json()}


def _parse_steps(steps):
    s = steps.strip().upper()
    if not s or any(c not in "NE" for c in s):
        raise InputError(f"lattice path {steps!r} must be a nonempty string over N/E")
    return s


class LatticePathMatroid(Matroid):
    """Lattice path matroid between an upper and a lower bounding path.

    Element i is step i (0-based).  North step j of the upper path sits at
    position lo[j], of the lower path at hi[j]; bases are the transversals of
    the intervals [lo[j], hi[j]].
    """

    kind = "lattice_path"
    cache_ranks = False

    def __init__(self, upper, lower):
        upper, lower = _parse_steps(upper), _parse_steps(lower)
        if len(upper) != len(lower):
            raise InputError("bounding paths must have the same length")
        if upper.count("N") != lower.count("N"):
            raise InputError("bounding paths must have the same number of north steps")
        a = b = 0
        for i, (cu, cl) in enumerate(zip(upper, lower)):
            a += cu == "N"
            b += cl == "N"
            if a < b:
                raise InputError(f"upper path drops below the lower path at step {i + 1}")
        super().__init__(len(upper))
        self.upper, self.lower = upper, lower
        self.lo = tuple(i for i, c in enumerate(upper) if c == "N")
        self.hi = tuple(i for i, c in enumerate(lower) if c == "N")

    @property
    def intervals(self):
        return tuple(zip(self.lo, self.hi))

    def _rank(self, mask):
        lo, hi = self.lo, self.hi
        k = len(lo)
        ptr = 0
        r = 0
        while mask:
            low = mask & -mask
            x = low.bit_length() - 1
            mask ^= low
            while ptr < k and hi[ptr] < x:
                ptr += 1
            if ptr < k and lo[ptr] <= x:
                ptr += 1
                r += 1
        return r

    def bases_by_paths(self):
        """Bases enumerated directly from the bounded lattice paths (test oracle)."""
        out = []
        n = self.n
        up = [0]
        dn = [0]
        for cu, cl in zip(self.upper, self.lower):
            up.append(up[-1] + (cu == "N"))
            dn.append(dn[-1] + (cl == "N"))

        def go(i, norths, mask):
            if i == n:
                out.append(mask)
                return
            for step in (0, 1):
                h = norths + step
                if dn[i + 1] <= h <= up[i + 1]:
                    go(i + 1, h, mask | (step << i))

        go(0, 0, 0)
        return sorted(out)

    def describe(self):
        return f"LPM[{self.upper},{self.lower}]"

    def to_json(self):
        return {"n": self.n, "kind": "lattice_path", "upper": self.upper, "lower": self.lower}


class DualMatroid(Matroid):
    kind = "dual"

    def __init__(self, base):
        super().__init__(base.n)
        self.base = base
        self.cache_ranks = base.cache_ranks

    def _rank(self, mask):
        b = self.base
        return popcount(mask) + b.rank(self.full & ~mask) - b.rank_total

    def closure(self, mask):
        # x joins cl*(S) iff x is a coloop of the base restricted to E - S
        return mask | self.base.coloops_within(self.full & ~mask)

    def coloops_within(self, mask):
        return mask & self.base.closure(self.full & ~mask)

    def dual(self):
        return self.base

    def describe(self):
        return f"({self.base.describe()})*"

    def to_json(self):
        return {"n": self.n, "kind": "dual", "of": self.base.to_json()}


class MinorMatroid(Matroid):
    """``base \\ delete / contract`` re-indexed onto the surviving elements."""

    kind = "minor"

    def __init__(self, base, delete, contract):
        if delete & contract:
            raise InputError("delete and contract sets overlap")
        if (delete | contract) & ~base.full:
            raise InputError("minor sets are outside the ground set")
        self.keep = base.full & ~(delete | contract)
        super().__init__(popcount(self.keep))
        self.base = base
        self.delete = delete
        self.contract = contract
        self.elements = tuple(elements(self.keep))
        self._rc = base.rank(contract)
        self.cache_ranks = base.cache_ranks

    def lift(self, mask):
        return expand(mask, self.keep)

    def _rank(self, mask):
        return self.base.rank(expand(mask, self.keep) | self.contract) - self._rc

    def describe(self):
        return f"{self.base.describe()}\\{self.delete:#x}/{self.contract:#x}"

    def to_json(self):
        return {"n": self.n, "kind": "minor", "of": self.base.to_json(),
                "delete": self.delete, "contract": self.contract}


class ExplicitMatroid(Matroid):
    kind = "explicit_bases"

    def __init__(self, n, bases):
        super().__init__(n)
        bases = sorted(set(int(b) for b in bases))
        if not bases:
            raise InputError("a matroid needs at least one basis")
        sizes = {popcount(b) for b in bases}
        if len(sizes) != 1:
            raise InputError("all bases must have the same size")
        if any(b & ~self.full for b in bases):
            raise InputError("basis mask outside the ground set")
        self.bases = tuple(bases)

    def _rank(self, mask):
        return max(popcount(mask & b) for b in self.bases)

    def to_json(self):
        return {"n": self.n, "kind": "explicit_bases", "bases": list(self.bases)}


class LinearMatroid(Matroid):
    """Column matroid of a rational matrix (rank by exact Bareiss elimination)."""

    kind = "linear"

    def __init__(self, matrix):
        rows = _as_rows(matrix)
        ncols = len(rows[0]) if rows else 0
        super().__init__(ncols)
        self.matrix = matrix
        self._int_rows = _integer_rows(rows)

    def _rank(self, mask):
        cols = elements(mask)
        if not cols:
            return 0
        return bareiss_rank([[r[j] for j in cols] for r in self._int_rows])

    def to_json(self):
        return {"n": self.n, "kind": "linear",
                "matrix": [[str(x) for x in r] for r in _as_rows(self.matrix)]}


# ---------------------------------------------------------------- constructors

def make_uniform(r, n):
    return UniformMatroid(r, n)


def make_graphic(g):
    return GraphicMatroid(g)


def make_lattice_path(upper, lower):
    return LatticePathMatroid(upper, lower)


def dual(m):
    return m.dual()


def minor(m, delete=0, contract=0):
    if delete & contract:
        raise InputError("delete and contract sets overlap")
    if not delete and not contract:
        return m
    return MinorMatroid(m, delete, contract)


def check_rank_axioms(m, samples=200, seed=0):
    """Spot-check the rank axioms on random subsets; raises InputError."""
    if m.rank(0) != 0:
        raise InputError("rank of the empty set must be 0")
    if m.n == 0:
        return
    rng = random.Random(seed)
    for _ in range(samples):
        a = rng.getrandbits(m.n)
        b = rng.getrandbits(m.n)
        x = rng.randrange(m.n)
        ra = m.rank(a)
        rax = m.rank(a | (1 << x))
        if not ra <= rax <= ra + 1:
            raise InputError(f"rank is not unit-increasing at {a:#x} + {x}")
        if ra > popcount(a):
            raise InputError(f"rank exceeds cardinality at {a:#x}")
        if m.rank(a | b) + m.rank(a & b) > ra + m.rank(b):
            raise InputError(f"rank is not submodular at {a:#x}, {b:#x}")


def matroid_from_json(data):
    """Build a matroid from its JSON description and spot-check the rank axioms."""
    from .graphs import parse_json_graph
    if not isinstance(data, dict):
        raise InputError("matroid JSON must be an object")
    kind = data.get("kind")
    if kind is None and "bases" in data:
        kind = "explicit_bases"
    try:
        if kind == "uniform":
            m = UniformMatroid(int(data["r"]), int(data["n"]))
        elif kind == "graphic":
            m = GraphicMatroid(parse_json_graph(data["graph"]))
        elif kind == "bicircular":
            from .bicircular import make_bicircular
            m = make_bicircular(parse_json_graph(data["graph"]))
        elif kind == "lattice_path":
            m = LatticePathMatroid(data["upper"], data["lower"])
        elif kind == "dual":
            m = DualMatroid(matroid_from_json(data["of"]))
        elif kind == "minor":
            m = MinorMatroid(matroid_from_json(data["of"]), int(data.get("delete", 0)),
                             int(data.get("contract", 0)))
        elif kind == "explicit_bases":
            m = ExplicitMatroid(int(data["n"]), data["bases"])
        elif kind == "linear":
            from fractions import Fraction
            m = LinearMatroid([[Fraction(x) for x in r] for r in data["matrix"]])
        else:
            raise InputError(f"unknown matroid kind {kind!r}")
    except KeyError as exc:
        raise InputError(f"matroid JSON missing field {exc}") from None
    if "n" in data and int(data["n"]) != m.n:
        raise InputError(f"declared n={data['n']} but construction has {m.n} elements")
    check_rank_axioms(m)
    return m


# ---------------------------------------------------------------- enumeration

def independent_sets_of_size(m, k, universe=None):
    """Independent k-subsets of ``universe`` by depth-first search, lexicographic."""
    if universe is None:
        universe = m.full
    els = elements(universe)
    total = len(els)

    def go(start, depth, mask):
        if depth == k:
            yield mask
            return
        for j in range(start, total - (k - depth) + 1):
            nm = mask | (1 << els[j])
            if m.rank(nm) == depth + 1:
                yield from go(j + 1, depth + 1, nm)

    if k < 0 or k > total:
        return iter(())
    return go(0, 0, 0)


def generic_circuits(m, cap=20):
    require_cap(m.n, cap, "circuit enumeration")
    found = []
    r = m.rank_total
    for k in range(1, min(r + 1, m.n) + 1):
        for s in subsets_of_size(m.full, k):
            if m.rank(s) != k - 1:
                continue
            if all(m.rank(s ^ (1 << x)) == k - 1 for x in elements(s)):
                found.append(s)
    found.sort(key=canonical_key)
    return found


def circuits(m, cap=20, generic=False):
    """All circuits as masks, sorted by size then lexicographically."""
    if not generic:
        cached = getattr(m, "_circuits", None)
        if cached is not None:
            return list(cached)
        fast = m.fast_circuits()
        if fast is not None:
            m._circuits = tuple(sorted(fast, key=canonical_key))
            return list(m._circuits)
    out = generic_circuits(m, cap)
    if not generic:
        m._circuits = tuple(out)
    return out


@dataclass(frozen=True)
class Flat:
    elements: int
    rank: int


def flats_of_corank(m, k):
    if k not in (1, 2):
        raise InputError("only copoints (k=1) and colines (k=2) are supported")
    r = m.rank_total
    if r < k:
        raise PreconditionError(f"rank {r} is smaller than the requested corank {k}")
    seen = set()
    for s in independent_sets_of_size(m, r - k):
        seen.add(m.closure(s))
    return [Flat(f, r - k) for f in sorted(seen, key=canonical_key)]


def copoints(m):
    return flats_of_corank(m, 1)


def colines(m):
    return flats_of_corank(m, 2)


@dataclass(frozen=True)
class ColineReport:
    coline: int
    copoint_classes: tuple
    degree: int
    singular_count: int
    multiple_count: int
    positive: bool

    def to_json(self):
        return {"L": self.coline, "classes": list(self.copoint_classes), "degree": self.degree,
                "singular": self.singular_count, "multiple": self.multiple_count,
                "positive": self.positive}


def census(classes):
    singular = sum(1 for c in classes if popcount(c) == 1)
    return singular, len(classes) - singular


def coline_report(m, L):
    if isinstance(L, Flat):
        L = L.elements
    if m.rank(L) != m.rank_total - 2 or m.closure(L) != L:
        raise InputError(f"{L:#x} is not a coline")
    groups = {}
    for x in elements(m.full & ~L):
        key = m.closure(L | (1 << x))
        groups[key] = groups.get(key, 0) | 1 << x
    classes = tuple(sorted(groups.values(), key=lambda c: elements(c)[0]))
    s, mult = census(classes)
    return ColineReport(L, classes, len(classes), s, mult, s > mult)


class SeriesClass(NamedTuple):
    members: int
    coloop: bool


def series_classes(m):
    r = m.rank_total
    col = m.coloops()
    out = []
    assigned = 0
    for e in range(m.n):
        if assigned >> e & 1:
            continue
        if col >> e & 1:
            out.append(SeriesClass(1 << e, True))
            assigned |= 1 << e
            continue
        cls = 1 << e
        for f in range(e + 1, m.n):
            if (assigned | col) >> f & 1:
                continue
            if m.rank(m.full & ~((1 << e) | (1 << f))) == r - 1:
                cls |= 1 << f
        assigned |= cls
        out.append(SeriesClass(cls, False))
    return out


def parallel_classes(m):
    loops = m.loops()
    out = []
    assigned = loops
    for e in range(m.n):
        if assigned >> e & 1:
            continue
        cls = 1 << e
        for f in range(e + 1, m.n):
            if not assigned >> f & 1 and m.rank((1 << e) | (1 << f)) == 1:
                cls |= 1 << f
        assigned |= cls
        out.append(cls)
    return loops, out


def simplify(m):
    """Delete loops and all but the smallest element of each parallel class.

    Returns ``(minor, element_map)``; the map sends every original element to
    its surviving representative (None for deleted loops).
    """
    loops, classes = parallel_classes(m)
    delete = loops
    emap = {x: None for x in elements(loops)}
    for cls in classes:
        rep = elements(cls)[0]
        for x in elements(cls):
            emap[x] = rep
        delete |= cls & ~(1 << rep)
    return minor(m, delete=delete), emap


def cosimplify(m):
    """Contract coloops and all but the smallest element of each series class."""
    contract = 0
    emap = {}
    for cls in series_classes(m):
        if cls.coloop:
            contract |= cls.members
            emap[elements(cls.members)[0]] = None
            continue
        rep = elements(cls.members)[0]
        for x in elements(cls.members):
            emap[x] = rep
        contract |= cls.members & ~(1 << rep)
    return minor(m, contract=contract), emap


def is_simple(m):
    loops, classes = parallel_classes(m)
    return loops == 0 and all(popcount(c) == 1 for c in classes)


def is_cosimple(m):
    return all(not c.coloop and popcount(c.members) == 1 for c in series_classes(m))


# ---------------------------------------------------------------- isomorphism

def _element_profiles(n, circs):
    prof = [Counter() for _ in range(n)]
    for c in circs:
        k = popcount(c)
        for x in elements(c):
            prof[x][k] += 1
    return [tuple(sorted(p.items())) for p in prof]


def fingerprint(m, cap=12):
    circs = circuits(m, cap=max(cap, 12))
    return (m.n, m.rank_total, tuple(sorted(Counter(popcount(c) for c in circs).items())),
            tuple(sorted(_element_profiles(m.n, circs))))


def family_isomorphism(n, fam_a, fam_b):
    """Bijection mapping circuit family ``fam_a`` onto ``fam_b`` (both on n elements)."""
    if len(fam_a) != len(fam_b):
        return None
    pa = _element_profiles(n, fam_a)
    pb = _element_profiles(n, fam_b)
    if sorted(pa) != sorted(pb):
        return None
    set_b = set(fam_b)
    freq = Counter(pa)
    order = sorted(range(n), key=lambda x: (freq[pa[x]], pa[x], x))
    pos = {x: i for i, x in enumerate(order)}
    closing = defaultdict(list)
    for c in fam_a:
        closing[max(pos[x] for x in elements(c))].append(c)
    phi = {}
    used = set()

    def image(c):
        out = 0
        for x in elements(c):
            out |= 1 << phi[x]
        return out

    def go(i):
        if i == n:
            return True
        x = order[i]
        for y in range(n):
            if y in used or pb[y] != pa[x]:
                continue
            phi[x] = y
            used.add(y)
            if all(image(c) in set_b for c in closing[i]) and go(i + 1):
                return True
            used.discard(y)
            del phi[x]
        return False

    return dict(phi) if go(0) else None


def is_isomorphic(a, b, cap=12):
    """Witness bijection (element of a -> element of b) or None."""
    require_cap(max(a.n, b.n), cap, "isomorphism test")
    if a.n != b.n or a.rank_total != b.rank_total:
        return None
    return family_isomorphism(a.n, circuits(a), circuits(b))


_MK4 = None


def _mk4():
    global _MK4
    if _MK4 is None:
        from .graphs import complete_graph
        _MK4 = GraphicMatroid(complete_graph(4))
    return _MK4


def has_mk4_minor(m, cap=14):
    """(delete, contract) masks of an M(K4) minor, or None.

    Contraction sets are independent sets of size 0..r-3 in lexicographic
    order; for each, 6-element sets of rank 3 in the contraction are screened
    (simple, exactly four 3-point lines) and then verified by isomorphism.
    """
    require_cap(m.n, cap, "M(K4)-minor search")
    r = m.rank_total
    if r < 3 or m.corank < 3:
        return None
    target = _mk4()
    for c_size in range(0, r - 2):
        for C in independent_sets_of_size(m, c_size):
            rc = m.rank(C)
            rest = m.full & ~C
            good = [x for x in elements(rest) if m.rank(C | (1 << x)) == rc + 1]
            if len(good) < 6:
                continue
            for K in combinations(good, 6):
                km = mask_of(K)
                if m.rank(C | km) - rc != 3:
                    continue
                if any(m.rank(C | (1 << a) | (1 << b)) - rc < 2 for a, b in combinations(K, 2)):
                    continue
                lines = sum(1 for t in combinations(K, 3) if m.rank(C | mask_of(t)) - rc == 2)
                if lines != 4:
                    continue
                delete = rest & ~km
                if is_isomorphic(MinorMatroid(m, delete, C), target) is not None:
                    return delete, C
    return None


has_M_K4_minor = has_mk4_minor


# ---------------------------------------------------------------- clones

def contract_family(fam, C):
    """Circuits of M/C from the circuits of M: minimal nonempty sets X - C."""
    cand = sorted({x & ~C for x in fam if x & ~C}, key=popcount)
    out = []
    for x in cand:
        if not any(y & x == y for y in out):
            out.append(x)
    return out


def delete_family(fam, D):
    return [x for x in fam if not x & D]


def family_clone_pairs(fam, ground):
    """Pairs (e, f) in ``ground`` whose transposition preserves ``fam``."""
    fset = set(fam)
    els = elements(ground)
    sig = {x: Counter() for x in els}
    for c in fam:
        k = popcount(c)
        for x in elements(c):
            sig[x][k] += 1
    out = []
    for e, f in combinations(els, 2):
        if sig[e] != sig[f]:
            continue
        bit = (1 << e) | (1 << f)
        if all(swap_bits(c, e, f) in fset for c in fam if popcount(c & bit) == 1):
            out.append((e, f))
    return out


def has_clone_pair(fam, ground):
    fset = set(fam)
    els = elements(ground)
    sig = {x: Counter() for x in els}
    for c in fam:
        k = popcount(c)
        for x in elements(c):
            sig[x][k] += 1
    for e, f in combinations(els, 2):
        if sig[e] != sig[f]:
            continue
        bit = (1 << e) | (1 << f)
        if all(swap_bits(c, e, f) in fset for c in fam if popcount(c & bit) == 1):
            return True
    return False


def clone_pairs(m, cap=20):
    require_cap(m.n, cap, "clone search")
    return family_clone_pairs(circuits(m, cap=cap), m.full)


def clone_reduction_order(m, cap=16, strict=False):
    """Ordering e_1..e_k in which every e_i (i >= 2) has a clone in the
    restriction to {e_1..e_i}, or None.

    Found by backtracking: delete an element having a clone in the current
    restriction (smallest id first) and recurse; the ordering is the reverse
    deletion order.  Unless ``strict``, loops and coloops are set aside first
    and the ordering covers the remaining elements only, matching
    ``is_clone_reducible_exhaustive``.
    """
    require_cap(m.n, cap, "clone reduction")
    fam = circuits(m, cap=max(cap, 20))
    start = m.full
    if not strict:
        start &= ~(m.loops() | m.coloops())
        fam = [c for c in fam if c & start == c]
    failed = set()

    def go(S):
        if popcount(S) <= 1:
            return elements(S)
        if S in failed:
            return None
        sub = [c for c in fam if c & S == c]
        cand = sorted({x for pair in family_clone_pairs(sub, S) for x in pair})
        for e in cand:
            rest = go(S & ~(1 << e))
            if rest is not None:
                return rest + [e]
        failed.add(S)
        return None

    return go(start)


def _relabel_family(fam, ground):
    return popcount(ground), frozenset(compress(c, ground) for c in fam)


def clone_free_minor(m, cap=10, strict=False):
    """(delete, contract) of a minor with >= 2 elements and no clone pair, or None.

    Walks every minor M \\ D / C.  Circuit families of minors are derived from
    the circuits of M; identical relabeled families are tested once.  Unless
    ``strict``, minors having a loop or a coloop are skipped: a loop next to a
    coloop never forms a clone pair, so the literal reading would reject even
    a triangle with a pendant edge.
    """
    require_cap(m.n, cap, "exhaustive clone reducibility")
    fam = circuits(m, cap=max(cap, 20))
    by_contract = {0: fam}
    verdict = {}
    for C in range(m.full + 1):
        if C:
            top = C.bit_length() - 1
            by_contract[C] = contract_family(by_contract[C ^ (1 << top)], 1 << top)
        fc = by_contract[C]
        rest = m.full & ~C
        els = elements(rest)
        for bits in range(1 << len(els)):
            D = 0
            for j, x in enumerate(els):
                if bits >> j & 1:
                    D |= 1 << x
            ground = rest & ~D
            if popcount(ground) < 2:
                continue
            sub = delete_family(fc, D)
            if not strict and not _loop_coloop_free(sub, ground):
                continue
            key = _relabel_family(sub, ground)
            ok = verdict.get(key)
            if ok is None:
                ok = verdict[key] = has_clone_pair(sub, ground)
            if not ok:
                return D, C
    return None


def _loop_coloop_free(fam, ground):
    covered = 0
    for c in fam:
        if popcount(c) == 1:
            return False
        covered |= c
    return covered == ground


def is_clone_reducible_exhaustive(m, cap=10, strict=False):
    return clone_free_minor(m, cap, strict) is None


def relabel(m, perm):
    """Matroid with element x renamed perm[x] (perm a permutation list)."""
    return ExplicitMatroid(m.n, [mask_of(perm[x] for x in elements(b)) for b in bases(m)])


def bases(m):
    return list(independent_sets_of_size(m, m.rank_total))


def rank_table(m):
    return [m.rank(s) for s in range(m.full + 1)]


def is_uniform(m):
    r = m.rank_total
    return all(m.rank(s) == r for s in subsets_of_size(m.full, r)) if m.n else True
