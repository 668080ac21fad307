"""Realized oriented matroids, their flow and coflow lattices, and the search
for small-support flows."""

import random
from dataclasses import dataclass, field
from itertools import combinations

from .bits import compress, elements, popcount
from .doublecirc import flowable_hypothesis
from .errors import GenericityError, InputError, InvariantError, PreconditionError
from .intlattice import (IntegerLattice, _as_rows, _integer_rows, bareiss_rank, lattice_contains,
                         lattice_is_full, nullspace, rref, verify_combination)
from .matroid import (LinearMatroid, _mk4, circuits, contract_family, copoints,
                      independent_sets_of_size, is_cosimple, is_isomorphic, is_simple, is_uniform,
                      make_lattice_path, make_uniform, require_cap)

_P = (1 << 61) - 1
MAX_TRIES = 8
CERTIFY_CAP = 12


# ---------------------------------------------------------------- sign vectors

def canonical_pair(pos, neg):
    """Representative of {X, -X} whose smallest support element is positive."""
    s = pos | neg
    if s and neg & (s & -s):
        return neg, pos
    return pos, neg


def pair_to_vector(pair, n):
    pos, neg = pair
    return tuple(1 if pos >> i & 1 else -1 if neg >> i & 1 else 0 for i in range(n))


def vector_to_pair(v):
    pos = neg = 0
    for i, x in enumerate(v):
        if x > 0:
            pos |= 1 << i
        elif x < 0:
            neg |= 1 << i
    return pos, neg


def contract_signed(fam, C):
    """Signed circuits of O/C: minimal nonempty restrictions X - C."""
    cand = {}
    for pos, neg in fam:
        p, q = canonical_pair(pos & ~C, neg & ~C)
        s = p | q
        if not s:
            continue
        prev = cand.get(s)
        if prev is not None and prev != (p, q):
            raise InvariantError(f"contraction by {C:#x} produced two sign patterns on {s:#x}")
        cand[s] = (p, q)
    supports = contract_family(list(cand), 0)
    return [cand[s] for s in supports]


def delete_signed(fam, D):
    return [x for x in fam if not (x[0] | x[1]) & D]


# ---------------------------------------------------------------- realization helpers

def _rank_mod_p(rows, cols):
    a = [[r[j] % _P for j in cols] for r in rows]
    rank = 0
    ncols = len(cols)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], _P - 2, _P)
        pr = a[rank]
        for i in range(rank + 1, len(a)):
            f = a[i][c]
            if f:
                f = f * inv % _P
                a[i] = [(x - f * y) % _P for x, y in zip(a[i], pr)]
        rank += 1
    return rank


def _exact_rank(rows, cols):
    return bareiss_rank([[r[j] for j in cols] for r in rows]) if cols else 0


def check_generic(int_rows, expected):
    """True iff the column matroid of ``int_rows`` equals ``expected``.

    Every basis of ``expected`` must be independent (tested mod a large prime,
    confirmed exactly on failure) and every circuit of ``expected`` dependent.
    Together these force equal independent-set families.
    """
    r = expected.rank_total
    if _exact_rank(int_rows, list(range(expected.n))) != r:
        return False
    for b in independent_sets_of_size(expected, r):
        cols = elements(b)
        if _rank_mod_p(int_rows, cols) != r and _exact_rank(int_rows, cols) != r:
            return False
    for c in circuits(expected, cap=max(expected.n, 20)):
        if _exact_rank(int_rows, elements(c)) != popcount(c) - 1:
            return False
    return True


def _signed_circuit(rows, support):
    cols = elements(support)
    sub = [[r[j] for j in cols] for r in rows]
    ker = nullspace(sub, len(cols)) if sub else [[1] * len(cols)]
    if len(ker) != 1 or any(x == 0 for x in ker[0]):
        raise InvariantError(f"support {support:#x} does not carry a unique circuit vector")
    pos = neg = 0
    for j, x in zip(cols, ker[0]):
        if x > 0:
            pos |= 1 << j
        else:
            neg |= 1 << j
    return canonical_pair(pos, neg)


# ---------------------------------------------------------------- oriented matroid

@dataclass(frozen=True)
class OrientedMatroid:
    n: int
    circuit_pairs: tuple
    underlying: object = field(compare=False)
    realization: tuple = field(default=None, compare=False)

    @property
    def signed_circuits(self):
        return [pair_to_vector(p, self.n) for p in self.circuit_pairs]

    def __repr__(self):
        return f"<OrientedMatroid n={self.n} circuits={len(self.circuit_pairs)}>"


def orient_from_realization(a, expected=None):
    """Oriented matroid of the columns of a rational matrix."""
    rows = _integer_rows(_as_rows(a))
    ncols = len(rows[0]) if rows else 0
    if expected is not None:
        if expected.n != ncols:
            raise InputError(f"matrix has {ncols} columns, expected matroid has {expected.n}")
        if not check_generic(rows, expected):
            raise GenericityError("realization does not produce the expected matroid")
        under = expected
    else:
        under = LinearMatroid(rows)
    pairs = sorted(_signed_circuit(rows, c) for c in circuits(under, cap=max(under.n, 20)))
    return OrientedMatroid(ncols, tuple(pairs), under, tuple(tuple(r) for r in rows))


def _retry(build, expected, seed):
    for attempt in range(MAX_TRIES):
        rows = build(random.Random(seed + attempt))
        try:
            return orient_from_realization(rows, expected)
        except GenericityError:
            continue
    raise GenericityError(f"{MAX_TRIES} consecutive non-generic realizations from seed {seed}")


def _random_entry(rng):
    x = rng.randrange(1, 1 << 62)
    return x if rng.random() < 0.5 else -x


def realize_bicircular(g, seed=1):
    from .bicircular import make_bicircular
    require_cap(g.m, 20, "bicircular realization")
    expected = make_bicircular(g)

    def build(rng):
        rows = [[0] * g.m for _ in range(g.vertex_count)]
        for j, (u, v) in enumerate(g.edges):
            rows[u][j] = _random_entry(rng)
            if u != v:
                rows[v][j] = _random_entry(rng)
        return rows

    return _retry(build, expected, seed)


def realize_uniform(r, n, seed=1):
    """U_{r,n} on a moment curve with seed-chosen distinct parameters."""
    expected = make_uniform(r, n)

    def build(rng):
        ts = rng.sample(range(-4 * n - 8, 4 * n + 9), n)
        return [[t ** i for t in ts] for i in range(r)]

    return _retry(build, expected, seed)


def realize_graphic(g):
    """Directed incidence matrix; edge (u, v) points from u to v."""
    from .matroid import make_graphic
    rows = [[0] * g.m for _ in range(g.vertex_count)]
    for j, (u, v) in enumerate(g.edges):
        if u != v:
            rows[u][j] = 1
            rows[v][j] = -1
    return orient_from_realization(rows, make_graphic(g))


def realize_lattice_path(upper, lower, seed=1):
    """Generic transversal realization: row j carries random entries on interval j."""
    expected = make_lattice_path(upper, lower)

    def build(rng):
        rows = [[0] * expected.n for _ in expected.lo]
        for j, (lo, hi) in enumerate(expected.intervals):
            for x in range(lo, hi + 1):
                rows[j][x] = _random_entry(rng)
        return rows or [[0] * expected.n]

    return _retry(build, expected, seed)


def reorient(o, S):
    pairs = sorted(canonical_pair((p & ~S) | (q & S), (q & ~S) | (p & S)) for p, q in o.circuit_pairs)
    real = None
    if o.realization is not None:
        real = tuple(tuple(-x if S >> j & 1 else x for j, x in enumerate(r)) for r in o.realization)
    return OrientedMatroid(o.n, tuple(pairs), o.underlying, real)


def _row_space(o):
    if o.realization is None:
        raise InputError("signed cocircuits need a realization")
    red, _ = rref(o.realization)
    return _integer_rows(red)


def signed_cocircuits(o):
    """Cocircuits from functionals vanishing on each copoint."""
    R = _row_space(o)
    out = set()
    for H in copoints(o.underlying):
        cols = elements(H.elements)
        # functional y on the row space with y . column_j = 0 for j in H
        constraints = [[R[i][j] for i in range(len(R))] for j in cols]
        ker = nullspace(constraints, len(R)) if constraints else [[1] + [0] * (len(R) - 1)]
        if len(ker) != 1:
            raise InvariantError(f"copoint {H.elements:#x} does not determine a functional")
        y = ker[0]
        pos = neg = 0
        for j in range(o.n):
            v = sum(y[i] * R[i][j] for i in range(len(R)))
            if v > 0:
                pos |= 1 << j
            elif v < 0:
                neg |= 1 << j
        if (pos | neg) != o.underlying.full & ~H.elements:
            raise InvariantError("cocircuit support is not the copoint complement")
        out.add(canonical_pair(pos, neg))
    return [pair_to_vector(p, o.n) for p in sorted(out)]


def dual_orientation(o):
    """Orientation of the dual realized by a kernel basis (Gale dual)."""
    if o.realization is None:
        raise InputError("dual orientation needs a realization")
    ker = nullspace(o.realization, o.n)
    rows = ker if ker else [[0] * o.n]
    return orient_from_realization(rows, o.underlying.dual())


def check_orthogonality(circ, cocirc):
    """Every circuit/cocircuit pair with meeting supports has both sign agreements and disagreements."""
    for x in circ:
        for y in cocirc:
            prods = {a * b for a, b in zip(x, y) if a and b}
            if prods and prods != {1, -1}:
                return False
    return True


# ---------------------------------------------------------------- lattices and flows

def flow_lattice(o):
    return IntegerLattice.of(o.signed_circuits or [[0] * o.n], o.n)


def coflow_lattice(o):
    return IntegerLattice.of(signed_cocircuits(o) or [[0] * o.n], o.n)


@dataclass(frozen=True)
class FlowVector:
    entries: tuple
    coefficients: tuple
    generators: tuple
    kind: str = "flow"

    def __post_init__(self):
        if not self.verify():
            raise InvariantError("flow certificate does not verify")

    def verify(self):
        return verify_combination(self.generators, self.coefficients, self.entries)

    @property
    def support(self):
        return tuple(i for i, x in enumerate(self.entries) if x)


def _certified(lattice, x, kind):
    cert = lattice_contains(lattice, x)
    if cert is None:
        return None
    return FlowVector(tuple(x), cert.coefficients, lattice.generators, kind)


def small_support_candidates(n, max_support=2):
    """Targets e_i, then e_i + e_j and e_i - e_j, in lexicographic order.

    Negating a target never changes membership, so the first entry is +1.
    """
    if max_support >= 1:
        for i in range(n):
            x = [0] * n
            x[i] = 1
            yield x
    if max_support >= 2:
        for i, j in combinations(range(n), 2):
            for s in (1, -1):
                x = [0] * n
                x[i], x[j] = 1, s
                yield x


def small_support_flow(o, max_support=2, lattice=None, kind="flow"):
    """First {0,+-1} flow with at most ``max_support`` nonzero entries, or None."""
    if lattice is None:
        lattice = flow_lattice(o) if kind == "flow" else coflow_lattice(o)
    for x in small_support_candidates(lattice.dimension, max_support):
        hit = _certified(lattice, x, kind)
        if hit is not None:
            return hit
    return None


def flow_from_double_circuit(o, report):
    """Unit flow on one singular class (even degree) or on two (odd degree),
    generated by the signed circuits inside the double circuit."""
    hyp = flowable_hypothesis(report)
    if hyp == "none":
        raise PreconditionError("double circuit satisfies neither flowable hypothesis")
    gens = [v for p, v in zip(o.circuit_pairs, o.signed_circuits) if (p[0] | p[1]) & ~report.D == 0]
    lat = IntegerLattice.of(gens, o.n)
    single = [elements(c)[0] for c in report.singular_classes]
    targets = []
    if hyp == "even_one_singular":
        for e in single:
            x = [0] * o.n
            x[e] = 1
            targets.append(x)
    else:
        for e, f in combinations(single, 2):
            for s in (1, -1):
                x = [0] * o.n
                x[e], x[f] = 1, s
                targets.append(x)
    for x in targets:
        hit = _certified(lat, x, "flow")
        if hit is not None:
            return hit
    raise InvariantError(f"no unit flow on the singular classes of {report.D:#x}")


# ---------------------------------------------------------------- certification

@dataclass(frozen=True)
class MinorWitness:
    delete: int
    contract: int
    flow: tuple

    def to_json(self):
        return {"delete": self.delete, "contract": self.contract, "flow": list(self.flow)}


@dataclass(frozen=True)
class GspCertificate:
    mode: str
    verdict: bool
    minors_checked: int
    witnesses: tuple
    failing_minor: object
    complete: bool
    max_depth: object = None

    def to_json(self):
        fm = None
        if self.failing_minor is not None:
            fm = {"delete": self.failing_minor[0], "contract": self.failing_minor[1]}
        return {"mode": self.mode, "verdict": self.verdict, "minors_checked": self.minors_checked,
                "complete": self.complete, "max_depth": self.max_depth,
                "witnesses": [w.to_json() for w in self.witnesses], "failing_minor": fm}


def _cosimple_family(fam, ground):
    covered = 0
    seen = set()
    incidence = {x: 0 for x in elements(ground)}
    for i, (p, q) in enumerate(fam):
        s = p | q
        covered |= s
        for x in elements(s):
            incidence[x] |= 1 << i
    if covered != ground:
        return False
    for v in incidence.values():
        if v in seen:
            return False
        seen.add(v)
    return True


def _relabeled(fam, ground):
    return tuple(sorted(canonical_pair(compress(p, ground), compress(q, ground)) for p, q in fam))


def _minor_flow(fam, k):
    for p, q in fam:
        if popcount(p | q) <= 2:
            return pair_to_vector((p, q), k)
    lat = IntegerLattice.of([pair_to_vector(x, k) for x in fam] or [[0] * k], k)
    hit = small_support_flow(None, lattice=lat)
    return None if hit is None else hit.entries


def certify_coGSP(o, max_ground=CERTIFY_CAP, max_depth=None):
    """Check that every cosimple minor has a {0,+-1} flow with at most two nonzeros.

    Minors are walked as contraction sets C (deriving the signed family of O/C
    incrementally) and deletion sets D of the rest.  Minors whose relabeled
    signed-circuit family was already seen reuse the earlier verdict.  With
    ``max_depth`` only minors with |D| + |C| <= max_depth are surveyed and the
    certificate is marked incomplete.
    """
    n = o.n
    if max_depth is None:
        require_cap(n, max_ground, "GSP certification")
    full = (1 << n) - 1
    fams = {0: list(o.circuit_pairs)}
    verdicts = {}
    witnesses = []
    checked = 0
    failing = None
    complete = max_depth is None or max_depth >= n
    for C in range(full + 1):
        if max_depth is not None and popcount(C) > max_depth:
            continue
        if C:
            top = C.bit_length() - 1
            fams[C] = contract_signed(fams[C ^ (1 << top)], 1 << top)
        fc = fams[C]
        rest = full & ~C
        els = elements(rest)
        budget = len(els) if max_depth is None else min(len(els), max_depth - popcount(C))
        for k in range(budget + 1):
            for dels in combinations(els, k):
                D = 0
                for x in dels:
                    D |= 1 << x
                ground = rest & ~D
                if not ground:
                    continue
                sub = delete_signed(fc, D)
                if not _cosimple_family(sub, ground):
                    continue
                key = (popcount(ground), _relabeled(sub, ground))
                if key in verdicts:
                    continue
                checked += 1
                rel = list(key[1])
                flow = _minor_flow(rel, key[0])
                verdicts[key] = flow is not None
                if flow is None:
                    if failing is None:
                        failing = (D, C)
                else:
                    witnesses.append(MinorWitness(D, C, tuple(flow)))
    return GspCertificate("cogsp", failing is None, checked, tuple(witnesses), failing,
                          complete, max_depth)


def certify_GSP(o, max_ground=CERTIFY_CAP, max_depth=None):
    cert = certify_coGSP(dual_orientation(o), max_ground, max_depth)
    return GspCertificate("gsp", cert.verdict, cert.minors_checked, cert.witnesses,
                          cert.failing_minor, cert.complete, max_depth)


def nz3_coflow(o, lattice=None, cap=CERTIFY_CAP):
    """First coflow with entries in {1,-1,2,-2} (that value order, coordinate by
    coordinate), found by DFS pruned against the Hermite form of the coflow
    lattice."""
    require_cap(o.n, cap, "NZ-3 coflow search")
    if o.underlying.loops():
        raise PreconditionError("the underlying matroid has loops")
    if lattice is None:
        lattice = coflow_lattice(o)
    n = o.n
    pivot_row = {p: row for p, row in zip(lattice.pivots, lattice.hnf)}
    values = (1, -1, 2, -2)
    x = [0] * n

    def go(j, acc):
        if j == n:
            return True
        row = pivot_row.get(j)
        for v in values:
            need = v - acc[j]
            if row is None:
                if need:
                    continue
                nacc = acc
            else:
                q, rem = divmod(need, row[j])
                if rem:
                    continue
                nacc = [a + q * h for a, h in zip(acc, row)] if q else acc
            x[j] = v
            if go(j + 1, nacc):
                return True
        return False

    if not go(0, [0] * n):
        return None
    return _certified(lattice, x, "coflow")


def rank3_full_lattice_check(o):
    m = o.underlying
    if m.rank_total != 3:
        raise PreconditionError(f"rank is {m.rank_total}, not 3")
    if not is_simple(m):
        raise PreconditionError("underlying matroid is not simple")
    if not is_cosimple(m):
        raise PreconditionError("underlying matroid is not cosimple")
    if is_uniform(m):
        raise PreconditionError("underlying matroid is uniform")
    if m.n == 6 and is_isomorphic(m, _mk4()) is not None:
        raise PreconditionError("underlying matroid is M(K4)")
    return lattice_is_full(flow_lattice(o))
