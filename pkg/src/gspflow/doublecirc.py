"""Double circuits, their circuit partitions, and colines seen through duality."""

import logging
from dataclasses import dataclass
from math import comb

from .bits import elements, popcount, subsets_of_size
from .errors import InputError, InvariantError, PreconditionError, ResourceCapError
from .matroid import (ColineReport, MinorMatroid, census, circuits, canonical_key, colines,
                      coline_report, is_uniform, require_cap, series_classes)

log = logging.getLogger(__name__)

DUAL_ROUTE_CAP = 32
DIRECT_ROUTE_CAP = 20
# Seed counts above this need slow=True (the dodecahedron bound is about 5.9e6).
SLOW_SEEDS = 2_000_000


@dataclass(frozen=True)
class DoubleCircuitReport:
    D: int
    classes: tuple
    degree: int
    singular_count: int
    multiple_count: int
    positive: bool

    @property
    def singular_classes(self):
        return tuple(c for c in self.classes if popcount(c) == 1)

    def to_json(self):
        return {"D": self.D, "classes": list(self.classes), "degree": self.degree,
                "singular": self.singular_count, "multiple": self.multiple_count,
                "positive": self.positive}


def is_double_circuit(m, D):
    if popcount(D) < 2 or m.rank(D) != popcount(D) - 2:
        return False
    return m.coloops_within(D) == 0


def _is_circuit_fast(m, C):
    # nullity one and no coloops: the unique circuit inside C is C itself
    return C != 0 and m.rank(C) == popcount(C) - 1 and m.coloops_within(C) == 0


def circuit_partition(m, D, full_check=False):
    """Circuit partition of a double circuit.

    The class of d is d together with the coloops of D - d, because D - d has
    nullity one.  Each class complement is re-verified to be a circuit; with
    ``full_check`` the circuits inside D are also enumerated and compared.
    """
    if not is_double_circuit(m, D):
        raise InputError(f"{D:#x} is not a double circuit")
    classes = []
    seen = 0
    for d in elements(D):
        if seen >> d & 1:
            continue
        cls = (1 << d) | m.coloops_within(D ^ (1 << d))
        if cls & seen:
            raise InvariantError(f"classes of {D:#x} overlap")
        seen |= cls
        classes.append(cls)
    if seen != D:
        raise InvariantError(f"classes of {D:#x} do not cover it")
    for cls in classes:
        if not _is_circuit_fast(m, D & ~cls):
            raise InvariantError(f"{D & ~cls:#x} is not a circuit inside double circuit {D:#x}")
    if full_check:
        inside = set(_circuits_inside(m, D))
        if inside != {D & ~c for c in classes}:
            raise InvariantError(f"circuits inside {D:#x} differ from class complements")
    classes = tuple(sorted(classes, key=lambda c: elements(c)[0]))
    s, mult = census(classes)
    return DoubleCircuitReport(D, classes, len(classes), s, mult, s > mult)


def _circuits_inside(m, D):
    k = popcount(D)
    for size in range(1, k + 1):
        for c in subsets_of_size(D, size):
            if m.is_circuit(c):
                yield c


def _dual_route_seeds(m, universe, k, prefix=None):
    """Yield T = E - S for the independent k-sets S of the dual of ``m``.

    S is independent in the dual iff E - S spans m.  The search is a DFS that
    adds elements in increasing order, pruning as soon as the complement stops
    spanning.  ``prefix`` restricts to seeds whose smallest element is given.
    """
    full = m.full
    r = m.rank_total
    els = elements(universe)
    total = len(els)

    def go(start, depth, S):
        if depth == k:
            yield full & ~S
            return
        for j in range(start, total - (k - depth) + 1):
            nS = S | (1 << els[j])
            if m.rank(full & ~nS) == r:
                yield from go(j + 1, depth + 1, nS)

    if k == 0:
        yield full
        return
    if prefix is None:
        yield from go(0, 0, 0)
        return
    j = els.index(prefix)
    if j > total - k:
        return
    S = 1 << prefix
    if m.rank(full & ~S) == r:
        yield from go(j + 1, 1, S)


def _dual_route_worker(args):
    m, k, prefix = args
    out = set()
    for T in _dual_route_seeds(m, m.full, k, prefix):
        out.add(T & ~m.coloops_within(T))
    return out


def dual_route_seed_bound(m):
    """Upper bound on the number of seeds the dual route visits."""
    k = m.corank - 2
    return comb(m.n, k) if k >= 0 else 0


def double_circuit_sets(m, route="dual", slow=False, jobs=1, seed_limit=None):
    """Masks of all double circuits, in canonical order."""
    if route == "dual":
        require_cap(m.n, DUAL_ROUTE_CAP, "dual-route double circuit enumeration")
        k = m.corank - 2
        if k < 0:
            return []
        limit = SLOW_SEEDS if seed_limit is None else seed_limit
        if dual_route_seed_bound(m) > limit and not slow:
            raise ResourceCapError(
                f"dual route would inspect up to {dual_route_seed_bound(m)} seeds; pass slow=True")
        if jobs > 1 and k > 0:
            from multiprocessing import get_context
            tasks = [(m, k, p) for p in range(m.n)]
            with get_context("fork").Pool(jobs) as pool:
                found = set().union(*pool.imap(_dual_route_worker, tasks))
        elif k == 0:
            found = _dual_route_worker((m, 0, None))
        else:
            found = set()
            for p in range(m.n):
                found |= _dual_route_worker((m, k, p))
        found.discard(0)
    elif route == "direct":
        require_cap(m.n, DIRECT_ROUTE_CAP, "direct-route double circuit enumeration")
        circs = circuits(m, cap=DIRECT_ROUTE_CAP)
        found = set()
        for i, a in enumerate(circs):
            for b in circs[i + 1:]:
                u = a | b
                if u not in found and is_double_circuit(m, u):
                    found.add(u)
    else:
        raise InputError(f"unknown route {route!r}")
    return sorted(found, key=canonical_key)


def enumerate_double_circuits(m, route="dual", slow=False, jobs=1, seed_limit=None):
    return [circuit_partition(m, D) for D in double_circuit_sets(m, route, slow, jobs, seed_limit)]


def coline_from_double_circuit(m_dual, report):
    """The coline E - D of the dual of ``m_dual``, with the same partition."""
    return ColineReport(m_dual.full & ~report.D, report.classes, report.degree,
                        report.singular_count, report.multiple_count, report.positive)


def all_colines_via_dual(m, slow=False, jobs=1):
    d = m.dual()
    return [coline_from_double_circuit(d, r) for r in enumerate_double_circuits(d, slow=slow, jobs=jobs)]


def positive_colines(m, slow=False, jobs=1, cross_check=False):
    out = [c for c in all_colines_via_dual(m, slow, jobs) if c.positive]
    out.sort(key=lambda c: canonical_key(c.coline))
    if cross_check:
        direct = [coline_report(m, f) for f in colines(m)]
        direct = sorted((c for c in direct if c.positive), key=lambda c: canonical_key(c.coline))
        if direct != out:
            raise InvariantError("coline route and dual double-circuit route disagree")
    return out


def series_to_uniform(m, D):
    """Series classes of M|D and the uniform matroid left after cosimplifying."""
    rep = circuit_partition(m, D)
    k = rep.degree
    restr = MinorMatroid(m, m.full & ~D, 0)
    sc = series_classes(restr)
    classes = tuple(sorted((restr.lift(c.members) for c in sc), key=lambda c: elements(c)[0]))
    if any(c.coloop for c in sc) or set(classes) != set(rep.classes):
        raise InvariantError(f"series classes of M|{D:#x} differ from its circuit partition")
    contract = 0
    for c in classes:
        contract |= c & ~(1 << elements(c)[0])
    core = MinorMatroid(m, m.full & ~D, contract)
    if core.n != k or core.rank_total != k - 2 or not is_uniform(core):
        raise InvariantError(f"M|{D:#x} is not a series extension of U_{{{k - 2},{k}}}")
    return classes, (k - 2, k)


def symdiff_pair_to_double_circuit(m, C1, C2):
    if not (m.is_circuit(C1) and m.is_circuit(C2)):
        raise InputError("both sets must be circuits")
    if popcount(C1 ^ C2) != 2:
        raise InputError("circuits must have symmetric difference of size 2")
    rep = circuit_partition(m, C1 | C2)
    for s in (rep.D & ~C1, rep.D & ~C2):
        if s not in rep.classes:
            raise InvariantError(f"{s:#x} is not a singular class of {rep.D:#x}")
    return rep


def double_circuit_to_symdiff_pair(m, report):
    single = report.singular_classes
    if len(single) < 2:
        raise PreconditionError("need at least two singular classes")
    return report.D & ~single[0], report.D & ~single[1]


def flowable_hypothesis(report):
    s = report.singular_count
    if report.degree % 2 == 0 and s >= 1:
        return "even_one_singular"
    if report.degree % 2 == 1 and s >= 2:
        return "odd_two_singular"
    return "none"
