"""Exact linear algebra over Q and Z.

Everything here works on Python ints and ``fractions.Fraction``; there is no
floating point anywhere.  Integer lattices are stored through their row-style
Hermite normal form (generators are rows).
"""

from dataclasses import dataclass, field, InitVar
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from .errors import InputError

# HNF rows are renormalised when an entry grows past this many bits.
_REDUCE_BITS = 96


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InputError("entry count must equal rows*cols")

    @classmethod
    def from_rows(cls, rows, cols=None):
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def select_columns(self, cols):
        return RationalMatrix(self.rows, len(cols),
                              tuple(tuple(r[j] for j in cols) for r in self.entries))

    def transpose(self):
        return RationalMatrix(self.cols, self.rows,
                              tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                    for j in range(self.cols)))

    def tolist(self):
        return [list(r) for r in self.entries]


def _as_rows(m):
    if isinstance(m, RationalMatrix):
        return [list(r) for r in m.entries]
    return [list(r) for r in m]


def _integer_rows(rows):
    out = []
    for r in rows:
        dens = [Fraction(x).denominator for x in r]
        scale = lcm(*dens) if dens else 1
        out.append([int(Fraction(x) * scale) for x in r])
    return out


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, len(a)):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, len(a)):
            ai = a[i]
            f = ai[col]
            ar = a[rank]
            for j in range(col + 1, ncols):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[col] = 0
        prev = p
        rank += 1
        if rank == len(a):
            break
    return rank


def rational_rank(m):
    """Rank over Q of a matrix given as RationalMatrix or nested lists."""
    return bareiss_rank(_integer_rows(_as_rows(m)))


def rref(m):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    a = [[Fraction(x) for x in r] for r in _as_rows(m)]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def primitive(v):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def nullspace(m, ncols=None):
    """Integer basis (primitive vectors) of the right kernel of ``m``."""
    rows = _as_rows(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def row_space_basis(m):
    """Independent rows spanning the row space (the nonzero RREF rows)."""
    red, _ = rref(m)
    return red


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class _Row:
    __slots__ = ("pivot", "vec", "coef")

    def __init__(self, pivot, vec, coef):
        self.pivot = pivot
        self.vec = vec
        self.coef = coef


def _combine(x, y, s, t):
    return [s * a + t * b for a, b in zip(x, y)]


def _combine_coef(cx, cy, s, t):
    if cx is None:
        return None
    out = {}
    for k, v in cx.items():
        out[k] = s * v
    for k, v in cy.items():
        out[k] = out.get(k, 0) + t * v
    return {k: v for k, v in out.items() if v}


def _insert(rows, v, c):
    i = 0
    ncols = len(v)
    p = 0
    while True:
        while p < ncols and v[p] == 0:
            p += 1
        if p == ncols:
            return
        while i < len(rows) and rows[i].pivot < p:
            i += 1
        if i < len(rows) and rows[i].pivot == p:
            h = rows[i]
            a, b = h.vec[p], v[p]
            if b % a == 0:
                q = b // a
                v = [y - q * x for x, y in zip(h.vec, v)]
                if c is not None:
                    c = _combine_coef(c, h.coef, 1, -q)
            else:
                g, s, t = xgcd(a, b)
                ag, bg = a // g, b // g
                new_h = _combine(h.vec, v, s, t)
                new_v = _combine(v, h.vec, ag, -bg)
                if c is not None:
                    new_hc = _combine_coef(h.coef, c, s, t)
                    c = _combine_coef(c, h.coef, ag, -bg)
                    h.coef = new_hc
                h.vec = new_h
                v = new_v
            i += 1
            p += 1
        else:
            if v[p] < 0:
                v = [-x for x in v]
                if c is not None:
                    c = {k: -x for k, x in c.items()}
            rows.insert(i, _Row(p, v, c))
            return


def _reduce_above(rows):
    for i, r in enumerate(rows):
        p = r.pivot
        d = r.vec[p]
        for j in range(i):
            above = rows[j]
            q = above.vec[p] // d
            if q:
                above.vec = [x - q * y for x, y in zip(above.vec, r.vec)]
                if above.coef is not None:
                    above.coef = _combine_coef(above.coef, r.coef, 1, -q)


def _hnf_rows(gens, dim, track):
    rows = []
    limit = 1 << _REDUCE_BITS
    for gi, g in enumerate(gens):
        if len(g) != dim:
            raise InputError("generators must all have the same length")
        _insert(rows, [int(x) for x in g], {gi: 1} if track else None)
        if any(abs(x) > limit for r in rows for x in r.vec):
            _reduce_above(rows)
    _reduce_above(rows)
    return rows


def hermite_normal_form(gens, dim=None):
    """Row-style HNF of the integer row lattice spanned by ``gens``.

    Returns ``(H, T)`` where H lists the nonzero HNF rows (pivots strictly
    increasing, positive, entries above a pivot reduced into [0, pivot)) and
    ``T[i]`` is an integer coefficient vector over ``gens`` with
    ``T[i] . gens == H[i]``.
    """
    gens = [tuple(g) for g in gens]
    if dim is None:
        dim = len(gens[0]) if gens else 0
    rows = _hnf_rows(gens, dim, True)
    H = [tuple(r.vec) for r in rows]
    T = []
    for r in rows:
        t = [0] * len(gens)
        for k, v in r.coef.items():
            t[k] = v
        T.append(tuple(t))
    return H, T


@dataclass(frozen=True)
class MembershipCertificate:
    target: tuple
    coefficients: tuple
    generators: InitVar[tuple] = None

    def __post_init__(self, generators):
        if generators is None:
            raise InputError("certificate needs the generators to verify against")
        if not verify_combination(generators, self.coefficients, self.target):
            raise AssertionError("membership certificate does not verify")

    def verify(self, generators):
        return verify_combination(generators, self.coefficients, self.target)


def verify_combination(generators, coefficients, target):
    if len(coefficients) != len(generators):
        return False
    acc = [0] * len(target)
    for c, g in zip(coefficients, generators):
        if c:
            for j, x in enumerate(g):
                acc[j] += c * x
    return acc == list(target)


@dataclass(frozen=True)
class IntegerLattice:
    """Integer row lattice of a list of generator vectors."""

    dimension: int
    generators: tuple
    hnf: tuple = field(init=False)
    pivots: tuple = field(init=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        rows = _hnf_rows(gens, self.dimension, False)
        object.__setattr__(self, "hnf", tuple(tuple(r.vec) for r in rows))
        object.__setattr__(self, "pivots", tuple(r.pivot for r in rows))

    @classmethod
    def of(cls, generators, dimension=None):
        generators = [tuple(g) for g in generators]
        if dimension is None:
            if not generators:
                raise InputError("dimension required for an empty generator list")
            dimension = len(generators[0])
        return cls(dimension, tuple(generators))

    @property
    def lattice_rank(self):
        return len(self.hnf)

    @property
    def index(self):
        """Product of HNF pivots; equals the index in Z^n when full rank."""
        out = 1
        for row, p in zip(self.hnf, self.pivots):
            out *= row[p]
        return out

    @cached_property
    def transform(self):
        H, T = hermite_normal_form(self.generators, self.dimension)
        if tuple(H) != self.hnf:
            raise AssertionError("tracked HNF differs from untracked HNF")
        return T

    def hnf_coordinates(self, x):
        """Coefficients of ``x`` over the HNF rows, or None if x is not in the lattice."""
        if len(x) != self.dimension:
            raise InputError(f"vector has length {len(x)}, lattice dimension is {self.dimension}")
        r = [int(v) for v in x]
        coords = []
        start = 0
        for row, p in zip(self.hnf, self.pivots):
            for j in range(start, p):
                if r[j]:
                    return None
            q, rem = divmod(r[p], row[p])
            if rem:
                return None
            if q:
                for j in range(p, self.dimension):
                    r[j] -= q * row[j]
            coords.append(q)
            start = p + 1
        if any(r[start:]):
            return None
        return coords

    def __contains__(self, x):
        return self.hnf_coordinates(x) is not None


def lattice_contains(lattice, x):
    """Certificate that x lies in ``lattice``, or None."""
    coords = lattice.hnf_coordinates(x)
    if coords is None:
        return None
    T = lattice.transform
    coeffs = [0] * len(lattice.generators)
    for c, t in zip(coords, T):
        if c:
            for k, v in enumerate(t):
                if v:
                    coeffs[k] += c * v
    return MembershipCertificate(tuple(int(v) for v in x), tuple(coeffs), lattice.generators)


def lattice_is_full(lattice):
    return lattice.lattice_rank == lattice.dimension and lattice.index == 1
