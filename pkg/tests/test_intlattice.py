from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from gspflow.errors import InputError
from gspflow.intlattice import (IntegerLattice, RationalMatrix, hermite_normal_form, lattice_contains,
                                lattice_is_full, nullspace, primitive, rational_rank, rref,
                                verify_combination, xgcd)

small = st.integers(-4, 4)


def vectors(dim, count):
    return st.lists(st.lists(small, min_size=dim, max_size=dim).map(tuple),
                    min_size=1, max_size=count)


@st.composite
def generator_sets(draw, max_dim=4, max_count=4):
    dim = draw(st.integers(1, max_dim))
    return dim, draw(vectors(dim, max_count))


def combine(gens, coeffs, dim):
    out = [0] * dim
    for c, g in zip(coeffs, gens):
        for j in range(dim):
            out[j] += c * g[j]
    return tuple(out)


def brute_rank(rows):
    """Largest k with a nonzero k x k minor, via exact determinants."""
    def det(m):
        m = [list(map(Fraction, r)) for r in m]
        n, d = len(m), Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return 0
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    nr, nc = len(rows), len(rows[0]) if rows else 0
    for k in range(min(nr, nc), 0, -1):
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                if det([[rows[i][j] for j in cs] for i in rs]):
                    return k
    return 0


# ---------------------------------------------------------------- rational rank

def test_rank_identity_and_zero():
    assert rational_rank(RationalMatrix.from_rows([(1, 0), (0, 1)])) == 2
    assert rational_rank(RationalMatrix.from_rows([(0, 0, 0)] * 3)) == 0


def test_rank_dependent_rows():
    assert rational_rank(RationalMatrix.from_rows([(1, 2, 3), (2, 4, 6), (0, 1, 1)])) == 2


def test_rank_accepts_fractions():
    m = RationalMatrix.from_rows([(Fraction(1, 2), 1), (1, 2)])
    assert rational_rank(m) == 1


def test_rational_matrix_shape_checked():
    with pytest.raises(InputError):
        RationalMatrix(2, 2, ((1, 2), (3,)))


@given(st.integers(1, 4).flatmap(lambda c: vectors(c, 4)))
def test_rank_matches_minor_oracle(rows):
    assert rational_rank(RationalMatrix.from_rows(rows)) == brute_rank(rows)


@given(st.integers(1, 5).flatmap(lambda c: vectors(c, 4)))
def test_nullspace_is_kernel_of_right_dimension(rows):
    n = len(rows[0])
    ker = nullspace(rows, n)
    assert len(ker) == n - brute_rank(rows)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_rref_and_helpers():
    red, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert red == [[1, 0], [0, 1]]
    assert primitive([2, 4, -6]) == [1, 2, -3]
    g, a, b = xgcd(12, 18)
    assert g == 6 and 12 * a + 18 * b == 6


# ---------------------------------------------------------------- Hermite normal form

def test_hnf_examples():
    assert hermite_normal_form([(1, 0), (0, 1)])[0] == [(1, 0), (0, 1)]
    assert hermite_normal_form([(1, 1), (1, -1)])[0] == [(1, 1), (0, 2)]
    assert hermite_normal_form([(2, 4)])[0] == [(2, 4)]


def test_hnf_pivots_minimal_by_coefficient_box():
    # every lattice vector of {(1,1),(1,-1)} with first entry 0 has an even second entry,
    # and (1, 1) is the smallest positive first-row pivot
    gens = [(1, 1), (1, -1)]
    pts = {combine(gens, c, 2) for c in product(range(-3, 4), repeat=2)}
    assert min(p[0] for p in pts if p[0] > 0) == 1
    assert min(p[1] for p in pts if p[0] == 0 and p[1] > 0) == 2


def in_lattice_of(rows, x, dim):
    return lattice_contains(IntegerLattice.of(rows, dim), x) is not None


@given(generator_sets())
def test_hnf_canonical_and_same_lattice(data):
    dim, gens = data
    H, T = hermite_normal_form(gens, dim)
    # H = T * gens
    for h, t in zip(H, T):
        assert tuple(h) == combine(gens, t, dim)
    # every generator lies in the lattice spanned by H
    for g in gens:
        assert in_lattice_of(H or [(0,) * dim], g, dim)
    # echelon shape with positive pivots and reduced entries above them
    pivots = [next(j for j, x in enumerate(h) if x) for h in H]
    assert pivots == sorted(set(pivots))
    for i, (h, p) in enumerate(zip(H, pivots)):
        assert h[p] > 0
        for above in H[:i]:
            assert 0 <= above[p] < h[p]
    # uniqueness: reversing the generator order gives the same form
    assert hermite_normal_form(list(reversed(gens)), dim)[0] == H
    if H:
        assert hermite_normal_form(H, dim)[0] == H


@given(generator_sets())
def test_index_equals_abs_det_for_square_full_rank(data):
    dim, gens = data
    lat = IntegerLattice.of(gens, dim)
    if lat.lattice_rank == dim and len(gens) == dim:
        d = Fraction(1)
        m = [list(map(Fraction, g)) for g in gens]
        for c in range(dim):
            p = next(i for i in range(c, dim) if m[i][c])
            m[c], m[p] = m[p], m[c]
            d *= m[c][c] * (-1 if p != c else 1)
            for i in range(c + 1, dim):
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        assert lat.index == abs(d)


# ---------------------------------------------------------------- membership

def test_membership_examples():
    lat = IntegerLattice.of([(1, 1), (1, -1)])
    assert lattice_contains(lat, (1, 0)) is None
    cert = lattice_contains(lat, (2, 0))
    assert cert.coefficients == (1, 1)
    assert cert.verify(lat.generators)


def test_membership_of_generators_is_unit_vector():
    gens = [(3, 1, 0), (0, 2, 5), (1, 1, 1)]
    lat = IntegerLattice.of(gens)
    for i, g in enumerate(gens):
        cert = lattice_contains(lat, g)
        assert cert is not None
        assert cert.coefficients == tuple(int(i == j) for j in range(3))


def test_membership_dimension_checked():
    with pytest.raises(InputError):
        lattice_contains(IntegerLattice.of([(1, 0)]), (1, 0, 0))


def test_verify_combination_rejects_wrong_target():
    assert verify_combination([(1, 0), (0, 1)], (2, 3), (2, 3))
    assert not verify_combination([(1, 0), (0, 1)], (2, 3), (2, 4))


@given(generator_sets(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_integer_combinations_are_members(data, coeffs):
    dim, gens = data
    x = combine(gens, coeffs, dim)
    lat = IntegerLattice.of(gens, dim)
    cert = lattice_contains(lat, x)
    assert cert is not None and verify_combination(gens, cert.coefficients, x)


@given(generator_sets(max_dim=3, max_count=3),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_membership_matches_coefficient_box(data, target):
    dim, gens = data
    x = tuple(target[:dim])
    lat = IntegerLattice.of(gens, dim)
    cert = lattice_contains(lat, x)
    box = {combine(gens, c, dim) for c in product(range(-6, 7), repeat=len(gens))}
    if x in box:
        assert cert is not None
    if cert is not None:
        assert verify_combination(gens, cert.coefficients, x)


def test_lattice_is_full_examples():
    assert lattice_is_full(IntegerLattice.of([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    lat = IntegerLattice.of([(1, 1), (1, -1)])
    assert not lattice_is_full(lat) and lat.index == 2
    assert lattice_is_full(IntegerLattice.of([(1, 1), (0, 1)]))
    assert not lattice_is_full(IntegerLattice.of([(1, 0, 0)]))


@given(generator_sets())
def test_full_iff_every_unit_vector_member(data):
    dim, gens = data
    lat = IntegerLattice.of(gens, dim)
    units = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    assert lattice_is_full(lat) == all(lattice_contains(lat, e) for e in units)
