from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gspflow.bicircular import make_bicircular
from gspflow.bits import elements, popcount
from gspflow.doublecirc import circuit_partition, enumerate_double_circuits, flowable_hypothesis
from gspflow.errors import GenericityError, InputError, PreconditionError
from gspflow.graphs import MultiGraph, complete_graph, named_graph
from gspflow.intlattice import lattice_contains, lattice_is_full, verify_combination
from gspflow.matroid import circuits, copoints, make_lattice_path, make_uniform, rank_table
from gspflow.orientedflow import (canonical_pair, certify_GSP, certify_coGSP, check_generic,
                                  check_orthogonality, coflow_lattice, dual_orientation,
                                  flow_from_double_circuit, flow_lattice, nz3_coflow,
                                  orient_from_realization, rank3_full_lattice_check, realize_bicircular,
                                  realize_graphic, realize_lattice_path, realize_uniform, reorient,
                                  signed_cocircuits, small_support_flow, vector_to_pair)

DIRECTED_TRIANGLE = MultiGraph(3, ((0, 1), (1, 2), (2, 0)))
U24_COLUMNS = [[1, 0, 1, 1], [0, 1, 1, 2]]


def supports(vectors):
    return sorted(sum(1 << i for i, x in enumerate(v) if x) for v in vectors)


# ---------------------------------------------------------------- realizations

def test_u24_from_columns():
    o = orient_from_realization(U24_COLUMNS)
    assert rank_table(o.underlying) == rank_table(make_uniform(2, 4))
    assert (1, 1, -1, 0) in o.signed_circuits


def test_identity_is_free():
    o = orient_from_realization([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert o.signed_circuits == []


def test_directed_triangle():
    o = realize_graphic(DIRECTED_TRIANGLE)
    assert o.signed_circuits == [(1, 1, 1)]


def test_expected_matroid_is_enforced():
    with pytest.raises(GenericityError):
        orient_from_realization([[1, 0, 1], [0, 1, 0]], expected=make_uniform(2, 3))
    with pytest.raises(InputError):
        orient_from_realization(U24_COLUMNS, expected=make_uniform(2, 5))


@pytest.mark.parametrize("name,r,n", [("theta(3)", 2, 3), ("k4", 4, 6), ("bouquet(2)", 1, 2)])
def test_bicircular_realizations(name, r, n):
    o = realize_bicircular(named_graph(name), seed=3)
    assert rank_table(o.underlying) == rank_table(make_bicircular(named_graph(name)))
    assert (o.underlying.rank_total, o.n) == (r, n)
    assert check_generic([list(row) for row in o.realization], make_uniform(r, n))


def test_bicircular_realization_is_seeded():
    g = complete_graph(4)
    assert realize_bicircular(g, seed=5).realization == realize_bicircular(g, seed=5).realization
    assert realize_bicircular(g, seed=5).realization != realize_bicircular(g, seed=6).realization


@given(st.integers(0, 10**6))
@settings(max_examples=20)
def test_every_circuit_support_carries_one_sign_pattern(seed):
    o = realize_bicircular(named_graph("prism(3)"), seed=seed)
    assert supports(o.signed_circuits) == sorted(circuits(o.underlying))


def test_lattice_path_realization():
    o = realize_lattice_path("NENE", "ENEN")
    assert rank_table(o.underlying) == rank_table(make_lattice_path("NENE", "ENEN"))
    assert len(o.signed_circuits) == len(circuits(o.underlying))


# ---------------------------------------------------------------- reorientation and cocircuits

def test_reorient_examples():
    o = orient_from_realization(U24_COLUMNS)
    assert reorient(o, 0) == o
    assert reorient(o, 0b1111) == o
    flipped = reorient(o, 0b0001)
    assert (1, -1, 1, 0) in flipped.signed_circuits
    assert (1, 1, -1, 0) not in flipped.signed_circuits


def test_cocircuit_examples():
    o = orient_from_realization(U24_COLUMNS)
    assert supports(signed_cocircuits(o)) == [0b0111, 0b1011, 0b1101, 0b1110]
    t = realize_graphic(DIRECTED_TRIANGLE)
    assert supports(signed_cocircuits(t)) == [0b011, 0b101, 0b110]


@given(st.sampled_from(["k4", "theta(4)", "doubled_triangle", "prism(3)"]), st.integers(1, 1000),
       st.integers(0, 2**9 - 1))
@settings(max_examples=25)
def test_orthogonality(name, seed, flip):
    o = realize_bicircular(named_graph(name), seed=seed)
    o = reorient(o, flip & ((1 << o.n) - 1))
    cocirc = signed_cocircuits(o)
    assert supports(cocirc) == sorted(o.underlying.full & ~h.elements for h in copoints(o.underlying))
    assert check_orthogonality(o.signed_circuits, cocirc)


def test_orthogonality_detects_bad_signs():
    assert not check_orthogonality([(1, 1, 0)], [(1, 1, 0)])
    assert check_orthogonality([(1, 1, 0)], [(1, -1, 0)])


def test_dual_orientation_swaps_circuits_and_cocircuits():
    o = realize_bicircular(complete_graph(4), seed=2)
    d = dual_orientation(o)
    assert rank_table(d.underlying) == rank_table(o.underlying.dual())
    assert {canonical_pair(*vector_to_pair(v)) for v in signed_cocircuits(o)} == set(d.circuit_pairs)


# ---------------------------------------------------------------- lattices and small flows

def test_flow_lattice_examples():
    assert lattice_is_full(flow_lattice(orient_from_realization(U24_COLUMNS)))
    tri = flow_lattice(realize_graphic(DIRECTED_TRIANGLE))
    assert tri.lattice_rank == 1
    assert lattice_contains(tri, (2, 2, 2)) and not lattice_contains(tri, (1, 1, 0))


def test_small_support_examples():
    x = small_support_flow(orient_from_realization(U24_COLUMNS))
    assert x.entries == (1, 0, 0, 0) and x.verify()
    y = small_support_flow(realize_uniform(3, 5))
    assert len(y.support) == 2 and {abs(v) for v in y.entries if v} == {1}
    assert small_support_flow(realize_graphic(DIRECTED_TRIANGLE)) is None


def test_flow_from_double_circuit_examples():
    o = orient_from_realization(U24_COLUMNS)
    rep = circuit_partition(o.underlying, 0b1111)
    x = flow_from_double_circuit(o, rep)
    assert len(x.support) == 1 and x.verify()

    o = realize_bicircular(named_graph("bouquet(3)"))
    rep = circuit_partition(o.underlying, 0b111)
    x = flow_from_double_circuit(o, rep)
    assert len(x.support) == 2 and all(abs(v) == 1 for v in x.entries if v)


def test_flow_on_degree_five_double_circuit():
    o = realize_bicircular(named_graph("doubled_triangle"), seed=4)
    rep = next(r for r in enumerate_double_circuits(o.underlying) if r.degree == 5)
    x = flow_from_double_circuit(o, rep)
    assert len(x.support) == 2
    assert set(x.support) <= {elements(c)[0] for c in rep.singular_classes}


def test_flow_from_double_circuit_needs_hypothesis():
    o = realize_graphic(complete_graph(4))
    rep = circuit_partition(o.underlying, 0b011111)
    with pytest.raises(PreconditionError):
        flow_from_double_circuit(o, rep)


# ---------------------------------------------------------------- certificates

def test_cogsp_bicircular_k4():
    cert = certify_coGSP(realize_bicircular(complete_graph(4)))
    assert cert.verdict and cert.complete and cert.failing_minor is None
    for w in cert.witnesses:
        assert 1 <= sum(1 for v in w.flow if v) <= 2


def test_gsp_triangle():
    assert certify_GSP(realize_graphic(DIRECTED_TRIANGLE)).verdict


def test_mk4_regression_verdicts():
    o = realize_graphic(complete_graph(4))
    co, g = certify_coGSP(o), certify_GSP(o)
    assert co.verdict is False and g.verdict is False
    assert co.failing_minor is not None and co.complete


def test_lattice_path_gsp():
    assert certify_GSP(realize_lattice_path("NNEE", "EENN")).verdict


def test_depth_capped_certificate_is_incomplete():
    cert = certify_coGSP(realize_bicircular(named_graph("prism(3)")), max_depth=1)
    assert cert.verdict and not cert.complete and cert.max_depth == 1


def test_certificate_json_shape():
    data = certify_coGSP(realize_bicircular(named_graph("theta(4)"))).to_json()
    assert set(data) == {"mode", "verdict", "minors_checked", "complete", "max_depth", "witnesses",
                         "failing_minor"}


# ---------------------------------------------------------------- NZ-3 coflows

def test_nz3_directed_triangle():
    t = realize_graphic(DIRECTED_TRIANGLE)
    x = nz3_coflow(t)
    assert x.entries == (1, 1, -2) and x.kind == "coflow"
    # tensions of the directed triangle sum to zero around the cycle
    lat = coflow_lattice(t)
    assert lattice_contains(lat, (2, -1, -1)) and not lattice_contains(lat, (1, 1, 1))


def test_nz3_cobicircular_k4():
    d = dual_orientation(realize_bicircular(complete_graph(4)))
    x = nz3_coflow(d)
    assert x is not None and all(0 < abs(v) < 3 for v in x.entries)
    assert verify_combination(x.generators, x.coefficients, x.entries)


def test_nz3_u12():
    x = nz3_coflow(realize_bicircular(named_graph("bouquet(2)")))
    assert x is not None and all(0 < abs(v) < 3 for v in x.entries)


def test_nz3_needs_loopless():
    o = orient_from_realization([[1, 0]])
    with pytest.raises(PreconditionError):
        nz3_coflow(o)


@given(st.sampled_from(["k4", "theta(4)", "theta(5)", "doubled_triangle", "prism(3)"]),
       st.integers(1, 1000))
@settings(max_examples=15)
def test_nz3_coflow_on_cobicircular(name, seed):
    d = dual_orientation(realize_bicircular(named_graph(name), seed=seed))
    x = nz3_coflow(d)
    assert x is not None and all(v in (1, -1, 2, -2) for v in x.entries)


# ---------------------------------------------------------------- rank three lattices

def test_rank3_with_one_line():
    o = orient_from_realization([[1, 0, 0, 1, 1, 2], [0, 1, 0, 1, 3, 5], [0, 0, 1, 0, 7, 11]])
    assert [c for c in circuits(o.underlying) if popcount(c) == 3] == [0b1011]
    assert rank3_full_lattice_check(o)


def test_rank3_preconditions():
    with pytest.raises(PreconditionError):
        rank3_full_lattice_check(realize_uniform(3, 6))
    with pytest.raises(PreconditionError):
        rank3_full_lattice_check(realize_graphic(complete_graph(4)))
    with pytest.raises(PreconditionError):
        rank3_full_lattice_check(realize_uniform(2, 4))


# ---------------------------------------------------------------- uniform flow lattices

@given(st.sampled_from([(2, 4), (2, 5), (4, 6)]), st.integers(1, 10**6))
@settings(max_examples=20)
def test_even_rank_uniform_unit_flows(rn, seed):
    o = realize_uniform(*rn, seed=seed)
    lat = flow_lattice(o)
    assert lat.index == 1 and lat.lattice_rank == o.n
    for e in range(o.n):
        assert lattice_contains(lat, tuple(int(i == e) for i in range(o.n)))


@given(st.sampled_from([(1, 3), (3, 5), (3, 6)]), st.integers(1, 10**6))
@settings(max_examples=20)
def test_odd_rank_uniform_pair_flows(rn, seed):
    o = realize_uniform(*rn, seed=seed)
    lat = flow_lattice(o)
    for e, f in combinations(range(o.n), 2):
        hits = []
        for s in (1, -1):
            x = [0] * o.n
            x[e], x[f] = 1, s
            hits.append(lattice_contains(lat, x))
        assert any(hits)


# ---------------------------------------------------------------- catalog sweeps

def catalog_orientations(max_edges):
    from gspflow.catalog import graph_catalog
    for name, g in graph_catalog():
        if g.m <= max_edges:
            yield f"B({name})", realize_bicircular(g)
            if not any(g.is_loop(e) for e in range(g.m)):
                yield f"M({name})", realize_graphic(g)


def test_flowable_double_circuits_give_small_flows():
    checked = 0
    for name, o in catalog_orientations(9):
        lat = flow_lattice(o)
        for rep in enumerate_double_circuits(o.underlying):
            if flowable_hypothesis(rep) == "none":
                continue
            x = flow_from_double_circuit(o, rep)
            assert x.verify() and 1 <= len(x.support) <= 2, name
            assert all(abs(v) == 1 for v in x.entries if v), name
            assert lattice_contains(lat, x.entries), name
            checked += 1
    assert checked > 100


def test_cogsp_on_min_degree_three_catalog_graphs():
    import random
    from gspflow.catalog import graph_catalog
    rng = random.Random(8)
    count = 0
    for name, g in graph_catalog():
        if g.m > 9 or min(g.degrees()) < 3:
            continue
        o = realize_bicircular(g)
        for flip in [0] + [rng.getrandbits(g.m) for _ in range(3)]:
            assert certify_coGSP(reorient(o, flip)).verdict, (name, flip)
        count += 1
    assert count >= 20
