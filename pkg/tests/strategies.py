"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from gspflow.graphs import MultiGraph
from gspflow.matroid import make_graphic, make_lattice_path, make_uniform, minor


@st.composite
def small_graphs(draw, max_vertices=5, max_edges=8):
    nv = draw(st.integers(1, max_vertices))
    vert = st.integers(0, nv - 1)
    return MultiGraph(nv, tuple(draw(st.lists(st.tuples(vert, vert), max_size=max_edges))))


@st.composite
def bounding_paths(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    a = sorted(draw(st.sets(st.integers(0, n - 1), min_size=k, max_size=k)))
    b = sorted(draw(st.sets(st.integers(0, n - 1), min_size=k, max_size=k)))
    lo = [min(x, y) for x, y in zip(a, b)]
    hi = [max(x, y) for x, y in zip(a, b)]
    upper = "".join("N" if i in lo else "E" for i in range(n))
    lower = "".join("N" if i in hi else "E" for i in range(n))
    return upper, lower


@st.composite
def matroids(draw):
    kind = draw(st.sampled_from(("uniform", "graphic", "lpm", "dual", "minor")))
    if kind == "uniform":
        n = draw(st.integers(0, 7))
        return make_uniform(draw(st.integers(0, n)), n)
    if kind == "graphic":
        return make_graphic(draw(small_graphs()))
    if kind == "lpm":
        return make_lattice_path(*draw(bounding_paths()))
    base = draw(matroids())
    if kind == "dual":
        return base.dual()
    delete = draw(st.integers(0, base.full))
    contract = draw(st.integers(0, base.full)) & ~delete
    return minor(base, delete, contract)
