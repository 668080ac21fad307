"""Exact matroid and oriented-matroid toolkit: bicircular matroids, double
circuits, flow lattices and small-support flow certification."""

__version__ = "0.1.0"
