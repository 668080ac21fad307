"""Subsets of a ground set {0..n-1} encoded as Python ints."""

from itertools import combinations


def popcount(m):
    return bin(m).count("1")


def elements(m):
    """Ascending element indices of mask ``m``."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


def subsets_of_size(universe, k):
    """Masks of all k-subsets of ``universe`` (a mask), in lexicographic order."""
    for combo in combinations(elements(universe), k):
        yield mask_of(combo)


def all_submasks(universe):
    """Every submask of ``universe``, ascending as integers."""
    els = elements(universe)
    for bits in range(1 << len(els)):
        m = 0
        j = 0
        while bits:
            if bits & 1:
                m |= 1 << els[j]
            bits >>= 1
            j += 1
        yield m


def swap_bits(m, e, f):
    be = (m >> e) & 1
    bf = (m >> f) & 1
    if be == bf:
        return m
    return m ^ ((1 << e) | (1 << f))


def compress(m, keep):
    """Re-index the bits of ``m`` that lie in ``keep`` onto 0..|keep|-1."""
    out = 0
    j = 0
    for i in elements(keep):
        if m >> i & 1:
            out |= 1 << j
        j += 1
    return out


def expand(m, keep):
    """Inverse of :func:`compress`."""
    out = 0
    for j, i in enumerate(elements(keep)):
        if m >> j & 1:
            out |= 1 << i
    return out


def fmt(m, one_based=False):
    shift = 1 if one_based else 0
    return "{" + ",".join(str(i + shift) for i in elements(m)) + "}"
