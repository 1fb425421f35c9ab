"""Pure-Python fraction-free elimination kernels.

Rows are dense lists of Python ints. A basis is kept fully reduced: every
row is primitive, has a positive pivot, and every other row is zero in its
pivot column. The Cython module ``_ckernels`` exports the same functions.
"""

from math import gcd


def _primitive(vec):
    g = 0
    for a in vec:
        if a:
            g = gcd(g, a)
            if g == 1:
                return vec
    if g > 1:
        return [a // g for a in vec]
    return vec


def combine(p, vec, e, row):
    """Return the primitive part of ``p*vec - e*row``."""
    return _primitive([p * a - e * b for a, b in zip(vec, row)])


def reduce_vector(basis, pivots, vec):
    """Reduce ``vec`` against a fully reduced basis; returns a new list."""
    vec = list(vec)
    for row, pc in zip(basis, pivots):
        e = vec[pc]
        if e:
            vec = combine(row[pc], vec, e, row)
    return _primitive(vec)


def insert_vector(basis, pivots, vec):
    """Add ``vec`` to the span held in ``basis``/``pivots`` (in place).

    Returns the new pivot column, or -1 if ``vec`` was already in the span.
    """
    vec = reduce_vector(basis, pivots, vec)
    piv = -1
    for j, a in enumerate(vec):
        if a:
            piv = j
            break
    if piv < 0:
        return -1
    if vec[piv] < 0:
        vec = [-a for a in vec]
    p = vec[piv]
    for k, row in enumerate(basis):
        e = row[piv]
        if e:
            basis[k] = combine(p, row, e, vec)
            if basis[k][pivots[k]] < 0:
                basis[k] = [-a for a in basis[k]]
    pos = 0
    while pos < len(pivots) and pivots[pos] < piv:
        pos += 1
    basis.insert(pos, vec)
    pivots.insert(pos, piv)
    return piv
