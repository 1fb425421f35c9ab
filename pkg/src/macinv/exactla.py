"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``. Subspaces carry an ordered frame
of basis labels (monomials, usually) and keep a canonical reduced basis, so
two subspaces on the same frame are equal iff their bases are.
"""

from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Sequence

from macinv import _kernels

Rational = Fraction
Matrix = list  # list[list[Fraction]]


class FrameMismatch(ValueError):
    pass


def as_int_row(vec: Sequence) -> list[int]:
    """Scale a rational vector to an integer vector with the same span."""
    den = 1
    for a in vec:
        if isinstance(a, Fraction) and a.denominator != 1:
            den = lcm(den, a.denominator)
    if den == 1:
        return [int(a) for a in vec]
    return [int(a * den) for a in vec]


def _echelon(rows: Iterable[Sequence], ncols: int):
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        if len(row) != ncols:
            raise ValueError(f"row of length {len(row)} in a {ncols}-column matrix")
        _kernels.insert_vector(basis, pivots, as_int_row(row))
    return basis, pivots


def _to_rational(basis, pivots) -> Matrix:
    return [[Fraction(a, row[pc]) for a in row] for row, pc in zip(basis, pivots)]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank of ``m``.

    Zero rows are dropped from the returned matrix, so its length is the rank.
    """
    if not m:
        return [], 0
    ncols = len(m[0])
    basis, pivots = _echelon(m, ncols)
    return _to_rational(basis, pivots), len(pivots)


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[1]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : m v = 0}, one basis vector per free column."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    red, _ = rref(m) if m else ([], 0)
    pivots = [next(j for j, a in enumerate(row) if a) for row in red]
    free = [j for j in range(ncols) if j not in set(pivots)]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        out.append(v)
    return out


class Subspace:
    """A finite-dimensional subspace of the span of ``frame``."""

    __slots__ = ("frame", "_index", "_rows", "_pivots")

    def __init__(self, frame: Sequence[Hashable], vectors: Iterable[Sequence] = ()):
        self.frame = tuple(frame)
        self._index = None
        self._rows, self._pivots = _echelon(vectors, len(self.frame))

    @classmethod
    def _from_echelon(cls, frame, rows, pivots):
        sub = cls.__new__(cls)
        sub.frame = tuple(frame)
        sub._index = None
        sub._rows, sub._pivots = rows, pivots
        return sub

    @classmethod
    def full(cls, frame):
        n = len(frame)
        return cls(frame, ([int(i == j) for j in range(n)] for i in range(n)))

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {lab: j for j, lab in enumerate(self.frame)}
        return self._index

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def __len__(self):
        return self.dim

    @property
    def basis(self) -> Matrix:
        """The reduced row-echelon basis, as rational rows."""
        return _to_rational(self._rows, self._pivots)

    @property
    def pivots(self) -> tuple:
        return tuple(self._pivots)

    def int_rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def pivot_labels(self) -> list:
        return [self.frame[pc] for pc in self._pivots]

    def _check(self, other: "Subspace"):
        if self.frame != other.frame:
            raise FrameMismatch("subspaces live on different frames")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.frame == other.frame and self._rows == other._rows

    def __hash__(self):
        return hash((self.frame, tuple(map(tuple, self._rows))))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, frame_size={len(self.frame)})"

    def contains(self, vec: Sequence) -> bool:
        red = _kernels.reduce_vector(self._rows, self._pivots, as_int_row(vec))
        return not any(red)

    def __contains__(self, vec):
        return self.contains(vec)

    def add_vectors(self, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(r) for r in self._rows]
        pivots = list(self._pivots)
        n = len(self.frame)
        for v in vectors:
            if len(v) != n:
                raise ValueError("vector length does not match frame")
            _kernels.insert_vector(rows, pivots, as_int_row(v))
        return Subspace._from_echelon(self.frame, rows, pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return self.add_vectors(other._rows)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection: reduce [a|a], [b|0] and keep the rows
        whose left half vanished."""
        self._check(other)
        n = len(self.frame)
        rows: list[list[int]] = []
        pivots: list[int] = []
        for a in self._rows:
            _kernels.insert_vector(rows, pivots, a + a)
        for b in other._rows:
            _kernels.insert_vector(rows, pivots, b + [0] * n)
        meet = [row[n:] for row, pc in zip(rows, pivots) if pc >= n]
        return Subspace(self.frame, meet)

    __and__ = intersect

    def restrict_to(self, keep: Iterable[int]) -> "Subspace":
        """Intersection with the coordinate subspace spanned by ``keep``.

        Solves for the combinations of basis rows whose coordinates outside
        ``keep`` vanish (a left-kernel computation); basis rows are never
        truncated.
        """
        keep = set(keep)
        drop = [j for j in range(len(self.frame)) if j not in keep]
        if not drop:
            return self
        nd = len(drop)
        rows: list[list[int]] = []
        pivots: list[int] = []
        for r in self._rows:
            _kernels.insert_vector(rows, pivots, [r[j] for j in drop] + r)
        meet = [row[nd:] for row, pc in zip(rows, pivots) if pc >= nd]
        return Subspace(self.frame, meet)

    def reframe(self, frame: Sequence[Hashable]) -> "Subspace":
        """The same subspace expressed on a larger (or reordered) frame."""
        frame = tuple(frame)
        pos = {lab: j for j, lab in enumerate(frame)}
        n = len(frame)
        vecs = []
        for r in self._rows:
            v = [0] * n
            for lab, a in zip(self.frame, r):
                if a:
                    if lab not in pos:
                        raise FrameMismatch(f"label {lab!r} missing from new frame")
                    v[pos[lab]] = a
            vecs.append(v)
        return Subspace(frame, vecs)
