"""Inverse systems: derivative closures and the invariants read off them.

An :class:`InverseSystem` stores the R-submodule of P generated by a list of
polynomials, i.e. the span of the generators and all of their partial
derivatives. Everything about A = R/ann(M) that this package needs (Hilbert
function, socle type, filtration dimensions) is computed from that span.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from macinv.apolar import (
    MAX_VARS, Poly, contract, divisors, grlex_key, monomials_of_degree,
)
from macinv.exactla import Subspace, as_int_row, nullspace, transpose
from macinv import _kernels

MAX_SOCLE_DEGREE = 6


def _derivative_vectors(sub: Subspace, var: int, index: dict):
    """Images of the basis of ``sub`` under d/dx_var, as vectors on ``index``."""
    frame = sub.frame
    n = len(index)
    out = []
    for row in sub.int_rows():
        v = [0] * n
        hit = False
        for m, a in zip(frame, row):
            if a and m[var]:
                d = list(m)
                d[var] -= 1
                v[index[tuple(d)]] += a * m[var]
                hit = True
        if hit:
            out.append(v)
    return out


class InverseSystem:
    """The R-module generated by ``generators`` under contraction."""

    def __init__(self, generators: Sequence[Poly]):
        gens = list(generators)
        if not gens:
            raise ValueError("an inverse system needs at least one generator")
        if any(g.is_zero() for g in gens):
            raise ValueError("generators must be nonzero")
        nvars = max(g.nvars for g in gens)
        if nvars > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables are supported")
        gens = [g.lift(nvars) for g in gens]
        s = max(g.degree for g in gens)
        if s > MAX_SOCLE_DEGREE:
            raise ValueError(f"socle degree {s} exceeds the supported maximum {MAX_SOCLE_DEGREE}")
        self.generators = tuple(gens)
        self.nvars = nvars
        self.s = s
        mons = set()
        for g in gens:
            for m in g.terms:
                mons.update(divisors(m))
        self.frame = tuple(sorted(mons, key=grlex_key, reverse=True))
        self.index = {m: j for j, m in enumerate(self.frame)}
        self.closure = self._build_closure()

    def _build_closure(self) -> Subspace:
        rows: list = []
        pivots: list = []
        queue = list(self.generators)
        while queue:
            p = queue.pop()
            if _kernels.insert_vector(rows, pivots, as_int_row(p.to_vector(self.index))) < 0:
                continue
            for i in range(self.nvars):
                d = contract(Poly.var(i, self.nvars), p)
                if d:
                    queue.append(d)
        return Subspace._from_echelon(self.frame, rows, pivots)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"InverseSystem([{gens}], dim={self.dim})"

    @property
    def dim(self) -> int:
        return self.closure.dim

    def basis_polys(self) -> list[Poly]:
        return [Poly.from_vector(row, self.frame, self.nvars) for row in self.closure.basis]

    def columns_up_to(self, i: int) -> list[int]:
        return [j for j, m in enumerate(self.frame) if sum(m) <= i]

    def le_subspace(self, i: int) -> Subspace:
        """closure intersected with P_{<=i}."""
        if i < 0:
            return Subspace(self.frame)
        return self.closure.restrict_to(self.columns_up_to(i))

    @cached_property
    def le_dims(self) -> tuple[int, ...]:
        """dim(closure ∩ P_{<=i}) for i = 0..s."""
        return tuple(self.le_subspace(i).dim for i in range(self.s + 1))

    def le_dim(self, i: int) -> int:
        if i < 0:
            return 0
        if i >= self.s:
            return self.dim
        return self.le_dims[i]

    def contract_span(self, k: int) -> Subspace:
        """m^k ∘ closure: the span of all order-k derivatives of the closure."""
        return self._contract_spans[min(k, self.s + 1)]

    @cached_property
    def _contract_spans(self) -> list[Subspace]:
        spans = [self.closure]
        for _ in range(self.s + 1):
            prev = spans[-1]
            vecs = []
            for i in range(self.nvars):
                vecs.extend(_derivative_vectors(prev, i, self.index))
            spans.append(Subspace(self.frame, vecs))
        return spans


def closure(gens: Sequence[Poly]) -> InverseSystem:
    return InverseSystem(gens)


def _as_system(sys_or_gens) -> InverseSystem:
    if isinstance(sys_or_gens, InverseSystem):
        return sys_or_gens
    if isinstance(sys_or_gens, Poly):
        return InverseSystem([sys_or_gens])
    return InverseSystem(sys_or_gens)


def local_hilbert_function(sys) -> tuple[int, ...]:
    """h_i = dim(M ∩ P_{<=i}) - dim(M ∩ P_{<=i-1}), i = 0..s."""
    sys = _as_system(sys)
    return tuple(sys.le_dim(i) - sys.le_dim(i - 1) for i in range(sys.s + 1))


def graded_hilbert_function(gens) -> tuple[int, ...]:
    """Hilbert function of R/ann(gens) for homogeneous generators.

    Computed degree by degree as the rank of the order-(deg f - i)
    derivatives of the generators; does not go through the closure.
    """
    gens = [gens] if isinstance(gens, Poly) else list(gens)
    if not gens:
        raise ValueError("no generators")
    for g in gens:
        if g.is_zero() or not g.is_homogeneous():
            raise ValueError(f"generator {g} is not a nonzero homogeneous form")
    nvars = max(g.nvars for g in gens)
    gens = [g.lift(nvars) for g in gens]
    s = max(g.degree for g in gens)
    out = []
    for i in range(s + 1):
        frame = monomials_of_degree(nvars, i)
        index = {m: j for j, m in enumerate(frame)}
        vecs = []
        for g in gens:
            k = g.degree - i
            if k < 0:
                continue
            ops = set()
            for m in g.terms:
                ops.update(a for a in divisors(m) if sum(a) == k)
            for a in ops:
                d = contract(Poly.monomial(a), g)
                if d:
                    vecs.append(d.to_vector(index))
        out.append(Subspace(frame, vecs).dim)
    return tuple(out)


def catalecticant(F: Poly, i: int) -> tuple[list, list, list]:
    """Matrix of R_i -> P_{s-i}, g -> g ∘ F, with rows indexed by R_i."""
    s = F.degree
    rows_frame = monomials_of_degree(F.nvars, i)
    cols_frame = monomials_of_degree(F.nvars, s - i)
    index = {m: j for j, m in enumerate(cols_frame)}
    mat = [contract(Poly.monomial(a), F).to_vector(index) for a in rows_frame]
    return mat, rows_frame, cols_frame


def apolar_ann_component(F: Poly, i: int) -> Subspace:
    """Degree-i part of ann_R(F) for a homogeneous form F."""
    if F.is_zero() or not F.is_homogeneous():
        raise ValueError("F must be a nonzero homogeneous form")
    if i < 0:
        raise ValueError("degree must be nonnegative")
    frame = monomials_of_degree(F.nvars, i)
    if i > F.degree:
        return Subspace.full(frame)
    mat, _, cols = catalecticant(F, i)
    return Subspace(frame, nullspace(transpose(mat), len(frame)) if cols else [])


def is_level(sys) -> tuple[bool, int | None]:
    """(True, type) iff the generators are a minimal set of degree-s
    polynomials with linearly independent degree-s forms."""
    sys = _as_system(sys)
    gens = sys.generators
    s = sys.s
    if any(g.degree != s for g in gens):
        return False, None
    tops = Subspace(sys.frame, [g.homogeneous_part(s).to_vector(sys.index) for g in gens])
    if tops.dim != len(gens):
        return False, None
    derived = sys.contract_span(1)
    vecs = [g.to_vector(sys.index) for g in gens]
    for j, v in enumerate(vecs):
        others = derived.add_vectors(vecs[:j] + vecs[j + 1:])
        if others.contains(v):
            return False, None
    return True, len(gens)


def socle_type(sys) -> tuple[int, ...]:
    """(e_0, ..., e_s) with e_i = dim soc∩m^i - dim soc∩m^{i+1}."""
    from macinv.qdecomp import ann_power_cap_power
    sys = _as_system(sys)
    caps = [ann_power_cap_power(sys, 1, i) for i in range(sys.s + 2)]
    return tuple(caps[i] - caps[i + 1] for i in range(sys.s + 1))


def is_compressed(sys) -> bool:
    """h_i equals the socle-type bound for every 1 <= i <= s."""
    from macinv.oseq import socle_bound
    sys = _as_system(sys)
    h = local_hilbert_function(sys)
    if sys.s == 0:
        return True
    bound = socle_bound(h[1], socle_type(sys))
    return all(h[i] == bound[i] for i in range(1, sys.s + 1))
