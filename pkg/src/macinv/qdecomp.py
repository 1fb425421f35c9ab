"""The C(a) filtration and Q(a) decomposition of gr(A), computed inside P.

Nothing here builds a multiplication table for A. Under the perfect pairing
A x M -> K (M the inverse system) the relevant ideals of A are orthogonal
to subspaces of M:

    (0 :_A m^k)  is orthogonal to  m^k ∘ M
    m^i A        is orthogonal to  M ∩ P_{<=i-1}

so every dimension below is a rank computation on M.
"""

from __future__ import annotations

from dataclasses import dataclass

from macinv.apolar import Poly, top_form
from macinv.invsys import InverseSystem, _as_system, graded_hilbert_function, local_hilbert_function


def contract_span_dim(sys, k: int) -> int:
    """dim(m^k ∘ M), the span of all order-k derivatives of the closure."""
    sys = _as_system(sys)
    if k < 0:
        raise ValueError("k must be nonnegative")
    return sys.contract_span(k).dim


def mpow_contract_dim(sys, k: int) -> int:
    """dim_K m^k A = dim M - dim(M ∩ P_{<=k-1}).

    Cross-checked against the rank of the order >= k coordinates of the
    closure (the pairing of M with the monomials x^a, |a| >= k). For a
    single generator A is isomorphic to its dual module, so the direct
    span m^k ∘ M has this dimension too; that is asserted as well.
    """
    sys = _as_system(sys)
    if k < 0:
        raise ValueError("k must be nonnegative")
    via_kernel = sys.dim - sys.le_dim(k - 1)
    high = [j for j, m in enumerate(sys.frame) if sum(m) >= k]
    via_pairing = _column_rank(sys, high)
    assert via_kernel == via_pairing, (k, via_kernel, via_pairing)
    if len(sys.generators) == 1:
        direct = sys.contract_span(k).dim
        assert direct == via_kernel, (k, direct, via_kernel)
    return via_kernel


def _column_rank(sys: InverseSystem, cols: list[int]) -> int:
    from macinv.exactla import rank
    rows = sys.closure.int_rows()
    if not rows or not cols:
        return 0
    return rank([[r[j] for j in cols] for r in rows])


def ann_power_cap_power(sys, k: int, i: int) -> int:
    """dim_K[(0 :_A m^k) ∩ m^i A]."""
    sys = _as_system(sys)
    if i < 0:
        raise ValueError("i must be nonnegative")
    if k <= 0:
        return 0
    dim_a = sys.dim
    S = sys.contract_span(k)
    T = sys.le_subspace(i - 1)
    dim_u = dim_a - S.dim
    dim_w = dim_a - T.dim
    dim_sum = dim_a - S.intersect(T).dim
    return dim_u + dim_w - dim_sum


@dataclass(frozen=True)
class QDecomposition:
    s: int
    hilbert: tuple[int, ...]
    c_dims: tuple[tuple[int, ...], ...]   # c_dims[a][i] = dim C(a)_i, a = 0..s+1
    q_hf: tuple[tuple[int, ...], ...]     # q_hf[a][i] = dim Q(a)_i, a = 0..max(s-1, 0)

    def is_symmetric(self, a: int) -> bool:
        """Q(a)_i == Q(a)_{s-a-i} for all i (zero outside 0..s-a)."""
        row = self.q_hf[a]
        top = self.s - a
        for i in range(self.s + 1):
            j = top - i
            other = row[j] if 0 <= j <= self.s else 0
            if row[i] != other:
                return False
        return True

    def symmetric_rows(self) -> list[bool]:
        return [self.is_symmetric(a) for a in range(len(self.q_hf))]


def q_decomposition(sys) -> QDecomposition:
    sys = _as_system(sys)
    s = sys.s
    cache: dict = {}

    def cap(k, i):
        if (k, i) not in cache:
            cache[(k, i)] = ann_power_cap_power(sys, k, i)
        return cache[(k, i)]

    c_dims = []
    for a in range(s + 2):
        row = []
        for i in range(s + 1):
            k = s + 1 - a - i
            row.append(cap(k, i) - cap(k, i + 1))
        c_dims.append(tuple(row))
    q_hf = tuple(
        tuple(c_dims[a][i] - c_dims[a + 1][i] for i in range(s + 1)) for a in range(max(s, 1))
    )
    return QDecomposition(s, local_hilbert_function(sys), tuple(c_dims), q_hf)


def q0_check(f: Poly) -> bool:
    """Q(0) of A_f has the Hilbert function of R/ann(f[s])."""
    sys = InverseSystem([f])
    q = q_decomposition(sys)
    return q.q_hf[0] == graded_hilbert_function(top_form(f, sys.s))
