import random

from hypothesis import given, settings, strategies as st

from macinv.apolar import Poly, monomials_up_to, parse_poly
from macinv.invsys import InverseSystem, local_hilbert_function
from macinv.qdecomp import (
    ann_power_cap_power, contract_span_dim, mpow_contract_dim, q0_check, q_decomposition,
)


def test_gorenstein_example():
    q = q_decomposition(parse_poly("x1^4 + x2^4 + x3^2"))
    assert q.hilbert == (1, 3, 2, 2, 1)
    assert q.q_hf[0] == (1, 2, 2, 2, 1)
    assert q.q_hf[2] == (0, 1, 0, 0, 0)
    assert q.q_hf[1] == q.q_hf[3] == (0,) * 5
    assert all(q.symmetric_rows())


def test_cubic_plus_square():
    q = q_decomposition(parse_poly("x1^3 + x2^2"))
    assert q.q_hf == ((1, 1, 1, 1), (0, 1, 0, 0), (0, 0, 0, 0))


def test_level_system_mpow_versus_direct_span():
    sys = InverseSystem([parse_poly("x1^4 + x3^2"), parse_poly("x2^4", 3)])
    assert [mpow_contract_dim(sys, k) for k in range(6)] == [10, 9, 6, 4, 2, 0]
    # the span of order-k derivatives is a different (smaller) space for type > 1
    assert [contract_span_dim(sys, k) for k in range(6)] == [10, 8, 5, 3, 1, 0]


def test_cap_is_zero_for_k_zero():
    sys = InverseSystem([parse_poly("x1^3")])
    assert ann_power_cap_power(sys, 0, 0) == 0
    # socle of k[x]/x^4 is x^3, which lies in m^3 but not m^4
    assert [ann_power_cap_power(sys, 1, i) for i in range(5)] == [1, 1, 1, 1, 0]


forms = st.dictionaries(st.tuples(*[st.integers(0, 4)] * 3).filter(lambda e: sum(e) <= 4),
                        st.integers(-3, 3), min_size=1, max_size=8).map(lambda t: Poly(t, 3))


@settings(max_examples=40, deadline=None)
@given(forms)
def test_q_decomposition_properties(f):
    if f.is_zero():
        return
    q = q_decomposition(f)
    h = local_hilbert_function(f)
    assert tuple(sum(row[i] for row in q.q_hf) for i in range(q.s + 1)) == h
    assert all(q.symmetric_rows())
    assert all(x >= 0 for row in q.c_dims for x in row)
    assert q0_check(f)


def test_q0_check_examples():
    assert q0_check(parse_poly("x1^4 + x2^3*x3 + x1^2"))
    rng = random.Random(0)
    mons = monomials_up_to(2, 3)
    f = Poly({m: rng.randint(-2, 2) for m in mons}, 2) + parse_poly("x1^3", 2)
    assert q0_check(f)
