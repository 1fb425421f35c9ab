"""Explicit inverse systems realizing given Hilbert functions.

Every builder returns generators that have been pushed back through the
Hilbert function engine; a mismatch raises :class:`ConstructionFault`
naming the branch that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from macinv.apolar import Poly, parse_poly
from macinv.invsys import InverseSystem, is_level, local_hilbert_function
from macinv.oseq import OSequence, gorenstein_necessary, is_o_sequence


class ConstructionFault(AssertionError):
    """A recipe produced the wrong Hilbert function (or type)."""

    def __init__(self, case_path: str, expected, got):
        super().__init__(f"{case_path}: expected {expected}, got {got}")
        self.case_path = case_path
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class Recipe:
    target_h: OSequence
    case_path: str
    generators: tuple[Poly, ...]


def _verified(h, path: str, gens, check_level: bool = True) -> Recipe:
    h = OSequence(h)
    sys = InverseSystem(gens)
    got = local_hilbert_function(sys)
    if got != tuple(h):
        raise ConstructionFault(path, h, OSequence(got))
    if check_level:
        lev = is_level(sys)
        if lev != (True, len(gens)):
            raise ConstructionFault(path, f"level of type {len(gens)}", lev)
    return Recipe(h, path, tuple(sys.generators))


def _p3(text: str) -> Poly:
    return parse_poly(text, 3)


# --- Gorenstein, socle degree 4 -------------------------------------------

def _x(i: int, e: int, nvars: int) -> Poly:
    """x_i^e with 1-based i."""
    return Poly.var(i - 1, nvars) ** e


def gorenstein_construct(h) -> Recipe:
    """A single f with A_f of Hilbert function h = (1,h1,h2,h3,1), h2 >= h3."""
    h = OSequence(h)
    if len(h) != 5 or h[0] != 1 or h[4] != 1:
        raise ValueError(f"expected (1,h1,h2,h3,1), got {h!r}")
    if not is_o_sequence(h):
        raise ValueError(f"{h!r} is not an O-sequence")
    if not gorenstein_necessary(h).admissible:
        raise ValueError(f"{h!r} fails the Gorenstein necessary condition")
    _, h1, h2, h3, _ = h
    if h2 < h3:
        raise ValueError(f"{h!r} has h2 < h3; no construction is known here")
    r = h1
    if h2 <= h1:
        f = Poly.const(0, r)
        for i in range(1, h3 + 1):
            f = f + _x(i, 4, r)
        for i in range(h3 + 1, h2 + 1):
            f = f + _x(i, 3, r)
        for i in range(h2 + 1, h1 + 1):
            f = f + _x(i, 2, r)
        return _verified(h, "gorenstein/h2<=h1", [f])

    n = h3
    g = _quadric_table(n, r)
    f = Poly.const(0, r)
    for i in range(1, n + 1):
        f = f + _x(i, 2, r) * g[i - 1]
    extra = h2 - h1
    if extra <= n:
        for i in range(1, extra + 1):
            f = f + _x(i, 2, r) * g[n + i - 1]
        path = "gorenstein/h2>h1/h2-h1<=n"
    else:
        for i in range(1, n + 1):
            f = f + _x(i, 2, r) * g[n + i - 1]
        for i in range(2 * n + 1, extra + n + 1):
            f = f + g[i - 1] ** 2
        path = "gorenstein/h2>h1/h2-h1>n"
    for i in range(n + 1, h1 + 1):
        f = f + _x(i, 3, r)
    return _verified(h, path, [f])


def _quadric_table(n: int, r: int) -> list[Poly]:
    """g_1..g_N: the squares, the cyclic neighbours x_i x_{i+1} and x_n x_1,
    then the remaining quadrics of x_1..x_n in grlex descending order."""
    g = [_x(i, 2, r) for i in range(1, n + 1)]
    g += [_x(i, 1, r) * _x(i + 1, 1, r) for i in range(1, n)]
    g.append(_x(n, 1, r) * _x(1, 1, r))
    seen = {p for p in g}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            q = _x(i, 1, r) * _x(j, 1, r)
            if q not in seen:
                seen.add(q)
                g.append(q)
    return g


# --- level, h1 = 3, socle degree 4 ------------------------------------------

_G_PRIME = ["x3^3", "x2^2*x3", "x1^2*x2", "x1*x3^2"]
_G_MULT = ["x3", "x2", "x1", "x3"]      # x_{4-i}, with x_0 read as x_3

_H4_2_SMALL_M = {
    (3, 4): ("x1^4 + x1^2*x2^2 + x3^2", "x2^4 + x1^2*x2^2"),
    (4, 5): ("x1^4 + x1^2*x2^2 + x3^4", "x2^4 + x1^2*x2^2"),
    (5, 6): ("x1^4 + x1^2*x2^2 + x3^4", "x2^4 + x1^2*x2^2 + x2^3*x3"),
}


def _h4_2(m: int, n: int) -> tuple[str, list[Poly]]:
    if m == 2:
        if n != 2:
            raise ValueError("m = 2 forces n = 2")
        return "level/h4=2/m=2", [_p3("x1^4 + x3^2"), _p3("x2^4")]
    if m >= n:
        g = []
        for i in range(1, 5):
            if i <= n - 2:
                g.append(_p3(_G_MULT[i - 1]) * _p3(_G_PRIME[i - 1]))
            elif i <= m - 2:
                g.append(_p3(_G_PRIME[i - 1]))
            else:
                g.append(Poly.const(0, 3))
        f1 = _p3("x1^4") + g[0] + g[1]
        f2 = _p3("x2^4") + g[2] + g[3]
        return "level/h4=2/m>=n", [f1, f2]
    if (m, n) not in _H4_2_SMALL_M:
        raise ValueError(f"(m,n) = ({m},{n}) does not occur with h4 = 2")
    a, b = _H4_2_SMALL_M[(m, n)]
    return f"level/h4=2/m<n/({m},{n})", [_p3(a), _p3(b)]


def _h4_3(m: int, n: int) -> tuple[str, list[Poly]]:
    if n <= 6:
        path, gens = _h4_2(m, n)
        f3 = "x3^4" if m >= n else "x1^2*x2^2"
        return f"{path}|h4=3/n<=6", gens + [_p3(f3)]
    path, gens = _h4_2(m, 6)
    if m == 6:
        p = ["x2^2*x3^2", "x1^2*x2^2", "x1^2*x3^2"]
        f3 = " + ".join(p[: n - 6])
    elif m == 5:
        f3 = "x2^2*x3^2"
    else:
        raise ValueError(f"n = {n} needs m >= 5")
    return f"{path}|h4=3/7<=n<=9/m={m}", gens + [_p3(f3)]


def _branch_a(m: int, n: int) -> bool:
    return (m >= n and n <= 6) or (n >= 7 and m == 6)


def _branch_b(m: int, n: int) -> bool:
    return (m < n <= 6) or (m, n) == (5, 7)


def _h4_4(m: int, n: int) -> tuple[str, list[Poly]]:
    if n <= 9:
        path, gens = _h4_3(m, n)
        if _branch_a(m, n):
            f4 = "x2^3*x3"
        elif _branch_b(m, n):
            f4 = "x1^3*x2"
        else:
            raise ValueError(f"no h4 = 4 branch for (m,n) = ({m},{n})")
        return f"{path}|h4=4/n<=9", gens + [_p3(f4)]
    path, gens = _h4_3(6, 9)
    return f"{path}|h4=4/n=10", gens + [_p3("x1^2*x2*x3")]


_TAIL_8_15 = ["x1^2*x2^2", "x1^2*x3^2", "x2*x3^3", "x1*x2^3",
              "x1^3*x3", "x2^3*x3", "x1*x2^2*x3", "x1*x2*x3^2"]


def _h4_big_wide(m: int, n: int, h4: int) -> tuple[str, list[Poly]]:
    path, gens = _h4_4(m, n)
    a, b = _branch_a(m, n), _branch_b(m, n)
    extra = []
    if a:
        extra += ["x1^3*x2", "x1*x3^3"]
    elif b:
        extra += ["x1*x2^3", "x3^4"]
    else:
        raise ValueError(f"no h4 >= 5 branch for (m,n) = ({m},{n})")
    if h4 >= 7:
        if n >= 7 and m == 6:
            extra.append("x3^4")
        elif (m, n) == (5, 7):
            extra.append("x2^3*x3")
        else:
            raise ValueError(f"f7 is undefined for (m,n) = ({m},{n})")
    if h4 >= 8:
        extra += _TAIL_8_15
    return f"{path}|h4>=5/n>=h4 or h4>=11", gens + [_p3(e) for e in extra[: h4 - 4]]


def _h4_big_narrow(m: int, n: int, h4: int) -> tuple[str, list[Poly]]:
    q1 = "x3^2" if m == 3 else "x3^3"
    q2 = "x2^2*x3" if m >= 5 else "0"
    q3 = "x1*x3^2" if m == 6 else "0"
    gens = [f"x1^4 + {q1} + {q2}", f"x2^4 + {q3}", "x1^3*x2", "x1*x2^3", "x1^2*x2^2"]
    if h4 >= 6:
        gens += ["x3^4", "x2^3*x3", "x2*x3^3"]
    if h4 >= 9:
        if n == 7:
            gens.append("x2^2*x3^2")
        elif n >= 8:
            gens.append("x1*x3^3")
        else:
            raise ValueError(f"f9 is undefined for n = {n}")
    if h4 >= 10:
        if n == 8:
            gens.append("x2^2*x3^2")
        elif n == 9:
            gens.append("x1^3*x3")
        else:
            raise ValueError(f"f10 is undefined for n = {n}")
    return f"level/h4>=5/n<h4<=10/m={m}", [_p3(g) for g in gens[:h4]]


def level_construct_h1_3(h) -> Recipe:
    """h4 polynomials in x1,x2,x3 whose inverse system is level with
    Hilbert function h = (1,3,h2,h3,h4), h4 >= 2."""
    h = OSequence(h)
    if len(h) != 5 or h[0] != 1 or h[1] != 3:
        raise ValueError(f"expected (1,3,h2,h3,h4), got {h!r}")
    _, _, m, n, h4 = h
    if h4 < 2:
        raise ValueError("h4 must be at least 2")
    if not is_o_sequence(h):
        raise ValueError(f"{h!r} is not an O-sequence")
    if n > 3 * h4:
        raise ValueError(f"{h!r} violates h3 <= 3*h4")
    if h4 == 2:
        path, gens = _h4_2(m, n)
    elif h4 == 3:
        path, gens = _h4_3(m, n)
    elif h4 == 4:
        path, gens = _h4_4(m, n)
    elif n >= h4 or h4 >= 11:
        path, gens = _h4_big_wide(m, n, h4)
    else:
        path, gens = _h4_big_narrow(m, n, h4)
    if len(gens) != h4:
        raise ConstructionFault(path, f"{h4} generators", len(gens))
    return _verified(h, path, gens)


def construct(h) -> Recipe:
    """Dispatch on h4 for h1 = 3; other Gorenstein shapes go to gorenstein_construct."""
    h = OSequence(h)
    if len(h) == 5 and h[1] == 3 and h[4] >= 2:
        return level_construct_h1_3(h)
    return gorenstein_construct(h)


# --- non-canonically-graded witnesses ---------------------------------------

def _witness_small(n: int, m: int) -> str:
    table = {
        (2, 2): "x1^3*x2",
        (3, 3): "x1^4 + x2^4 + x2^3*x3",
        (3, 4): "x1^4 + x2^4 + x2^3*x3 + x1^3*x2",
        (3, 5): "x1^4 + x2^4 + x2^3*x3 + x1^3*x2 + x1*x2^2*x3",
    }
    return table[(n, m)]


def witness_quadrics(n: int) -> list[Poly]:
    """p_1, ..., p_{C(n+1,2)-1}: every quadric except x_n^2, in the order
    E (squares and x2 x_n), B (neighbours, then x1 x_n), C, D."""
    if n < 4:
        raise ValueError("the quadric split is used for n >= 4")
    v = lambda i: Poly.var(i - 1, n)
    p = [v(i) ** 2 for i in range(1, n)] + [v(2) * v(n)]
    p += [v(i) * v(i + 1) for i in range(1, n)] + [v(1) * v(n)]
    p += [v(i) * v(j) for i in range(1, n) for j in range(i + 2, n)]
    p += [v(i) * v(n) for i in range(3, n - 1)]
    assert len(p) == comb(n + 1, 2) - 1
    return p


def _witness_terms(n: int) -> list[Poly]:
    v = lambda i: Poly.var(i - 1, n)
    p = witness_quadrics(n)
    total = comb(n + 1, 2) - 1
    d_start = total - (n - 4)           # D occupies the last n-4 slots
    g = []
    for i in range(1, total + 1):
        if i <= n - 1:
            g.append(v(i) ** 4)
        elif i == n:
            g.append(v(2) ** 3 * v(n))
        elif i == n + 2:
            g.append(v(2) ** 2 * v(3) ** 2)
        elif n + 1 <= i < 2 * n:
            g.append(v(i - n) ** 2 * p[i - 1])
        elif i == 2 * n:
            g.append(v(1) * v(2) ** 2 * v(n))
        elif i <= d_start:
            g.append(p[i - 1] ** 2)
        else:
            # p_i = x_j x_n; trade one x_n of p_i^2 for x_2: x_2 x_j^2 x_n
            g.append(_swap_xn_for_x2(p[i - 1] ** 2, n))
    return g


def _swap_xn_for_x2(mono: Poly, n: int) -> Poly:
    ((exps, c),) = mono.terms.items()
    e = list(exps)
    if e[n - 1] == 0:
        raise ValueError("monomial has no x_n factor")
    e[n - 1] -= 1
    e[1] += 1
    return Poly({tuple(e): c}, n)


def _check_range(n: int, m: int):
    if not 2 <= n <= 13:
        raise ValueError("n must lie in 2..13")
    if not n <= m <= comb(n + 1, 2) - 1:
        raise ValueError(f"m must lie in {n}..{comb(n + 1, 2) - 1}")


def witness_F(n: int, m: int) -> Poly:
    """A quartic form in x1..xn with Hilbert function (1,n,m,n,1) and no
    monomial divisible by x_n^2."""
    _check_range(n, m)
    if n <= 3:
        F = parse_poly(_witness_small(n, m), n)
    else:
        F = Poly.const(0, n)
        for g in _witness_terms(n)[:m]:
            F = F + g
    if any(e[n - 1] >= 2 for e in F.terms):
        raise ConstructionFault(f"witness/F/n={n}", "no x_n^2 multiples", F)
    got = local_hilbert_function(InverseSystem([F]))
    if got != (1, n, m, n, 1):
        raise ConstructionFault(f"witness/F/n={n}", (1, n, m, n, 1), got)
    return F


def witness_G(n: int, m: int) -> Poly:
    G = witness_F(n, m) + Poly.var(n - 1, n) ** 3
    got = local_hilbert_function(InverseSystem([G]))
    if got != (1, n, m, n, 1):
        raise ConstructionFault(f"witness/G/n={n}", (1, n, m, n, 1), got)
    return G


STANLEY_CUBICS = ["x^3", "x^2*y", "x^2*z", "x*y^2", "x*y*z", "x*z^2",
                  "y^3", "y^2*z", "y*z^2", "z^3"]


def stanley_witness() -> tuple[Poly, Poly]:
    """F = sum x_i mu_i over the ten cubics mu_i in x = x11, y = x12, z = x13,
    and G = F + x1^3 + ... + x10^3."""
    names = {"x": "x11", "y": "x12", "z": "x13"}
    terms = []
    for i, mu in enumerate(STANLEY_CUBICS, start=1):
        mu13 = "*".join(names[f[0]] + f[1:] for f in mu.split("*"))
        terms.append(f"x{i}*{mu13}")
    F = parse_poly(" + ".join(terms), 13)
    G = F
    for i in range(10):
        G = G + Poly.var(i, 13) ** 3
    target = (1, 13, 12, 13, 1)
    for label, p in (("F", F), ("G", G)):
        got = local_hilbert_function(InverseSystem([p]))
        if got != target:
            raise ConstructionFault(f"stanley/{label}", target, got)
    return F, G
