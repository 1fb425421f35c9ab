"""Certificates that a local Gorenstein algebra A_G is not canonically graded.

Suppose A_G were isomorphic to its associated graded ring A_F, where
x_n^2 kills F. An isomorphism sends x_n to some w = l + q with l linear and
q of order >= 2, and w^2 must kill G. For a quartic G the bookkeeping is:

* degree-2 part of w^2 ∘ G is l^2 ∘ G[4]; l*q ∘ G[4] has degree <= 1 and
  q^2 ∘ G has degree <= 0, so these comparisons see only l.
* the x_t-coefficient of w^2 ∘ G is that of l^2 ∘ G[3] plus 2 l q2 ∘ G[4]
  (q2 the quadratic part of q). The second term vanishes whenever no
  (x_a mu) ∘ G[4] has an x_t term for a surviving unknown u_a; that is the
  ``tail_ok`` certificate.

Each comparison gives a quadratic form in u = (u_1, ..., u_n), the linear
coefficients of w, that must vanish. The engine derives u = 0 from these,
which contradicts w being part of a coordinate change. The map itself is
never represented.

Unknowns and variables are 0-based here; transcripts print u1, u2, ...
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb

from macinv.apolar import Monomial, Poly, contract, format_monomial, monomials_of_degree
from macinv.exactla import Subspace, rank
from macinv.invsys import InverseSystem, local_hilbert_function

log = logging.getLogger(__name__)


class UQuadraticForm:
    """sum_{j<=k} c_jk u_j u_k over the rationals."""

    def __init__(self, n_unknowns: int, coefficients: dict | None = None):
        self.n_unknowns = n_unknowns
        self.coefficients = {}
        for (j, k), c in (coefficients or {}).items():
            key = (min(j, k), max(j, k))
            c = Fraction(c) + self.coefficients.get(key, 0)
            if c:
                self.coefficients[key] = c
            else:
                self.coefficients.pop(key, None)

    def __eq__(self, other):
        return (isinstance(other, UQuadraticForm) and self.n_unknowns == other.n_unknowns
                and self.coefficients == other.coefficients)

    def __repr__(self):
        return f"UQuadraticForm({self})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for (j, k), c in sorted(self.coefficients.items()):
            mono = f"u{j + 1}^2" if j == k else f"u{j + 1}*u{k + 1}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def support(self) -> set[int]:
        return {i for key in self.coefficients for i in key}

    @property
    def matrix(self) -> list[list[Fraction]]:
        """The symmetric matrix M with form = u^T M u."""
        n = self.n_unknowns
        M = [[Fraction(0)] * n for _ in range(n)]
        for (j, k), c in self.coefficients.items():
            if j == k:
                M[j][j] = c
            else:
                M[j][k] = M[k][j] = c / 2
        return M

    def evaluate(self, u) -> Fraction:
        return sum((c * u[j] * u[k] for (j, k), c in self.coefficients.items()), Fraction(0))

    def restrict(self, zeroed) -> "UQuadraticForm":
        """Substitute u_j = 0 for j in ``zeroed``."""
        zeroed = set(zeroed)
        return UQuadraticForm(self.n_unknowns, {
            key: c for key, c in self.coefficients.items() if not zeroed.intersection(key)})

    def square_root_direction(self):
        """If the form is lambda * (v . u)^2, return v (integer, primitive); else None."""
        if self.is_zero():
            return None
        M = self.matrix
        if rank(M) != 1:
            return None
        row = next(r for r in M if any(r))
        return Subspace(range(self.n_unknowns), [row]).int_rows()[0]


def _check_quartic(G: Poly):
    if G.degree != 4:
        raise ValueError("these comparisons are worked out for socle degree 4 only")


def degree2_constraints(G: Poly) -> dict[Monomial, UQuadraticForm]:
    """For each quadric mu, the coefficient of mu in l_u^2 ∘ G[4] as a form in u."""
    _check_quartic(G)
    n = G.nvars
    top = G.homogeneous_part(4)
    forms: dict[Monomial, dict] = {mu: {} for mu in monomials_of_degree(n, 2)}
    for j in range(n):
        for k in range(j, n):
            op = Poly.var(j, n) * Poly.var(k, n)
            weight = 1 if j == k else 2
            for mu, c in contract(op, top).terms.items():
                forms[mu][(j, k)] = forms[mu].get((j, k), 0) + weight * c
    return {mu: UQuadraticForm(n, coeffs) for mu, coeffs in forms.items()}


def degree1_constraint(G: Poly, t: int, zeroed=()) -> tuple[UQuadraticForm, bool]:
    """Coefficient of x_t in l_u^2 ∘ G[3] with the ``zeroed`` unknowns set to
    0, and whether the unrepresented quadratic tail of w is certified not to
    reach that coefficient."""
    _check_quartic(G)
    n = G.nvars
    zeroed = set(zeroed)
    cubic = G.homogeneous_part(3)
    xt = tuple(int(i == t) for i in range(n))
    coeffs = {}
    for j in range(n):
        for k in range(j, n):
            c = contract(Poly.var(j, n) * Poly.var(k, n), cubic).coeff(xt)
            if c:
                coeffs[(j, k)] = (1 if j == k else 2) * c
    form = UQuadraticForm(n, coeffs).restrict(zeroed)
    top = G.homogeneous_part(4)
    tail_ok = True
    for a in range(n):
        if a in zeroed:
            continue
        da = contract(Poly.var(a, n), top)
        if not da:
            continue
        for mu in monomials_of_degree(n, 2):
            if contract(Poly.monomial(mu), da).coeff(xt):
                tail_ok = False
                break
        if not tail_ok:
            break
    return form, tail_ok


# --- the engine ---------------------------------------------------------------

@dataclass(frozen=True)
class FixedComparison:
    """A degree-2 coefficient comparison; its form never changes."""
    label: str
    form: UQuadraticForm
    target: int | None = None

    def evaluate(self, zeroed):
        return self.form.restrict(zeroed), True


@dataclass(frozen=True)
class LinearCoefficientComparison:
    """The x_t-coefficient comparison; re-derived as unknowns get forced,
    because the tail certificate depends on which u_a are still alive."""
    G: Poly
    t: int
    target: int | None = None

    @property
    def label(self) -> str:
        return f"x{self.t + 1}"

    def evaluate(self, zeroed):
        return degree1_constraint(self.G, self.t, zeroed)


class Status(Enum):
    PROVEN = "proven"
    UNKNOWN = "unknown"
    REFUSED = "refused"


@dataclass
class ForcingOutcome:
    status: Status
    n_unknowns: int
    forced_order: list = field(default_factory=list)   # (unknown, comparison label, rule)
    transcript: list = field(default_factory=list)
    note: str = ""
    crosscheck: bool | None = None

    @property
    def proven(self) -> bool:
        return self.status is Status.PROVEN

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "n_unknowns": self.n_unknowns,
            "forced_order": [{"unknown": f"u{j + 1}", "comparison": lab, "rule": rule}
                             for j, lab, rule in self.forced_order],
            "transcript": list(self.transcript),
            "note": self.note,
            "crosscheck": self.crosscheck,
        }


def _pair_rule(f1: UQuadraticForm, f2: UQuadraticForm, j: int, k: int) -> bool:
    """{a u_j^2 + b u_j u_k, c u_k^2 + d u_j u_k} = 0 with a, c != 0 and
    ac != bd forces u_j = u_k = 0. (With a = 0, u_k = 0 and u_j free solves
    both, so a and c must both be nonzero.)"""
    jk = (min(j, k), max(j, k))
    if not set(f1.coefficients) <= {(j, j), jk} or not set(f2.coefficients) <= {(k, k), jk}:
        return False
    a = f1.coefficients.get((j, j), 0)
    b = f1.coefficients.get(jk, 0)
    c = f2.coefficients.get((k, k), 0)
    d = f2.coefficients.get(jk, 0)
    return a != 0 and c != 0 and a * c != b * d


def forcing_engine(schedule, n_unknowns: int) -> ForcingOutcome:
    """Run the comparisons in order, repeating passes until nothing changes.

    R1: c*u_j^2 = 0 forces u_j = 0.
    R2: the pair rule of :func:`_pair_rule`.
    R3: a rank-one form lambda*L(u)^2 forces the linear relation L = 0;
        any unknown lying in the span of the accumulated relations is zero.
    Degree-1 comparisons are used only while their tail certificate holds.
    """
    out = ForcingOutcome(Status.UNKNOWN, n_unknowns)
    say = out.transcript.append
    relations = Subspace(range(n_unknowns))
    zeroed: list[int] = []
    used: set[int] = set()

    def force(j, label, rule):
        if j in zeroed:
            return
        zeroed.append(j)
        out.forced_order.append((j, label, rule))
        say(f"  u{j + 1} = 0  [{rule}, from {label}]")

    def absorb(v, label):
        nonlocal relations
        relations = relations.add_vectors([v])
        for j in range(n_unknowns):
            if j not in zeroed and relations.contains([int(i == j) for i in range(n_unknowns)]):
                direct = all(bool(a) == (i == j) for i, a in enumerate(v))
                force(j, label, "R1" if direct else "R3")

    passes = 0
    progress = True
    while progress and len(zeroed) < n_unknowns:
        progress = False
        passes += 1
        say(f"pass {passes}")
        pending = []
        for idx, entry in enumerate(schedule):
            if idx in used:
                continue
            form, ok = entry.evaluate(zeroed)
            if not ok:
                say(f"  {entry.label}: tail not certified yet, skipped")
                continue
            say(f"  {entry.label}: {form} = 0")
            if form.is_zero():
                used.add(idx)
                continue
            v = form.square_root_direction()
            if v is not None:
                used.add(idx)
                before = len(zeroed)
                absorb(v, entry.label)
                progress |= len(zeroed) > before
                continue
            pending.append((idx, entry.label, form))
        for (i1, l1, f1), (i2, l2, f2) in combinations(pending, 2):
            for g1, g2 in ((f1, f2), (f2, f1)):
                sup = g1.support | g2.support
                if len(sup) != 2:
                    continue
                j, k = sorted(sup)
                if _pair_rule(g1, g2, j, k) or _pair_rule(g1, g2, k, j):
                    used.update((i1, i2))
                    label = f"{l1} & {l2}"
                    for x in (j, k):
                        if x not in zeroed:
                            force(x, label, "R2")
                            progress = True
                    break
    if len(zeroed) == n_unknowns:
        out.status = Status.PROVEN
        say("all linear coefficients vanish: the image of the variable is not a unit")
    else:
        alive = ", ".join(f"u{j + 1}" for j in range(n_unknowns) if j not in zeroed)
        say(f"stuck with {alive} undetermined")
    for line in out.transcript:
        log.debug(line)
    return out


# --- the witnesses ------------------------------------------------------------

def _mono(n: int, *idx1) -> Monomial:
    """Monomial from 1-based variable indices, repeated for powers."""
    e = [0] * n
    for i in idx1:
        e[i - 1] += 1
    return tuple(e)


def ncg_schedule(n: int, m: int) -> list[Monomial]:
    """Quadrics whose coefficients kill u_1..u_{n-1} for the witness G(n, m)."""
    if n <= 3:
        return list(monomials_of_degree(n, 2))
    sq = lambda i: _mono(n, i, i)
    pr = lambda i, j: _mono(n, i, j)
    if m == n:
        return [sq(1), pr(2, n)] + [sq(i) for i in range(3, n)]
    if m in (n + 1, n + 2):
        return [pr(1, 2), pr(2, n)] + [sq(i) for i in range(3, n)]
    if m < 2 * n:
        k = m - n
        return ([pr(1, 2), pr(2, n)] + [pr(i, i + 1) for i in range(3, k + 1)]
                + [sq(i) for i in range(k + 1, n)])
    return [pr(1, 2), pr(1, n)] + [pr(i, i + 1) for i in range(3, n)]


def _schedule_entries(G: Poly, quadrics, linear_vars) -> list:
    forms = degree2_constraints(G)
    n = G.nvars
    entries = [FixedComparison(format_monomial(mu), forms[mu]) for mu in quadrics]
    entries += [LinearCoefficientComparison(G, t, target=t) for t in linear_vars]
    assert all(0 <= t < n for t in linear_vars)
    return entries


def verify_not_canonically_graded(n: int, m: int, crosscheck_prime: int = 13) -> ForcingOutcome:
    """Certify that A_G, G = witness_G(n, m), is not canonically graded."""
    from macinv.construct import witness_F, witness_G

    if not 2 <= n <= 13:
        raise ValueError("n must lie in 2..13")
    top = comb(n + 1, 2)
    if not n <= m <= top:
        raise ValueError(f"m must lie in {n}..{top}")
    if m == top:
        return ForcingOutcome(
            Status.REFUSED, n,
            transcript=[f"(1,{n},{m},{n},1) is compressed"],
            note="compressed: every such algebra is canonically graded")
    F = witness_F(n, m)
    G = witness_G(n, m)
    xn = Poly.var(n - 1, n)
    assert not contract(xn ** 2, F), "x_n^2 must kill F"
    h = (1, n, m, n, 1)
    assert local_hilbert_function(InverseSystem([G])) == h
    h_text = "(" + ",".join(map(str, h)) + ")"
    schedule = _schedule_entries(G, ncg_schedule(n, m), [n - 1])
    out = forcing_engine(schedule, n)
    out.transcript.insert(0, f"G = F + x{n}^3 with Hilbert function {h_text}; x{n}^2 kills F")
    if out.proven:
        out.note = f"A_G with Hilbert function {h_text} is not canonically graded"
        if n <= 4:
            out.crosscheck = optional_finite_field_crosscheck(G, crosscheck_prime)
            out.transcript.append(f"F_{crosscheck_prime} exhaustive check agrees: {out.crosscheck}")
    return out


def verify_stanley() -> ForcingOutcome:
    """The 13-variable witness with the nonunimodal Hilbert function (1,13,12,13,1)."""
    from macinv.construct import stanley_witness

    F, G = stanley_witness()
    x1 = Poly.var(0, 13)
    assert not contract(x1 ** 2, F), "x1^2 must kill F"
    quadrics = [_mono(13, 1, 11), _mono(13, 7, 12), _mono(13, 10, 13)]
    schedule = _schedule_entries(G, quadrics, list(range(10)))
    out = forcing_engine(schedule, 13)
    out.transcript.insert(0, "G = F + x1^3 + ... + x10^3 with Hilbert function (1,13,12,13,1)")
    if out.proven:
        out.note = "A_G with Hilbert function (1,13,12,13,1) is not canonically graded"
    return out


def optional_finite_field_crosscheck(G: Poly, p: int = 13, unknowns=None,
                                     limit: int = 2_000_000) -> bool:
    """Exhaustively check over F_p that l_u^2 ∘ G[4] = 0 forces the chosen
    unknowns (default u_1..u_{n-1}) to vanish."""
    import numpy as np

    n = G.nvars
    if p ** n > limit:
        raise ValueError(f"{p}^{n} points exceed the search limit {limit}")
    unknowns = list(range(n - 1)) if unknowns is None else list(unknowns)
    forms = [f for f in degree2_constraints(G).values() if not f.is_zero()]
    grids = np.meshgrid(*[np.arange(p, dtype=np.int64)] * n, indexing="ij")
    U = np.stack([g.ravel() for g in grids], axis=1)
    alive = np.ones(len(U), dtype=bool)
    for f in forms:
        val = np.zeros(len(U), dtype=np.int64)
        for (j, k), c in f.coefficients.items():
            if c.denominator % p == 0:
                raise ValueError(f"{p} divides a denominator")
            cm = c.numerator * pow(c.denominator, -1, p) % p
            val = (val + cm * (U[:, j] * U[:, k] % p)) % p
        alive &= val == 0
    if not unknowns:
        return True
    return not bool(np.any(alive & np.any(U[:, unknowns] != 0, axis=1)))
