"""O-sequences: Macaulay growth, the socle-degree-4 classification, lex ideals
and Eliahou-Kervaire Betti numbers."""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from math import comb
from typing import Callable, Iterable, Sequence

from macinv.apolar import Monomial, dim_R, divides, monomials_of_degree


class OSequence(tuple):
    """A Hilbert function (h_0, ..., h_s)."""

    def __new__(cls, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        if any(v < 0 for v in vals):
            raise ValueError(f"negative entry in {vals}")
        return super().__new__(cls, vals)

    @property
    def socle_degree(self) -> int:
        return len(self) - 1

    @property
    def embedding_dim(self) -> int:
        return self[1] if len(self) > 1 else 0

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"

    def __str__(self):
        return ",".join(map(str, self))


def parse_sequence(text: str) -> OSequence:
    """'1,3,2,2,2' -> OSequence; parentheses and spaces tolerated."""
    body = text.strip().strip("()")
    try:
        return OSequence(int(t) for t in body.split(",") if t.strip())
    except ValueError as exc:
        raise ValueError(f"bad sequence {text!r}: {exc}") from None


# --- Macaulay representation -------------------------------------------

@dataclass(frozen=True)
class MacaulayRep:
    h: int
    i: int
    binomials: tuple[tuple[int, int], ...]   # (a_j, j), j = i, i-1, ...

    def value(self) -> int:
        return sum(comb(a, j) for a, j in self.binomials)

    def growth(self) -> int:
        return sum(comb(a + 1, j + 1) for a, j in self.binomials)


def macaulay_rep(h: int, i: int) -> MacaulayRep:
    """The greedy i-binomial expansion h = C(a_i,i) + C(a_{i-1},i-1) + ..."""
    if i < 1:
        raise ValueError("i must be >= 1")
    if h < 0:
        raise ValueError("h must be >= 0")
    parts = []
    rest = h
    j = i
    while rest > 0 and j >= 1:
        a = j
        while comb(a + 1, j) <= rest:
            a += 1
        parts.append((a, j))
        rest -= comb(a, j)
        j -= 1
    return MacaulayRep(h, i, tuple(parts))


def macaulay_growth(h: int, i: int) -> int:
    """h^<i>."""
    return macaulay_rep(h, i).growth()


def is_o_sequence(h: Sequence[int]) -> bool:
    if not h or h[0] != 1 or any(x < 0 for x in h):
        return False
    return all(h[i + 1] <= macaulay_growth(h[i], i) for i in range(1, len(h) - 1))


def socle_bound(h1: int, E: Sequence[int]) -> OSequence:
    """min{dim R_i, sum_j e_{i+j} dim R_j} for i = 0..s, with r = h1."""
    s = len(E) - 1
    out = []
    for i in range(s + 1):
        tot = sum(E[i + j] * dim_R(h1, j) for j in range(s - i + 1))
        out.append(min(dim_R(h1, i), tot))
    return OSequence(out)


# --- verdicts ----------------------------------------------------------

class Reason(Enum):
    SATISFIED = "all conditions hold"
    NOT_O_SEQUENCE = "not an O-sequence"
    TOP_EXCEEDS_H1 = "h_{s-1} > h_1"
    SECOND_BOUND = "h_{s-2} > C(h_{s-1}+1,2) + (h_1 - h_{s-1})"
    H3_EXCEEDS_3 = "h3 > 3"
    H2_BOUND = "h2 > C(h3+1,2) + (3 - h3)"
    LEVEL_BOUND = "h3 > 3*h4"
    NONUNIMODAL_SMALL_H1 = "h2 < h3 is impossible for h1 <= 12"
    OUTSIDE_RANGE = "h2 < h3 with h1 >= 13 lies outside the classified range"


@dataclass(frozen=True)
class Verdict:
    admissible: bool | None          # None: not decided by the classification
    reason: Reason
    witness_hint: str | None = None

    @property
    def message(self) -> str:
        if self.admissible is None:
            head = "undecided"
        else:
            head = "admissible" if self.admissible else "not admissible"
        return f"{head}: {self.reason.value}"

    def as_dict(self) -> dict:
        return {"admissible": self.admissible, "reason": self.reason.value,
                "witness_hint": self.witness_hint}


def _shape(h, s: int, h1: int | None = None):
    h = OSequence(h)
    if len(h) != s + 1 or h[0] != 1 or (h1 is not None and h[1] != h1):
        want = f"(1,{h1 if h1 is not None else 'h1'},...) of length {s + 1}"
        raise ValueError(f"expected a sequence {want}, got {h!r}")
    return h


def gorenstein_necessary(h: Sequence[int]) -> Verdict:
    """h_{s-1} <= h_1 and h_{s-2} <= C(h_{s-1}+1, 2) + (h_1 - h_{s-1})."""
    h = OSequence(h)
    if len(h) < 2 or h[-1] != 1:
        raise ValueError(f"expected h_s = 1, got {h!r}")
    s = len(h) - 1
    if s < 2:
        return Verdict(True, Reason.SATISFIED)
    h1, top, second = h[1], h[s - 1], h[s - 2]
    if top > h1:
        return Verdict(False, Reason.TOP_EXCEEDS_H1)
    if second > comb(top + 1, 2) + (h1 - top):
        return Verdict(False, Reason.SECOND_BOUND)
    return Verdict(True, Reason.SATISFIED)


def classify_gorenstein_h1_3_s4(h: Sequence[int]) -> Verdict:
    h = _shape(h, 4, 3)
    if h[4] != 1:
        raise ValueError(f"expected h4 = 1, got {h!r}")
    if not is_o_sequence(h):
        return Verdict(False, Reason.NOT_O_SEQUENCE)
    h2, h3 = h[2], h[3]
    if h3 > 3:
        return Verdict(False, Reason.H3_EXCEEDS_3)
    if h2 > comb(h3 + 1, 2) + (3 - h3):
        return Verdict(False, Reason.H2_BOUND)
    return Verdict(True, Reason.SATISFIED, "gorenstein_construct")


def classify_level_h1_3_s4(h: Sequence[int]) -> Verdict:
    h = _shape(h, 4, 3)
    if h[4] < 2:
        raise ValueError(f"expected h4 >= 2, got {h!r}")
    if not is_o_sequence(h):
        return Verdict(False, Reason.NOT_O_SEQUENCE)
    if h[3] > 3 * h[4]:
        return Verdict(False, Reason.LEVEL_BOUND)
    return Verdict(True, Reason.SATISFIED, "level_construct_h1_3")


STANLEY_SEQUENCE = OSequence((1, 13, 12, 13, 1))


def classify_gorenstein_s4_unimodal(h: Sequence[int]) -> Verdict:
    """Gorenstein verdict for (1,h1,h2,h3,1) in any embedding dimension."""
    h = _shape(h, 4)
    if h[4] != 1:
        raise ValueError(f"expected h4 = 1, got {h!r}")
    if not is_o_sequence(h):
        return Verdict(False, Reason.NOT_O_SEQUENCE)
    nec = gorenstein_necessary(h)
    if not nec.admissible:
        return nec
    h1, h2, h3 = h[1], h[2], h[3]
    if h2 >= h3:
        return Verdict(True, Reason.SATISFIED, "gorenstein_construct")
    if h1 <= 12:
        return Verdict(False, Reason.NONUNIMODAL_SMALL_H1)
    if h == STANLEY_SEQUENCE:
        return Verdict(True, Reason.OUTSIDE_RANGE, "stanley_witness")
    return Verdict(None, Reason.OUTSIDE_RANGE)


# --- enumeration ---------------------------------------------------------

def enumerate_o_sequences(s: int, h1: int, last_min: int = 1, last_max: int | None = None,
                          keep: Callable[[OSequence], bool] | None = None) -> list[OSequence]:
    """All O-sequences (1, h1, ..., h_s) with every entry >= 1 and
    last_min <= h_s <= last_max, ordered by (sum, entries)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    found = set()

    def extend(prefix):
        i = len(prefix) - 1
        if i == s:
            if prefix[-1] >= last_min and (last_max is None or prefix[-1] <= last_max):
                found.add(OSequence(prefix))
            return
        top = macaulay_growth(prefix[-1], i)
        for v in range(1, top + 1):
            extend(prefix + [v])

    if s == 1:
        if h1 >= last_min and (last_max is None or h1 <= last_max):
            found.add(OSequence((1, h1)))
    elif h1 >= 1:
        extend([1, h1])
    out = [h for h in found if keep is None or keep(h)]
    return sorted(out, key=lambda h: (sum(h), tuple(h)))


def colex_key(h: Sequence[int]):
    return tuple(reversed(h))


# --- lex ideals and Betti numbers ----------------------------------------

def lex_strata(h: Sequence[int], r: int) -> dict[int, list[Monomial]]:
    """Degree-d strata (d = 1..s+1) of the lex ideal with Hilbert function h."""
    h = OSequence(h)
    if h[0] != 1 or (len(h) > 1 and h[1] > r):
        raise ValueError(f"{h!r} cannot be a Hilbert function in {r} variables")
    s = len(h) - 1
    strata: dict[int, list[Monomial]] = {}
    prev: set = set()
    for d in range(1, s + 2):
        hd = h[d] if d <= s else 0
        allmons = sorted(monomials_of_degree(r, d), reverse=True)   # lex descending
        size = dim_R(r, d) - hd
        if size < 0:
            raise ValueError(f"h_{d} = {hd} exceeds dim R_{d}")
        seg = allmons[:size]
        segset = set(seg)
        for u in prev:
            for k in range(r):
                v = list(u)
                v[k] += 1
                if tuple(v) not in segset:
                    raise ValueError(f"{h!r} is not an O-sequence: lex segments do not nest")
        strata[d] = seg
        prev = segset
    return strata


def lex_ideal(h: Sequence[int], r: int) -> list[Monomial]:
    """Minimal generators of the lex ideal, by degree then lex descending."""
    strata = lex_strata(h, r)
    gens = []
    prev: set = set()
    for d in sorted(strata):
        shadow = set()
        for u in prev:
            for k in range(r):
                v = list(u)
                v[k] += 1
                shadow.add(tuple(v))
        gens.extend(u for u in strata[d] if u not in shadow)
        prev = set(strata[d])
    return gens


class BettiTable:
    """Graded Betti numbers beta_{i,j} of P/I."""

    def __init__(self, entries: dict | None = None):
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def row(self, i: int) -> dict[int, int]:
        return {j: v for (a, j), v in sorted(self.entries.items()) if a == i}

    def total(self, i: int) -> int:
        return sum(self.row(i).values())

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({self.as_rows()})"

    def as_rows(self) -> dict[int, dict[int, int]]:
        return {i: self.row(i) for i in range(self.length + 1) if self.row(i)}

    def euler_series(self) -> dict[int, int]:
        """sum_i (-1)^i sum_j beta_{i,j} t^j as {j: coefficient}."""
        out: dict[int, int] = {}
        for (i, j), v in self.entries.items():
            out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: c for j, c in out.items() if c}


def _in_ideal(m: Monomial, gens: Iterable[Monomial]) -> bool:
    return any(divides(g, m) for g in gens)


def _max_var(u: Monomial) -> int:
    return max(k for k, e in enumerate(u) if e) + 1


def minimalize(gens: Iterable[Monomial]) -> list[Monomial]:
    gens = sorted(set(map(tuple, gens)), key=lambda m: (sum(m), tuple(-e for e in m)))
    out: list = []
    for g in gens:
        if not _in_ideal(g, out):
            out.append(g)
    return out


def is_stable(gens: Iterable[Monomial]) -> bool:
    gens = minimalize(gens)
    for u in gens:
        if not any(u):
            continue
        m = _max_var(u)
        for j in range(m - 1):
            v = list(u)
            v[m - 1] -= 1
            v[j] += 1
            if not _in_ideal(tuple(v), gens):
                return False
    return True


def ek_betti(gens: Iterable[Monomial], r: int | None = None) -> BettiTable:
    """Eliahou-Kervaire Betti numbers of P/I for a stable monomial ideal I."""
    gens = minimalize(gens)
    if r is not None and any(len(u) != r for u in gens):
        raise ValueError("generator length does not match the variable count")
    if not is_stable(gens):
        raise ValueError("ideal is not stable")
    entries = {(0, 0): 1}
    for u in gens:
        if not any(u):
            raise ValueError("the unit ideal has no Betti table here")
        m = _max_var(u)
        d = sum(u)
        for i in range(m):
            key = (i + 1, i + d)
            entries[key] = entries.get(key, 0) + comb(m - 1, i)
    return BettiTable(entries)


def hilbert_series_times_denominator(h: Sequence[int], r: int) -> dict[int, int]:
    """(1-t)^r * sum_d h_d t^d as {j: coefficient}."""
    out: dict[int, int] = {}
    for d, hd in enumerate(h):
        for k in range(r + 1):
            out[d + k] = out.get(d + k, 0) + hd * comb(r, k) * (-1) ** k
    return {j: c for j, c in out.items() if c}


def min_last_betti_lower_bound(B: BettiTable, i: int) -> int:
    """sum_j max(0, beta_{i,j} - beta_{i-1,j}): what survives any sequence of
    consecutive cancellations at the last homological index i."""
    last = B.row(i)
    before = B.row(i - 1)
    return sum(max(0, v - before.get(j, 0)) for j, v in last.items())


# --- tables --------------------------------------------------------------

GRADED_DATA_ENV = "APOLAR_GRADED_DATA"
GRADED_DATA_NAME = "graded_level_h1_3_s4.txt"


def load_sequences(path) -> list[OSequence]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(parse_sequence(line))
    return out


def graded_data_path():
    env = os.environ.get(GRADED_DATA_ENV)
    if env:
        return env
    return str(resources.files("macinv") / "data" / GRADED_DATA_NAME)


def level_admissible_h1_3_s4() -> list[OSequence]:
    return [h for h in enumerate_o_sequences(4, 3, last_min=2)
            if classify_level_h1_3_s4(h).admissible]


def gorenstein_admissible_h1_3_s4() -> list[OSequence]:
    return [h for h in enumerate_o_sequences(4, 3, last_min=1, last_max=1)
            if classify_gorenstein_h1_3_s4(h).admissible]


def tables_report(data_path=None) -> tuple[list[OSequence], list[OSequence]]:
    """(local-but-not-graded level sequences, non-symmetric Gorenstein sequences)
    for h1 = 3, s = 4, both in colex order."""
    path = data_path or graded_data_path()
    if not os.path.exists(path):
        raise FileNotFoundError(f"graded level data file not found: {path}")
    graded = set(load_sequences(path))
    table1 = sorted((h for h in level_admissible_h1_3_s4() if h not in graded), key=colex_key)
    table2 = sorted((h for h in gorenstein_admissible_h1_3_s4() if tuple(h) != tuple(reversed(h))),
                    key=colex_key)
    return table1, table2
