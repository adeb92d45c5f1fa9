"""Characters, tensor-product decompositions, plethysm and the rigidity test."""

from __future__ import annotations

import json
import threading
from collections import Counter
from collections.abc import Mapping
from typing import Sequence

from gmpy2 import mpq

from .repr import DEFAULT_DIM_CEILING, DimensionCeilingError
from .root_data import RootSystem, format_weight


class Character:
    """Full-orbit weight multiset of a (possibly virtual) module."""

    def __init__(self, rs: RootSystem, weights: Mapping[tuple, int]):
        self.rs = rs
        self.weights: dict[tuple, int] = {w: m for w, m in weights.items() if m}

    @property
    def dim(self) -> int:
        return sum(self.weights.values())

    def mult(self, w: Sequence[int]) -> int:
        return self.weights.get(tuple(w), 0)

    def __add__(self, other: "Character") -> "Character":
        c = Counter(self.weights)
        c.update(other.weights)
        return Character(self.rs, c)

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def scale(self, k: int) -> "Character":
        return Character(self.rs, {w: k * m for w, m in self.weights.items()})

    def __mul__(self, other: "Character") -> "Character":
        out: dict[tuple, int] = {}
        for w1, m1 in self.weights.items():
            for w2, m2 in other.weights.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + m1 * m2
        return Character(self.rs, out)

    def adams(self, k: int) -> "Character":
        return Character(self.rs, {tuple(k * x for x in w): m for w, m in self.weights.items()})

    def exact_div(self, k: int) -> "Character":
        out = {}
        for w, m in self.weights.items():
            if m % k:
                raise ArithmeticError("character is not divisible")
            out[w] = m // k
        return Character(self.rs, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self.weights == other.weights

    def is_w_invariant(self) -> bool:
        return all(self.mult(self.rs.reflect(w, i)) == m for w, m in self.weights.items() for i in range(self.rs.rank))


class DecompositionTable:
    """Dominant weight -> multiplicity (non-zero entries only)."""

    def __init__(self, rs: RootSystem, entries: Mapping[tuple, int] | None = None):
        self.rs = rs
        self.entries: dict[tuple, int] = {tuple(w): int(m) for w, m in (entries or {}).items() if m}

    def __getitem__(self, w) -> int:
        return self.entries.get(tuple(w), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, DecompositionTable):
            return self.entries == other.entries
        if isinstance(other, Mapping):
            return self.entries == {tuple(k): v for k, v in other.items() if v}
        return NotImplemented

    def __add__(self, other: "DecompositionTable") -> "DecompositionTable":
        c = Counter(self.entries)
        for k, v in other.entries.items():
            c[k] += v
        return DecompositionTable(self.rs, c)

    def scale(self, k: int) -> "DecompositionTable":
        return DecompositionTable(self.rs, {w: k * m for w, m in self.entries.items()})

    def __sub__(self, other: "DecompositionTable") -> "DecompositionTable":
        return self + other.scale(-1)

    def exact_div(self, k: int) -> "DecompositionTable":
        out = {}
        for w, m in self.entries.items():
            if m % k:
                raise ArithmeticError("table is not divisible")
            out[w] = m // k
        return DecompositionTable(self.rs, out)

    def dim(self) -> int:
        return sum(m * self.rs.weyl_dimension(w) for w, m in self.entries.items())

    def is_simple(self) -> bool:
        return list(self.entries.values()) == [1]

    def to_list(self) -> list[dict]:
        rows = [{"weight": format_weight(self.rs, w), "multiplicity": m} for w, m in self.entries.items()]
        return sorted(rows, key=lambda r: r["weight"])

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def __repr__(self) -> str:
        inner = ", ".join(f"{r['weight']}:{r['multiplicity']}" for r in self.to_list())
        return f"DecompositionTable({inner})"


# -- Freudenthal --------------------------------------------------------------

_LOCK = threading.Lock()
_CHAR_CACHE: dict = {}


def _check_ceiling(rs: RootSystem, lam: tuple, dim_ceiling: int | None) -> None:
    if dim_ceiling is not None:
        d = rs.weyl_dimension(lam)
        if d > dim_ceiling:
            raise DimensionCeilingError(
                f"V_{format_weight(rs, lam)} over {rs.name} has dimension {d} > ceiling {dim_ceiling}"
            )


def dominant_weights(rs: RootSystem, lam: Sequence[int]) -> list[tuple]:
    """Dominant weights of V_lambda, highest first."""
    lam = tuple(lam)
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for a in rs.positive_roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu not in seen and all(x >= 0 for x in nu):
                seen.add(nu)
                stack.append(nu)
    return sorted(seen, key=lambda mu: (rs.height(tuple(x - y for x, y in zip(lam, mu))), tuple(-x for x in mu)))


def dominant_character(rs: RootSystem, lam: Sequence[int]) -> dict[tuple, int]:
    """Freudenthal multiplicities on dominant weights."""
    lam = tuple(int(x) for x in lam)
    rho = rs.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    top = rs.inner(lr, lr)
    mults: dict[tuple, int] = {}
    pos = [(a, rs.inner(a, a)) for a in rs.positive_roots]
    for mu in dominant_weights(rs, lam):
        if mu == lam:
            mults[mu] = 1
            continue
        s = mpq(0)
        for a, _ in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                dom, _ = rs.dominant_conjugate(nu)
                m = mults.get(dom)
                if not m:
                    break
                s += m * rs.inner(nu, a)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        val = 2 * s / (top - rs.inner(mr, mr))
        if val.denominator != 1 or val < 0:
            raise ArithmeticError("Freudenthal recursion produced a non-integer multiplicity")
        if val:
            mults[mu] = int(val)
    return mults


def character(rs: RootSystem, lam: Sequence[int], dim_ceiling: int | None = DEFAULT_DIM_CEILING) -> Character:
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    _check_ceiling(rs, lam, dim_ceiling)
    key = (rs.factors, lam)
    hit = _CHAR_CACHE.get(key)
    if hit is not None:
        return hit
    full: dict[tuple, int] = {}
    for mu, m in dominant_character(rs, lam).items():
        for w in rs.orbit(mu):
            full[w] = m
    ch = Character(rs, full)
    with _LOCK:
        _CHAR_CACHE[key] = ch
    return ch


# -- decompositions -----------------------------------------------------------

def _reflect_to_dominant(rs: RootSystem, x: tuple) -> tuple[tuple | None, int]:
    dom, sign = rs.dominant_conjugate(x)
    if any(v == 0 for v in dom):
        return None, 0
    return dom, sign


def decompose(ch: Character) -> DecompositionTable:
    """Decompose a W-invariant (virtual) character into irreducibles."""
    rs = ch.rs
    rho = rs.rho
    out: Counter = Counter()
    for w, m in ch.weights.items():
        dom, sign = _reflect_to_dominant(rs, tuple(a + b for a, b in zip(w, rho)))
        if dom is not None:
            out[tuple(a - b for a, b in zip(dom, rho))] += sign * m
    return DecompositionTable(rs, out)


def tensor_with(rs: RootSystem, table: DecompositionTable, lam: Sequence[int], dim_ceiling=None) -> DecompositionTable:
    """(sum n_nu V_nu) (x) V_lambda by Brauer-Klimyk over the character of V_lambda."""
    ch = character(rs, lam, dim_ceiling)
    rho = rs.rho
    out: Counter = Counter()
    for nu, n in table.entries.items():
        base = tuple(a + b for a, b in zip(nu, rho))
        for w, m in ch.weights.items():
            dom, sign = _reflect_to_dominant(rs, tuple(a + b for a, b in zip(base, w)))
            if dom is not None:
                out[tuple(a - b for a, b in zip(dom, rho))] += sign * n * m
    return DecompositionTable(rs, out)


def tensor_decompose(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING) -> DecompositionTable:
    _check_ceiling(rs, tuple(lam), dim_ceiling)
    return tensor_with(rs, DecompositionTable(rs, {tuple(lam): 1}), mu, dim_ceiling)


def _square_parts(rs: RootSystem, lam: tuple, dim_ceiling):
    ch = character(rs, lam, dim_ceiling)
    t = tensor_decompose(rs, lam, lam, dim_ceiling)
    p = decompose(ch.adams(2))
    return ch, t, p


def sym_ext_square(rs: RootSystem, lam: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING):
    """(S^2 V, Lambda^2 V) via S^2 = (chi^2 + psi^2 chi)/2, Lambda^2 = (chi^2 - psi^2 chi)/2."""
    lam = tuple(lam)
    _, t, p = _square_parts(rs, lam, dim_ceiling)
    return (t + p).exact_div(2), (t - p).exact_div(2)


def sym_ext_cube(rs: RootSystem, lam: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING):
    """(S^3 V, Lambda^3 V) via Adams operations."""
    lam = tuple(lam)
    ch, t, p = _square_parts(rs, lam, dim_ceiling)
    cube = tensor_with(rs, t, lam)
    mixed = tensor_with(rs, p, lam)
    p3 = decompose(ch.adams(3))
    s3 = (cube + mixed.scale(3) + p3.scale(2)).exact_div(6)
    e3 = (cube - mixed.scale(3) + p3.scale(2)).exact_div(6)
    return s3, e3


def d_table(rs: RootSystem, lam: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING) -> DecompositionTable:
    """mu -> d_lambda^mu = sum_nu (c+_{lambda;nu} - c-_{lambda;nu}) c^mu_{nu,lambda} (virtual table)."""
    lam = tuple(lam)
    s2, e2 = sym_ext_square(rs, lam, dim_ceiling)
    return tensor_with(rs, s2 - e2, lam)


def d_table_by_routes(rs: RootSystem, lam: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING):
    """(S^2 V (x) V, V (x) Lambda^2 V) decomposed separately; d is their difference."""
    lam = tuple(lam)
    s2, e2 = sym_ext_square(rs, lam, dim_ceiling)
    return tensor_with(rs, s2, lam), tensor_with(rs, e2, lam)


def d_coefficient(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING) -> int:
    return d_table(rs, lam, dim_ceiling)[tuple(mu)]


def rigidity_check(rs: RootSystem, lam: Sequence[int], dim_ceiling=DEFAULT_DIM_CEILING) -> bool:
    """True iff S^3 V and Lambda^3 V equal their lower bounds built from d."""
    lam = tuple(lam)
    s3, e3 = sym_ext_cube(rs, lam, dim_ceiling)
    d = d_table(rs, lam, dim_ceiling)
    support = set(s3.entries) | set(e3.entries) | set(d.entries)
    return all(s3[mu] == max(d[mu], 0) and e3[mu] == max(-d[mu], 0) for mu in support)


def character_of_table(table: DecompositionTable, dim_ceiling=None) -> Character:
    total = Character(table.rs, {})
    for w, m in table.entries.items():
        total = total + character(table.rs, w, dim_ceiling).scale(m)
    return total
