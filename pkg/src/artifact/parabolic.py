"""Parabolic subalgebras: radical roots, their type, the Levi-module structure of
the radical, and Schubert-cell root sets.

Node sets passed to the functions here are 0-based; the CLI converts from the
1-based labels it accepts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .chars import character
from .root_data import _VALID, RootSystem, RootSystemError, build_root_system, format_system, format_weight

ABELIAN, HEISENBERG, OTHER = "Abelian", "Heisenberg", "Other"

CELL_CONDITION = "w^-1(alpha) in R^-"


def _check_delta(rs: RootSystem, delta: Iterable[int]) -> tuple[int, ...]:
    d = tuple(sorted(set(delta)))
    for i in d:
        if not 0 <= i < rs.rank:
            raise RootSystemError(f"node {i + 1} outside 1..{rs.rank}")
    return d


def radical_roots(rs: RootSystem, delta: Iterable[int]) -> list[tuple]:
    """Positive roots (omega-coordinates) outside the span of the simple roots in delta."""
    d = _check_delta(rs, delta)
    inside = set(rs.positive_in_span(d))
    return [a for k, a in enumerate(rs.positive_roots) if k not in inside]


def derived_roots(rs: RootSystem, delta: Iterable[int]) -> set[tuple]:
    """Radical roots that are sums of two radical roots."""
    rad = radical_roots(rs, delta)
    rset = set(rad)
    out = set()
    for i, a in enumerate(rad):
        for b in rad[i + 1 :]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in rset:
                out.add(s)
    return out


def radical_type(rs: RootSystem, delta: Iterable[int]) -> str:
    d = _check_delta(rs, delta)
    if len(d) == rs.rank:
        raise RootSystemError("delta must be a proper subset of the nodes")
    n = len(derived_roots(rs, d))
    return ABELIAN if n == 0 else HEISENBERG if n == 1 else OTHER


# -- Dynkin identification -------------------------------------------------------

def components(rs: RootSystem, delta: Iterable[int]) -> list[list[int]]:
    """Connected components of the Dynkin subdiagram on delta, each sorted."""
    d = set(delta)
    cm = rs.cartan_matrix
    seen: set[int] = set()
    out = []
    for start in sorted(d):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in d:
                if j not in seen and cm[i][j]:
                    seen.add(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def _cartan_matches(cm, nodes: Sequence[int], std) -> Iterable[tuple[int, ...]]:
    k = len(nodes)
    for p in permutations(nodes):
        if all(cm[p[a]][p[b]] == std[a][b] for a in range(k) for b in range(k)):
            yield p


def identify_component(rs: RootSystem, nodes: Sequence[int], prefer: str | None = None) -> tuple[str, int, tuple[int, ...]]:
    """(letter, rank, order) with order[s] the node of rs playing standard node s."""
    k = len(nodes)
    letters = [prefer] if prefer else []
    letters += [x for x in "ABCDEFG" if x != prefer]
    for letter in letters:
        if not _VALID[letter](k):
            continue
        std = build_root_system([(letter, k)]).cartan_matrix
        for p in _cartan_matches(rs.cartan_matrix, nodes, std):
            return letter, k, p
    raise RootSystemError(f"cannot identify subdiagram on nodes {[i + 1 for i in nodes]}")


@dataclass
class LeviData:
    factors: list[tuple[str, int]]
    orders: list[tuple[int, ...]]

    @property
    def nodes(self) -> list[int]:
        return [i for o in self.orders for i in o]

    @property
    def name(self) -> str:
        return format_system(self.factors) if self.factors else "trivial"

    def restrict(self, weight: Sequence[int]) -> tuple:
        return tuple(weight[i] for i in self.nodes)


def levi_data(rs: RootSystem, delta: Iterable[int]) -> LeviData:
    d = _check_delta(rs, delta)
    parent = rs.factors[0][0] if len(rs.factors) == 1 else None
    factors, orders = [], []
    for comp in components(rs, d):
        letter, k, order = identify_component(rs, comp, parent)
        factors.append((letter, k))
        orders.append(order)
    return LeviData(factors, orders)


@dataclass
class LeviModule:
    level: tuple[int, ...]           # alpha-coefficients at nodes outside delta
    highest_weight: tuple[int, ...]  # over the Levi semisimple part
    dim: int


def levi_module_decomposition(rs: RootSystem, delta: Iterable[int]) -> list[LeviModule]:
    """Decompose the radical into simple modules over the Levi semisimple part.

    Radical roots are grouped by their coefficients at the omitted nodes (each
    group is a module over the whole Levi), and each group's weight multiset is
    peeled into characters of simple modules.
    """
    d = _check_delta(rs, delta)
    if len(d) == rs.rank:
        raise RootSystemError("delta must be a proper subset of the nodes")
    levi = levi_data(rs, d)
    outside = [i for i in range(rs.rank) if i not in d]
    groups: dict[tuple, Counter] = {}
    for a_omega, a_alpha in zip(rs.positive_roots, rs.positive_roots_alpha):
        lev = tuple(a_alpha[i] for i in outside)
        if any(lev):
            groups.setdefault(lev, Counter())[levi.restrict(a_omega)] += 1
    out = []
    lrs = build_root_system(levi.factors) if levi.factors else None
    for lev in sorted(groups):
        rest = groups[lev]
        while rest:
            if lrs is None:
                hw = ()
                rest[hw] -= 1
                dim = 1
            else:
                rho = lrs.rho
                hw = max(rest, key=lambda w: (lrs.inner(w, rho), w))
                ch = character(lrs, hw, None)
                for w, m in ch.weights.items():
                    rest[w] -= m
                    if rest[w] < 0:
                        raise ArithmeticError("radical weights do not form a Levi-module character")
                dim = ch.dim
            rest = +rest
            out.append(LeviModule(lev, hw, dim))
    return out


# -- Schubert cells -------------------------------------------------------------

@dataclass
class SchubertCell:
    word: tuple[int, ...]
    w0_word: tuple[int, ...]
    roots: list[tuple]       # alpha-coordinates, in the order induced by w0_word
    flagged: list[bool]      # True iff the root is excluded from the cell
    condition: str = CELL_CONDITION

    @property
    def cell_roots(self) -> list[tuple]:
        return [r for r, f in zip(self.roots, self.flagged) if not f]


def schubert_cell_root_set(rs: RootSystem, word: Sequence[int]) -> SchubertCell:
    """Roots beta_k = s_{i1}...s_{i(k-1)}(alpha_ik) for a reduced word of w0 extending w.

    The cell of w consists of the roots with w^-1(beta) negative, which are
    exactly the first len(word) roots; every other root is flagged.
    """
    word = tuple(int(i) for i in word)
    for i in word:
        if not 0 <= i < rs.rank:
            raise RootSystemError(f"letter {i + 1} outside 1..{rs.rank}")
    if not rs.is_reduced(word):
        raise RootSystemError(f"word {[i + 1 for i in word]} is not reduced")
    minus_rho = tuple(-x for x in rs.rho)
    rest = rs.reduced_word(rs.apply_word(tuple(reversed(word)), minus_rho))
    full = word + tuple(rest)
    if len(full) != len(rs.positive_roots):
        raise AssertionError("extension is not a reduced word for w0")
    roots, flagged = [], []
    inv = tuple(reversed(word))
    for k, i in enumerate(full):
        beta = rs.apply_word(full[:k], rs.cartan_matrix[i])
        roots.append(rs.omega_to_alpha(beta))
        back = rs.apply_word(inv, beta)
        flagged.append(rs.is_positive_root(back))
    return SchubertCell(word, full, [tuple(int(x) for x in r) for r in roots], flagged)


# -- records ----------------------------------------------------------------------

def quantized_ring(rs: RootSystem, delta: Iterable[int]) -> str | None:
    """Name of the known quantized coordinate ring for a maximal parabolic, if any."""
    d = _check_delta(rs, delta)
    if len(rs.factors) != 1 or len(d) != rs.rank - 1:
        return None
    letter, n = rs.factors[0]
    i = next(k for k in range(n) if k not in d) + 1
    if letter == "A":
        return f"quantum {i}x{n + 1 - i} matrices"
    if letter == "B" and i == 1:
        return f"quantum odd-dimensional Euclidean space of dimension {2 * n - 1}"
    if letter == "C" and i == n:
        return f"quantum symmetric {n}x{n} matrices"
    if letter == "C" and i == 1:
        return "none (Heisenberg type radical)"
    if letter == "D" and i == 1:
        return f"quantum even-dimensional Euclidean space of dimension {2 * n - 2}"
    if letter == "D" and i in (n - 1, n):
        return f"quantum antisymmetric {n}x{n} matrices"
    if (letter, n) == ("E", 6) and i in (1, 6) or (letter, n) == ("E", 7) and i == 7:
        return f"unnamed quantum algebra ({letter}{n}, node {i} omitted)"
    return None


@dataclass
class ParabolicData:
    root_system: RootSystem
    delta: tuple[int, ...]
    radical_roots: list[tuple] = field(default_factory=list)
    radical_type: str = OTHER
    levi: LeviData | None = None
    levi_modules: list[LeviModule] = field(default_factory=list)

    def to_record(self) -> dict:
        rs = self.root_system
        word, length = rs.parabolic_element(self.delta)
        cell = schubert_cell_root_set(rs, word)
        rad_alpha = sorted(tuple(int(x) for x in rs.omega_to_alpha(a)) for a in self.radical_roots)
        return {
            "system": rs.name,
            "delta": [i + 1 for i in self.delta],
            "dim": len(self.radical_roots),
            "type": self.radical_type,
            "levi": self.levi.name if self.levi else "trivial",
            "levi_modules": [
                {
                    "level": list(m.level),
                    "highest_weight": format_weight(build_root_system(self.levi.factors), m.highest_weight)
                    if self.levi and self.levi.factors
                    else "",
                    "dim": m.dim,
                }
                for m in self.levi_modules
            ],
            "identified_quantized_ring": quantized_ring(rs, self.delta),
            "parabolic_word": [i + 1 for i in word],
            "parabolic_length": length,
            "schubert_cell_matches_radical": sorted(cell.cell_roots) == rad_alpha,
            "schubert_cell_condition": cell.condition,
        }


def parabolic_data(rs: RootSystem, delta: Iterable[int]) -> ParabolicData:
    d = _check_delta(rs, delta)
    return ParabolicData(
        rs, d, radical_roots(rs, d), radical_type(rs, d), levi_data(rs, d), levi_module_decomposition(rs, d)
    )


# -- flat / parabolic join ----------------------------------------------------------

@dataclass
class Realization:
    parent: str
    delta: tuple[int, ...]
    radical_type: str


def _systems_of_rank(n: int) -> list[RootSystem]:
    return [build_root_system([(x, n)]) for x in "ABCDEFG" if _VALID[x](n)]


@lru_cache(maxsize=None)
def _realizations(letter: str, n: int) -> tuple:
    """(parent, delta, type, {weights of g realized by a radical Levi module})."""
    g = build_root_system([(letter, n)])
    std = g.cartan_matrix
    out = []
    for parent in _systems_of_rank(n + 1):
        for drop in range(parent.rank):
            delta = tuple(i for i in range(parent.rank) if i != drop)
            maps = list(_cartan_matches(parent.cartan_matrix, delta, std))
            if not maps:
                continue
            kind = radical_type(parent, delta)
            if kind == OTHER:
                continue
            levi = levi_data(parent, delta)
            weights = set()
            for m in levi_module_decomposition(parent, delta):
                on_nodes = dict(zip(levi.nodes, m.highest_weight))
                for p in maps:
                    weights.add(tuple(on_nodes[p[s]] for s in range(n)))
            out.append((parent.name, delta, kind, frozenset(weights)))
    return tuple(out)


def parabolic_realizations(rs: RootSystem, lam: Sequence[int]) -> list[Realization]:
    """Simple g' of rank one higher and maximal delta with Abelian or Heisenberg
    radical whose Levi semisimple part is g and has V_lambda inside the radical."""
    if len(rs.factors) != 1:
        raise RootSystemError("parabolic realizations are computed for simple g only")
    letter, n = rs.factors[0]
    lam = tuple(lam)
    return [Realization(p, d, k) for p, d, k, ws in _realizations(letter, n) if lam in ws]
