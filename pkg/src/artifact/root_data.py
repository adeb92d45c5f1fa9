"""Root systems, weights and Weyl-group combinatorics for types A-G and products.

Weights and roots are stored as integer tuples in fundamental-weight
coordinates (global node indices, factors concatenated).  Roots are also kept
in simple-root coordinates.  Each simple factor is realized in the Bourbaki
ambient coordinates, with the invariant form scaled so that short roots have
squared length 2.
"""

from __future__ import annotations

import re
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

Vec = tuple[int, ...]

_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_SYSTEM_RE = re.compile(r"^([A-G])(\d+)$")


class RootSystemError(ValueError):
    pass


def _half(x: int) -> mpq:
    return mpq(x, 2)


def _e(n: int, i: int, c=1) -> list:
    v = [mpq(0)] * n
    v[i] = mpq(c)
    return v


def _ambient_simple_roots(letter: str, rank: int) -> tuple[list[list[mpq]], mpq]:
    """Bourbaki simple roots and the scale making short roots have length^2 2."""
    n = rank
    if letter == "A":
        roots = [_sub(_e(n + 1, i), _e(n + 1, i + 1)) for i in range(n)]
        return roots, mpq(1)
    if letter in "BCD":
        roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)]
        if letter == "B":
            roots.append(_e(n, n - 1))
            return roots, mpq(2)
        if letter == "C":
            roots.append(_e(n, n - 1, 2))
            return roots, mpq(1)
        last = _e(n, n - 2)
        last[n - 1] = mpq(1)
        roots.append(last)
        return roots, mpq(1)
    if letter == "G":
        return [[mpq(1), mpq(-1), mpq(0)], [mpq(-2), mpq(1), mpq(1)]], mpq(1)
    if letter == "F":
        h = _half(1)
        roots = [
            [mpq(0), mpq(1), mpq(-1), mpq(0)],
            [mpq(0), mpq(0), mpq(1), mpq(-1)],
            [mpq(0), mpq(0), mpq(0), mpq(1)],
            [h, -h, -h, -h],
        ]
        return roots, mpq(2)
    # E_n sits inside the E8 lattice using the first n Bourbaki simple roots.
    h = _half(1)
    e8 = [[h, -h, -h, -h, -h, -h, -h, h], _add(_e(8, 0), _e(8, 1))]
    for i in range(6):
        e8.append(_sub(_e(8, i + 1), _e(8, i)))
    return e8[:n], mpq(1)


def _add(x, y):
    return [a + b for a, b in zip(x, y)]


def _sub(x, y):
    return [a - b for a, b in zip(x, y)]


def _invert(m: list[list]) -> list[list[mpq]]:
    n = len(m)
    a = [[mpq(x) for x in row] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def parse_system(text: str) -> list[tuple[str, int]]:
    """Parse "A3" or "A2xA1" into a factor list."""
    factors = []
    for part in text.strip().split("x"):
        m = _SYSTEM_RE.match(part.strip())
        if not m:
            raise RootSystemError(f"cannot parse system factor {part!r} in {text!r}")
        factors.append((m.group(1), int(m.group(2))))
    return factors


def format_system(factors: Sequence[tuple[str, int]]) -> str:
    return "x".join(f"{t}{r}" for t, r in factors)


class RootSystem:
    """A (product of) simple root system(s) with global node indexing."""

    def __init__(self, factors: Sequence[tuple[str, int]]):
        if not factors:
            raise RootSystemError("a root system needs at least one factor")
        for letter, rank in factors:
            if letter not in _VALID or not isinstance(rank, int) or not _VALID[letter](rank):
                raise RootSystemError(f"invalid Dynkin type {letter}{rank}")
        self.factors: tuple[tuple[str, int], ...] = tuple((t, int(r)) for t, r in factors)
        self.rank = sum(r for _, r in self.factors)
        self.offsets: tuple[int, ...] = tuple(
            sum(r for _, r in self.factors[:k]) for k in range(len(self.factors))
        )

        amb_dim = 0
        simple, scales, blocks = [], [], []
        for letter, rank in self.factors:
            roots, scale = _ambient_simple_roots(letter, rank)
            blocks.append((amb_dim, len(roots[0])))
            amb_dim += len(roots[0])
            simple.append(roots)
            scales.append(scale)
        self.ambient_dim = amb_dim
        gram = [[mpq(0)] * amb_dim for _ in range(amb_dim)]
        sr = []
        for (start, width), roots, scale in zip(blocks, simple, scales):
            for i in range(width):
                gram[start + i][start + i] = scale
            for r in roots:
                v = [mpq(0)] * amb_dim
                v[start : start + width] = r
                sr.append(tuple(v))
        self.form = tuple(tuple(row) for row in gram)
        self.simple_roots: tuple[tuple[mpq, ...], ...] = tuple(sr)

        n = self.rank
        self.root_form = tuple(
            tuple(self._amb_inner(sr[i], sr[j]) for j in range(n)) for i in range(n)
        )
        b = self.root_form
        self.cartan_matrix: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(2 * b[i][j] / b[j][j]) for j in range(n)) for i in range(n)
        )
        self._cinv = _invert([list(r) for r in self.cartan_matrix])
        # (omega_i, omega_j) via C^{-1} B C^{-T}
        cb = [[sum(self._cinv[i][k] * b[k][l] for k in range(n)) for l in range(n)] for i in range(n)]
        self.weight_form = tuple(
            tuple(sum(cb[i][l] * self._cinv[j][l] for l in range(n)) for j in range(n))
            for i in range(n)
        )
        self.fundamental_weights = tuple(
            tuple(sum((self._cinv[i][j] * sr[j][k] for j in range(n)), mpq(0)) for k in range(amb_dim))
            for i in range(n)
        )
        self.factor_of_node = tuple(f for f, (_, r) in enumerate(self.factors) for _ in range(r))
        self._build_roots()

    # -- construction helpers -------------------------------------------------
    def _amb_inner(self, x, y) -> mpq:
        return sum((x[i] * self.form[i][i] * y[i] for i in range(self.ambient_dim)), mpq(0))

    def _build_roots(self) -> None:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        # grow by height using alpha_i-strings: a + alpha_i is a root iff p - <a, alpha_i^v> > 0
        while layer:
            nxt = []
            for a in layer:
                pair = self.alpha_to_omega(a)
                fa = self._factor_of_alpha(a)
                for i in range(n):
                    if self.factor_of_node[i] != fa:
                        continue
                    p = 0
                    b = list(a)
                    while True:
                        b[i] -= 1
                        if tuple(b) not in found:
                            break
                        p += 1
                    if p - pair[i] > 0:
                        c = list(a)
                        c[i] += 1
                        c = tuple(c)
                        if c not in found:
                            found.add(c)
                            nxt.append(c)
            layer = nxt
        pos = sorted(found, key=lambda a: (sum(a), tuple(-x for x in a)))
        self.positive_roots_alpha: tuple[Vec, ...] = tuple(pos)
        self.positive_roots: tuple[Vec, ...] = tuple(self.alpha_to_omega(a) for a in pos)
        self._root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self._roots_set = set(self.positive_roots) | {tuple(-x for x in r) for r in self.positive_roots}

    def _factor_of_alpha(self, a: Sequence[int]) -> int:
        for i, x in enumerate(a):
            if x:
                return self.factor_of_node[i]
        raise RootSystemError("zero vector has no factor")

    # -- coordinates ----------------------------------------------------------
    def alpha_to_omega(self, a: Sequence) -> tuple:
        n = self.rank
        cm = self.cartan_matrix
        return tuple(sum(a[i] * cm[i][j] for i in range(n)) for j in range(n))

    def omega_to_alpha(self, m: Sequence) -> tuple[mpq, ...]:
        n = self.rank
        ci = self._cinv
        return tuple(sum((m[i] * ci[i][j] for i in range(n)), mpq(0)) for j in range(n))

    def ambient(self, m: Sequence) -> tuple[mpq, ...]:
        """Ambient coordinates of a weight given in fundamental-weight coordinates."""
        fw = self.fundamental_weights
        return tuple(
            sum((m[i] * fw[i][k] for i in range(self.rank)), mpq(0)) for k in range(self.ambient_dim)
        )

    # -- basic data -----------------------------------------------------------
    @property
    def simple_roots_omega(self) -> tuple[Vec, ...]:
        return tuple(tuple(r) for r in self.cartan_matrix)

    def factor_nodes(self, f: int) -> range:
        return range(self.offsets[f], self.offsets[f] + self.factors[f][1])

    def root_index(self, m: Vec) -> int:
        return self._root_index[tuple(m)]

    def is_root(self, m: Sequence) -> bool:
        """True iff m (fundamental-weight coordinates) lies in R."""
        return tuple(m) in self._roots_set

    def is_positive_root(self, m: Sequence) -> bool:
        return tuple(m) in self._root_index

    def inner(self, x: Sequence, y: Sequence) -> mpq:
        """Invariant form on weights in fundamental-weight coordinates."""
        if len(x) != self.rank or len(y) != self.rank:
            raise RootSystemError("dimension mismatch: expected vectors of length %d" % self.rank)
        g = self.weight_form
        return sum((x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j]), mpq(0))

    def coroot_pairing(self, m: Sequence, root: Sequence) -> mpq:
        """<m, root^vee> = 2(m, root)/(root, root)."""
        return 2 * self.inner(m, root) / self.inner(root, root)

    @cached_property
    def rho(self) -> Vec:
        return tuple([1] * self.rank)

    @cached_property
    def highest_roots(self) -> tuple[Vec, ...]:
        """Highest root of each simple factor, in fundamental-weight coordinates."""
        out = []
        for f in range(len(self.factors)):
            nodes = set(self.factor_nodes(f))
            cands = [
                (sum(a), r)
                for a, r in zip(self.positive_roots_alpha, self.positive_roots)
                if all((x == 0) or (i in nodes) for i, x in enumerate(a))
            ]
            out.append(max(cands)[1])
        return tuple(out)

    @cached_property
    def highest_root(self) -> Vec:
        if len(self.factors) != 1:
            raise RootSystemError("highest_root is defined for simple systems; use highest_roots")
        return self.highest_roots[0]

    def height(self, m: Sequence) -> mpq:
        return sum(self.omega_to_alpha(m), mpq(0))

    def __repr__(self) -> str:
        return f"RootSystem({format_system(self.factors)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and other.factors == self.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    @property
    def name(self) -> str:
        return format_system(self.factors)

    # -- Weyl group -----------------------------------------------------------
    def reflect(self, m: Sequence, i: int) -> tuple:
        c = m[i]
        if not c:
            return tuple(m)
        row = self.cartan_matrix[i]
        return tuple(x - c * a for x, a in zip(m, row))

    def apply_word(self, word: Sequence[int], m: Sequence) -> tuple:
        """Apply s_{w1} s_{w2} ... s_{wk} to m (rightmost letter acts first)."""
        v = tuple(m)
        for i in reversed(word):
            v = self.reflect(v, i)
        return v

    def dominant_conjugate(self, m: Sequence) -> tuple[tuple, int]:
        """Return (dominant conjugate, sign of the Weyl element used)."""
        v = list(m)
        sign = 1
        cm = self.cartan_matrix
        moved = True
        while moved:
            moved = False
            for i in range(self.rank):
                c = v[i]
                if c < 0:
                    row = cm[i]
                    for j in range(self.rank):
                        if row[j]:
                            v[j] -= c * row[j]
                    sign = -sign
                    moved = True
        return tuple(v), sign

    def orbit(self, m: Sequence) -> list[tuple]:
        start = tuple(m)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in range(self.rank):
                if v[i]:
                    u = self.reflect(v, i)
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
        return sorted(seen, reverse=True)

    def reduced_word(self, v: Sequence) -> list[int]:
        """Reduced word for the unique w with w(rho) = v, by left descents."""
        v = tuple(v)
        word = []
        while True:
            i = next((k for k in range(self.rank) if v[k] < 0), None)
            if i is None:
                break
            word.append(i)
            v = self.reflect(v, i)
        if v != self.rho:
            raise RootSystemError("vector is not in the Weyl orbit of rho")
        return word

    @cached_property
    def longest_word(self) -> tuple[int, ...]:
        return tuple(self.reduced_word(tuple(-x for x in self.rho)))

    def w0_action(self, m: Sequence) -> tuple:
        return self.apply_word(self.longest_word, m)

    def is_reduced(self, word: Sequence[int]) -> bool:
        return len(self.reduced_word(self.apply_word(word, self.rho))) == len(word)

    def positive_in_span(self, delta: Iterable[int]) -> list[int]:
        """Indices of positive roots lying in the span of the simple roots in delta."""
        d = set(delta)
        return [
            k for k, a in enumerate(self.positive_roots_alpha) if all(x == 0 or i in d for i, x in enumerate(a))
        ]

    def parabolic_element(self, delta: Iterable[int]) -> tuple[list[int], int]:
        """Reduced word and length of w_delta = w_{0,delta} w_0 (0-based nodes)."""
        d = sorted(set(delta))
        for i in d:
            if not 0 <= i < self.rank:
                raise RootSystemError(f"node {i + 1} outside 1..{self.rank}")
        v = self.rho
        letters = []
        while True:
            i = next((k for k in d if v[k] > 0), None)
            if i is None:
                break
            letters.append(i)
            v = self.reflect(v, i)
        # letters applied left-to-right to rho give w_{0,delta}; it is an involution
        target = tuple(-x for x in self.rho)
        for i in letters:
            target = self.reflect(target, i)
        word = self.reduced_word(target)
        return word, len(word)

    # -- weights --------------------------------------------------------------
    def is_dominant(self, m: Sequence) -> bool:
        return all(x >= 0 for x in m)

    def weyl_dimension(self, m: Sequence) -> int:
        lr = tuple(x + 1 for x in m)
        num = mpq(1)
        for a in self.positive_roots:
            num *= self.inner(lr, a) / self.inner(self.rho, a)
        return int(num)

    def weight_coset_minimum(self, m: Sequence) -> tuple:
        """The minimal dominant weight in m + Q (0 or minuscule, per factor)."""
        v, _ = self.dominant_conjugate(m)
        changed = True
        while changed:
            changed = False
            for a in self.positive_roots:
                u = tuple(x - y for x, y in zip(v, a))
                if all(x >= 0 for x in u):
                    v = u
                    changed = True
                    break
        return v


def build_root_system(factors: Sequence[tuple[str, int]] | str) -> RootSystem:
    if isinstance(factors, str):
        factors = parse_system(factors)
    return _cached(tuple((t, int(r)) for t, r in factors))


_CACHE: dict = {}


def _cached(key):
    rs = _CACHE.get(key)
    if rs is None:
        rs = RootSystem(key)
        _CACHE[key] = rs
    return rs


def inner(rs: RootSystem, x: Sequence, y: Sequence) -> mpq:
    return rs.inner(x, y)


def w0_action(rs: RootSystem, m: Sequence) -> tuple:
    return rs.w0_action(m)


def is_root(rs: RootSystem, m: Sequence) -> bool:
    return rs.is_root(m)


def parabolic_element(rs: RootSystem, delta: Iterable[int]) -> tuple[list[int], int]:
    return rs.parabolic_element(delta)


def parse_weight(rs: RootSystem, text: str) -> Vec:
    """Parse "1,0,2|1" (factors separated by '|') into global coordinates."""
    parts = text.strip().split("|")
    if len(parts) != len(rs.factors):
        raise RootSystemError(
            f"weight {text!r} has {len(parts)} factor(s); system {rs.name} has {len(rs.factors)}"
        )
    out: list[int] = []
    for (letter, rank), part in zip(rs.factors, parts):
        try:
            coeffs = [int(c) for c in part.split(",")]
        except ValueError:
            raise RootSystemError(f"cannot parse weight component {part!r}") from None
        if len(coeffs) != rank:
            raise RootSystemError(f"component {part!r} needs {rank} coefficients for {letter}{rank}")
        out.extend(coeffs)
    return tuple(out)


def format_weight(rs: RootSystem, m: Sequence[int]) -> str:
    return "|".join(",".join(str(int(m[i])) for i in rs.factor_nodes(f)) for f in range(len(rs.factors)))


def fundamental(rs: RootSystem, *nodes: int) -> Vec:
    """Sum of fundamental weights at the given 1-based nodes (repeats allowed)."""
    v = [0] * rs.rank
    for i in nodes:
        v[i - 1] += 1
    return tuple(v)
