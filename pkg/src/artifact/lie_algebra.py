"""Chevalley basis, Killing form, Casimir element c and canonical element [c12, c23].

Basis order is E_alpha (alpha in R+, root-system order), then F_alpha, then
H_1..H_r.  Non-simple root vectors are fixed recursively by

    E_alpha = [E_i, E_beta] / (p + 1),     F_alpha = -[F_i, F_beta] / (p + 1),

where i is the smallest node with beta = alpha - alpha_i a positive root and p
is the largest integer with beta - p*alpha_i a root.  This is the
extraspecial-pair convention N_{alpha_i, beta} = +(p + 1), and it makes
F_alpha = -omega(E_alpha) for the Chevalley involution omega, so that
[E_alpha, F_alpha] = H_alpha is the coroot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .linalg import SparseMatrix, invert_dense, vadd
from .root_data import RootSystem, build_root_system
from .verma import build_simple_actions


@dataclass(frozen=True)
class Recipe:
    """How E_alpha is obtained from a simple root vector and a lower root vector."""

    node: int
    lower: int  # index of beta in the positive-root list
    divisor: int


def _sign_of_perm(p: Sequence[int]) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


@dataclass
class TensorElement:
    """Sparse element of g^{(x)order}; keys are basis-index tuples."""

    order: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def permute(self, perm: Sequence[int]) -> "TensorElement":
        """Move slot s to slot perm[s]."""
        out = {}
        for k, v in self.coeffs.items():
            new = [None] * self.order
            for s, t in enumerate(perm):
                new[t] = k[s]
            out[tuple(new)] = v
        return TensorElement(self.order, out)

    def scale(self, c) -> "TensorElement":
        return TensorElement(self.order, {k: c * v for k, v in self.coeffs.items()})

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.coeffs)
        vadd(out, other.coeffs)
        return TensorElement(self.order, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(-1)

    def __neg__(self) -> "TensorElement":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_proportional(self, other: "TensorElement") -> mpq | None:
        """Return t with self == t*other, or None."""
        if self.is_zero() or other.is_zero():
            return None
        k = next(iter(other.coeffs))
        if k not in self.coeffs:
            return None
        t = self.coeffs[k] / other.coeffs[k]
        return t if (self - other.scale(t)).is_zero() else None


class ChevalleyAlgebra:
    def __init__(self, rs: RootSystem):
        self.root_system = rs
        npos = len(rs.positive_roots)
        self.npos = npos
        self.rank = rs.rank
        self.dim = 2 * npos + rs.rank
        self.basis: list[tuple[str, int]] = (
            [("E", k) for k in range(npos)] + [("F", k) for k in range(npos)] + [("H", i) for i in range(rs.rank)]
        )
        self.recipes: dict[int, Recipe] = {}
        self.simple_index: dict[int, int] = {}
        self._build()

    # -- indices --------------------------------------------------------------
    def e(self, k: int) -> int:
        return k

    def f(self, k: int) -> int:
        return self.npos + k

    def h(self, i: int) -> int:
        return 2 * self.npos + i

    def weight(self, a: int) -> tuple:
        rs = self.root_system
        if a < self.npos:
            return rs.positive_roots[a]
        if a < 2 * self.npos:
            return tuple(-x for x in rs.positive_roots[a - self.npos])
        return tuple([0] * rs.rank)

    def label(self, a: int) -> str:
        kind, k = self.basis[a]
        if kind == "H":
            return f"H{k + 1}"
        coeffs = "".join(str(x) for x in self.root_system.positive_roots_alpha[k])
        return f"{kind}[{coeffs}]"

    def index_of_label(self, text: str) -> int:
        for a in range(self.dim):
            if self.label(a) == text:
                return a
        raise KeyError(f"unknown basis label {text!r}")

    # -- construction ---------------------------------------------------------
    def _build(self) -> None:
        rs = self.root_system
        pos = rs.positive_roots_alpha
        index = {a: k for k, a in enumerate(pos)}
        for k, a in enumerate(pos):
            if sum(a) == 1:
                self.simple_index[a.index(1)] = k
                continue
            node = next(i for i in range(rs.rank) if a[i] and tuple(x - (j == i) for j, x in enumerate(a)) in index)
            beta = tuple(x - (j == node) for j, x in enumerate(a))
            p = 0
            b = list(beta)
            while True:
                b[node] -= 1
                if tuple(b) not in index:
                    break
                p += 1
            self.recipes[k] = Recipe(node, index[beta], p + 1)

        mats = self._adjoint_matrices()
        self._mats = mats
        self.structure_constants = self._compute_structure_constants(mats)
        self._check_cartan_relations()

    def _adjoint_matrices(self) -> list[SparseMatrix]:
        """A faithful representation: direct sum of the factor adjoint modules."""
        rs = self.root_system
        blocks = []
        total = 0
        for f, factor in enumerate(rs.factors):
            sub = build_root_system([factor])
            acts = build_simple_actions(sub, sub.highest_root)
            blocks.append((total, acts))
            total += len(acts.weights)
        e_simple, f_simple = [None] * rs.rank, [None] * rs.rank
        for f, (start, acts) in enumerate(blocks):
            for local, node in enumerate(rs.factor_nodes(f)):
                e_simple[node] = _embed(acts.e[local], start, total)
                f_simple[node] = _embed(acts.f[local], start, total)
        return self.complete_action(e_simple, f_simple)

    def complete_action(self, e_simple: Sequence[SparseMatrix], f_simple: Sequence[SparseMatrix]) -> list[SparseMatrix]:
        """Matrices for the whole basis from those of the simple generators."""
        npos = self.npos
        mats: list[SparseMatrix | None] = [None] * self.dim
        for node, k in self.simple_index.items():
            mats[self.e(k)] = e_simple[node]
            mats[self.f(k)] = f_simple[node]
        for k in range(npos):
            r = self.recipes.get(k)
            if r is None:
                continue
            c = mpq(1, r.divisor)
            mats[self.e(k)] = e_simple[r.node].commutator(mats[self.e(r.lower)]).scale(c)
            mats[self.f(k)] = f_simple[r.node].commutator(mats[self.f(r.lower)]).scale(-c)
        for i in range(self.rank):
            mats[self.h(i)] = e_simple[i].commutator(f_simple[i])
        return mats  # type: ignore[return-value]

    def coroot(self, k: int) -> tuple:
        """Coefficients of H_alpha in terms of H_1..H_r for the k-th positive root."""
        rs = self.root_system
        a = rs.positive_roots_alpha[k]
        r = rs.positive_roots[k]
        aa = rs.inner(r, r)
        return tuple(a[i] * rs.root_form[i][i] / aa for i in range(rs.rank))

    def _compute_structure_constants(self, mats: list[SparseMatrix]) -> dict:
        rs = self.root_system
        sc: dict[tuple[int, int], list[tuple[int, int]]] = {}
        root_pos = {r: k for k, r in enumerate(rs.positive_roots)}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                m = mats[a].commutator(mats[b])
                if m.is_zero():
                    continue
                w = tuple(x + y for x, y in zip(self.weight(a), self.weight(b)))
                if any(w):
                    if w in root_pos:
                        t = self.e(root_pos[w])
                    else:
                        t = self.f(root_pos[tuple(-x for x in w)])
                    coeff = _ratio(m, mats[t])
                    terms = [(t, coeff)]
                else:
                    terms = self._cartan_terms(m, mats)
                for _, c in terms:
                    if mpq(c).denominator != 1:
                        raise AssertionError("non-integral structure constant")
                terms = [(t, int(c)) for t, c in terms]
                sc[(a, b)] = terms
                sc[(b, a)] = [(t, -c) for t, c in terms]
        return sc

    def _cartan_terms(self, m: SparseMatrix, mats: list[SparseMatrix]) -> list[tuple[int, mpq]]:
        # solve m = sum c_i H_i; H_i acts on the E_{alpha_j} column by C[j][i]
        n = self.rank
        cm = self.root_system.cartan_matrix
        ej = [mats[self.e(self.simple_index[j])] for j in range(n)]
        # pick, for each j, an entry where E_{alpha_j} is nonzero and read the eigenvalue there
        rhs = []
        for j in range(n):
            col = next(c for c in range(ej[j].ncols) if ej[j].cols[c])
            row = next(iter(ej[j].cols[col]))
            # [m, E_j] = (sum_i c_i C[j][i]) E_j
            comm = m.commutator(ej[j])
            rhs.append(comm.entry(row, col) / ej[j].entry(row, col))
        sol = invert_dense([[cm[j][i] for i in range(n)] for j in range(n)])
        coeffs = [sum((sol[i][j] * rhs[j] for j in range(n)), mpq(0)) for i in range(n)]
        total = SparseMatrix(m.nrows, m.ncols)
        for i, c in enumerate(coeffs):
            if c:
                total = total.combine(mats[self.h(i)], c)
        if not (total - m).is_zero():
            raise AssertionError("bracket does not lie in the Cartan subalgebra")
        return [(self.h(i), c) for i, c in enumerate(coeffs) if c]

    def _check_cartan_relations(self) -> None:
        for k in range(self.npos):
            got = dict(self.bracket_basis(self.e(k), self.f(k)))
            want = {self.h(i): c for i, c in enumerate(self.coroot(k)) if c}
            if got != want:
                raise AssertionError(f"[E,F] != H_alpha for root {self.label(k)}")

    # -- bracket --------------------------------------------------------------
    def bracket_basis(self, a: int, b: int) -> list[tuple[int, int]]:
        return self.structure_constants.get((a, b), [])

    def bracket(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for t, c in self.bracket_basis(a, b):
                    vadd(out, {t: c}, ca * cb)
        return out

    # -- invariant forms ------------------------------------------------------
    def ad_matrix(self, a: int) -> SparseMatrix:
        cols = [{t: mpq(c) for t, c in self.bracket_basis(a, b)} for b in range(self.dim)]
        return SparseMatrix(self.dim, self.dim, cols)

    @cached_property
    def killing_form(self) -> list[list[int]]:
        ads = [self.ad_matrix(a) for a in range(self.dim)]
        out = [[0] * self.dim for _ in range(self.dim)]
        for a in range(self.dim):
            for b in range(a, self.dim):
                wa, wb = self.weight(a), self.weight(b)
                if any(x + y for x, y in zip(wa, wb)):
                    continue
                t = (ads[a] @ ads[b]).trace()
                out[a][b] = out[b][a] = int(t)
        return out

    @cached_property
    def killing_inverse(self) -> dict[tuple[int, int], mpq]:
        """Nonzero entries of the inverse Killing matrix (block structure used)."""
        kf = self.killing_form
        inv: dict[tuple[int, int], mpq] = {}
        for k in range(self.npos):
            e, f = self.e(k), self.f(k)
            x = mpq(1) / kf[e][f]
            inv[(e, f)] = x
            inv[(f, e)] = x
        hs = [self.h(i) for i in range(self.rank)]
        block = invert_dense([[kf[a][b] for b in hs] for a in hs])
        for i, a in enumerate(hs):
            for j, b in enumerate(hs):
                if block[i][j]:
                    inv[(a, b)] = block[i][j]
        return inv

    def dual_weight(self, k: int) -> mpq:
        """1 / kappa(E_alpha, F_alpha), the scalar pairing E_alpha with its dual."""
        return self.killing_inverse[(self.e(k), self.f(k))]

    def ad_tensor(self, a: int, t: TensorElement) -> TensorElement:
        """(ad x_a acting diagonally) on a tensor element."""
        out: dict = {}
        for key, v in t.coeffs.items():
            for s in range(t.order):
                for u, c in self.bracket_basis(a, key[s]):
                    nk = key[:s] + (u,) + key[s + 1 :]
                    vadd(out, {nk: c}, v)
        return TensorElement(t.order, out)

    def dump_structure_constants(self) -> str:
        lines = []
        for (a, b), terms in sorted(self.structure_constants.items()):
            if a < b:
                rhs = " ".join(f"{c:+d}*{self.label(t)}" for t, c in terms)
                lines.append(f"[{self.label(a)},{self.label(b)}] = {rhs}")
        return "\n".join(lines) + "\n"


def _ratio(m: SparseMatrix, target: SparseMatrix) -> mpq:
    for j, col in enumerate(target.cols):
        for i, x in col.items():
            t = m.entry(i, j) / x
            if not (m - target.scale(t)).is_zero():
                raise AssertionError("bracket is not a multiple of the expected root vector")
            return t
    raise AssertionError("zero root vector")


def _embed(m: SparseMatrix, start: int, total: int) -> SparseMatrix:
    cols = [{} for _ in range(total)]
    for j, col in enumerate(m.cols):
        cols[start + j] = {start + i: x for i, x in col.items()}
    return SparseMatrix(total, total, cols)


_ALG_CACHE: dict = {}


def chevalley(rs: RootSystem | str) -> ChevalleyAlgebra:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    g = _ALG_CACHE.get(rs.factors)
    if g is None:
        g = ChevalleyAlgebra(rs)
        _ALG_CACHE[rs.factors] = g
    return g


def casimir(g: ChevalleyAlgebra) -> TensorElement:
    """c = sum_a x_a (x) x^a over Killing-dual bases."""
    return TensorElement(2, dict(g.killing_inverse))


def canonical_element(g: ChevalleyAlgebra) -> TensorElement:
    """[c12, c23] = sum x_a (x) [x^a, x_b] (x) x^b."""
    inv = g.killing_inverse
    by_row: dict[int, list[tuple[int, mpq]]] = {}
    for (a, b), v in inv.items():
        by_row.setdefault(a, []).append((b, v))
    out: dict = {}
    for a, duals_a in by_row.items():
        for b, duals_b in by_row.items():
            for a2, ka in duals_a:
                for t, c in g.bracket_basis(a2, b):
                    for b2, kb in duals_b:
                        vadd(out, {(a, t, b2): c}, ka * kb)
    return TensorElement(3, out)


def wedge(*idx: int) -> TensorElement:
    """x_{i1} ^ ... ^ x_{ik} as the signed sum over permutations."""
    out: dict = {}
    k = len(idx)
    for p in permutations(range(k)):
        key = tuple(idx[p[s]] for s in range(k))
        vadd(out, {key: mpq(1)}, _sign_of_perm(p))
    return TensorElement(k, out)


def explicit_canonical(g: ChevalleyAlgebra) -> TensorElement:
    """sum_{alpha,beta>0} (alpha,alpha)(beta,beta)/4 E_alpha ^ [E_-alpha, E_beta] ^ E_-beta."""
    rs = g.root_system
    total = TensorElement(3)
    for a in range(g.npos):
        ra = rs.positive_roots[a]
        for b in range(g.npos):
            rb = rs.positive_roots[b]
            w = rs.inner(ra, ra) * rs.inner(rb, rb) / 4
            for t, c in g.bracket_basis(g.f(a), g.e(b)):
                total = total + wedge(g.e(a), t, g.f(b)).scale(w * c)
    return total


def is_totally_antisymmetric(t: TensorElement) -> bool:
    for p in permutations(range(t.order)):
        if not (t.permute(p) - t.scale(_sign_of_perm(p))).is_zero():
            return False
    return True


def is_invariant(g: ChevalleyAlgebra, t: TensorElement, elements: Iterable[int] | None = None) -> bool:
    for a in elements if elements is not None else range(g.dim):
        if not g.ad_tensor(a, t).is_zero():
            return False
    return True


def product_embedding(g: ChevalleyAlgebra, f: int) -> dict[int, int]:
    """Basis-index map from the f-th simple factor algebra into g."""
    rs = g.root_system
    sub = chevalley(build_root_system([rs.factors[f]]))
    off = rs.offsets[f]
    width = sub.rank
    mapping = {}
    for k, a in enumerate(sub.root_system.positive_roots_alpha):
        full = tuple([0] * off) + a + tuple([0] * (rs.rank - off - width))
        gk = rs.positive_roots_alpha.index(full)
        mapping[sub.e(k)] = g.e(gk)
        mapping[sub.f(k)] = g.f(gk)
    for i in range(width):
        mapping[sub.h(i)] = g.h(off + i)
    return mapping
