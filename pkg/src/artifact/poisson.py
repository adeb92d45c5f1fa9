"""Decorated spaces, r-matrix brackets on S(V), Jacobi criteria and the c-kernel test.

Conventions
-----------
* V (x) V has basis e_i (x) e_j at index i*n + j; V^{(x)3} vectors are dicts keyed
  by index triples.
* Elements of S(V) are dicts keyed by sorted index tuples (monomials).  The
  image of a tensor in S(V) is its commutative image; this is the total
  symmetrization followed by the identification S^n V = Im([n]!_sigma) -> S(V).
* The canonical element is stored as [c12, c23]; its sign does not affect any
  kernel statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Mapping, Sequence

from gmpy2 import mpq

from .lie_algebra import ChevalleyAlgebra, TensorElement, _sign_of_perm, canonical_element, casimir, chevalley
from .linalg import RowReducer, SparseMatrix, SVec, as_plain, vadd
from .repr import HWModule, highest_weight_module, DEFAULT_DIM_CEILING
from .root_data import RootSystem, format_weight

Sym = dict  # sorted index tuple -> coefficient


class DecorationError(ValueError):
    pass


def flip(n: int) -> SparseMatrix:
    return SparseMatrix(n * n, n * n, [{(k % n) * n + k // n: mpq(1)} for k in range(n * n)])


class DecoratedSpace:
    """(V, Phi) with Phi on V (x) V anticommuting with the flip."""

    def __init__(self, dim: int, phi: SparseMatrix, module: HWModule | None = None, check: bool = True):
        if (phi.nrows, phi.ncols) != (dim * dim, dim * dim):
            raise DecorationError("Phi must act on V (x) V")
        self.dim = dim
        self.phi = phi
        self.module = module
        if check and not self.anticommutes_with_flip():
            raise DecorationError("tau o Phi != -Phi o tau")

    def anticommutes_with_flip(self) -> bool:
        t = flip(self.dim)
        return ((t @ self.phi) + (self.phi @ t)).is_zero()

    def scaled(self, c) -> "DecoratedSpace":
        return DecoratedSpace(self.dim, self.phi.scale(c), self.module, check=False)

    def phi_on(self, i: int, j: int) -> list[tuple[int, int, object]]:
        n = self.dim
        return [(k // n, k % n, x) for k, x in self.phi.cols[i * n + j].items()]

    @classmethod
    def from_function(cls, dim: int, fn, module=None) -> "DecoratedSpace":
        """fn(i, j) -> {(p, q): coeff} giving Phi(e_i (x) e_j)."""
        cols = []
        for i in range(dim):
            for j in range(dim):
                cols.append({p * dim + q: mpq(c) for (p, q), c in fn(i, j).items() if c})
        return cls(dim, SparseMatrix(dim * dim, dim * dim, cols), module)


# -- r-matrix decorations ------------------------------------------------------

def r_minus_element(g: ChevalleyAlgebra) -> TensorElement:
    """r^- = sum_alpha k_alpha (E_alpha (x) F_alpha - F_alpha (x) E_alpha), k_alpha = 1/kappa(E,F)."""
    out = {}
    for k in range(g.npos):
        w = g.dual_weight(k)
        out[(g.e(k), g.f(k))] = w
        out[(g.f(k), g.e(k))] = -w
    return TensorElement(2, out)


def r_matrix_element(g: ChevalleyAlgebra) -> TensorElement:
    """r = c + r^-, so that r + tau(r) = 2c."""
    return casimir(g) + r_minus_element(g)


def tensor_action(m: HWModule, t: TensorElement) -> SparseMatrix:
    """(rho (x) rho)(t) on V (x) V."""
    if t.order != 2:
        raise ValueError("expected an order-2 tensor")
    n = m.dim
    cols: list[SVec] = [{} for _ in range(n * n)]
    for (a, b), c in t.coeffs.items():
        ma, mb = m.action[a], m.action[b]
        for i in range(n):
            u = ma.cols[i]
            if not u:
                continue
            for j in range(n):
                w = mb.cols[j]
                if not w:
                    continue
                col = cols[i * n + j]
                for p, x in u.items():
                    for q, y in w.items():
                        vadd(col, {p * n + q: x * y}, c)
    return SparseMatrix(n * n, n * n, cols)


def r_minus(g: ChevalleyAlgebra, m: HWModule) -> DecoratedSpace:
    if m.algebra is not g and m.algebra.root_system != g.root_system:
        raise ValueError("module is over a different algebra")
    return DecoratedSpace(m.dim, tensor_action(m, r_minus_element(g)), m)


def plus_part_matches_casimir(g: ChevalleyAlgebra, m: HWModule) -> bool:
    """Check that 1/2 (action of r + tau r) equals the action of c."""
    r = r_matrix_element(g)
    sym = (r + r.permute((1, 0))).scale(mpq(1, 2))
    return tensor_action(m, sym) == tensor_action(m, casimir(g))


# -- operators on V^{(x)3} -------------------------------------------------------

def _apply_pair(d: DecoratedSpace, vec: Mapping[tuple, object], s: int, t: int) -> dict:
    n = d.dim
    cols = d.phi.cols
    out: dict = {}
    for key, c in vec.items():
        col = cols[key[s] * n + key[t]]
        for idx, x in col.items():
            k = list(key)
            k[s], k[t] = divmod(idx, n)
            k = tuple(k)
            y = out.get(k, 0) + c * x
            if y:
                out[k] = y
            else:
                del out[k]
    return out


def apply_schouten(d: DecoratedSpace, vec: Mapping[tuple, object]) -> dict:
    """[[Phi, Phi]] = [Phi12, Phi13] + [Phi12, Phi23] + [Phi13, Phi23] applied to a vector."""
    out: dict = {}
    for (s1, t1), (s2, t2) in (((0, 1), (0, 2)), ((0, 1), (1, 2)), ((0, 2), (1, 2))):
        vadd(out, _apply_pair(d, _apply_pair(d, vec, s2, t2), s1, t1))
        vadd(out, _apply_pair(d, _apply_pair(d, vec, s1, t1), s2, t2), -1)
    return out


def schouten_square(d: DecoratedSpace) -> SparseMatrix:
    n = d.dim
    cols = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                img = apply_schouten(d, {(i, j, k): mpq(1)})
                cols.append({(p * n + q) * n + r: x for (p, q, r), x in img.items()})
    return SparseMatrix(n**3, n**3, cols)


def permutation_operator(n: int, perm: Sequence[int]) -> SparseMatrix:
    """Operator on V^{(x)3} sending slot s to slot perm[s]."""
    cols = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                src = (i, j, k)
                dst = [0, 0, 0]
                for s in range(3):
                    dst[perm[s]] = src[s]
                cols.append({(dst[0] * n + dst[1]) * n + dst[2]: mpq(1)})
    return SparseMatrix(n**3, n**3, cols)


def antisymmetrized(*idx: int) -> dict:
    out: dict = {}
    for p in permutations(range(len(idx))):
        key = tuple(idx[s] for s in p)
        vadd(out, {key: mpq(1)}, _sign_of_perm(p))
    return out


def to_sym(vec: Mapping[tuple, object]) -> Sym:
    """Commutative image in S(V) of a tensor."""
    out: Sym = {}
    for key, c in vec.items():
        vadd(out, {tuple(sorted(key)): c})
    return out


@dataclass
class Verdict:
    poisson: bool
    witness: dict | None = None
    checked: int = 0
    method: str = ""
    extra: dict = field(default_factory=dict)


def _labels(m: HWModule | None, idx: Sequence[int]) -> list:
    if m is None:
        return list(idx)
    rs = m.root_system
    return [{"index": i, "weight": format_weight(rs, m.basis_weights[i])} for i in idx]


def _sym_json(poly: Mapping[tuple, object]) -> list:
    return [{"monomial": list(k), "coeff": as_plain(v)} for k, v in sorted(poly.items())]


def poisson_decorated_verdict(d: DecoratedSpace) -> Verdict:
    n = d.dim
    if n < 3:
        return Verdict(True, method="schouten")
    count = 0
    for i, j, k in combinations(range(n), 3):
        count += 1
        img = apply_schouten(d, antisymmetrized(i, j, k))
        if img:
            wit = {
                "triple": _labels(d.module, (i, j, k)),
                "image_s3": _sym_json(to_sym(img)),
                "image_nonzero_terms": len(img),
            }
            return Verdict(False, wit, count, "schouten")
    return Verdict(True, None, count, "schouten")


def is_poisson_decorated(d: DecoratedSpace) -> bool:
    """[[Phi, Phi]] restricted to Lambda^3 V vanishes."""
    return poisson_decorated_verdict(d).poisson


def symmetrized_schouten_vanishes(d: DecoratedSpace) -> bool:
    """Criterion [3]!_sigma o [[Phi, Phi]] = 0, on every basis tensor."""
    n = d.dim
    for key in ((i, j, k) for i in range(n) for j in range(n) for k in range(n)):
        if to_sym(apply_schouten(d, {key: mpq(1)})):
            return False
    return True


# -- brackets on S(V) -----------------------------------------------------------

def sym_mul(a: Mapping[tuple, object], b: Mapping[tuple, object]) -> Sym:
    out: Sym = {}
    for ka, x in a.items():
        for kb, y in b.items():
            vadd(out, {tuple(sorted(ka + kb)): x * y})
    return out


def sym_add(*terms: Mapping) -> Sym:
    out: Sym = {}
    for t in terms:
        vadd(out, t)
    return out


def sym_scale(a: Mapping, c) -> Sym:
    return {k: c * v for k, v in a.items()} if c else {}


def bracket(d: DecoratedSpace, a: Mapping[tuple, object], b: Mapping[tuple, object]) -> Sym:
    """{a, b} = 1/(m+n)! [m+n]!_sigma Phi^{(m,n)}(a^ (x) b^), extended bilinearly.

    With a^, b^ the symmetric lifts, total symmetrization followed by the
    identification with S(V) keeps only the commutative image, so each pair of
    factors (one from a, one from b) contributes Phi applied to that pair
    times the remaining factors.
    """
    out: Sym = {}
    for ka, x in a.items():
        for kb, y in b.items():
            for p in range(len(ka)):
                rest_a = ka[:p] + ka[p + 1 :]
                for q in range(len(kb)):
                    rest = rest_a + kb[:q] + kb[q + 1 :]
                    for u, w, c in d.phi_on(ka[p], kb[q]):
                        key = tuple(sorted(rest + (u, w)))
                        vadd(out, {key: c * x * y})
    return out


def basis_element(i: int) -> Sym:
    return {(i,): mpq(1)}


def jacobian(d: DecoratedSpace, a: Mapping, b: Mapping, c: Mapping) -> Sym:
    return sym_add(
        bracket(d, a, bracket(d, b, c)),
        bracket(d, c, bracket(d, a, b)),
        bracket(d, b, bracket(d, c, a)),
    )


def jacobi_verdict(d: DecoratedSpace) -> Verdict:
    n = d.dim
    count = 0
    for i, j, k in combinations_with_replacement(range(n), 3):
        count += 1
        jac = jacobian(d, basis_element(i), basis_element(j), basis_element(k))
        if jac:
            wit = {"triple": _labels(d.module, (i, j, k)), "jacobian": _sym_json(jac)}
            return Verdict(False, wit, count, "jacobi")
    return Verdict(True, None, count, "jacobi")


def jacobi_bruteforce(d: DecoratedSpace) -> bool:
    return jacobi_verdict(d).poisson


def tensor_decorated(d1: DecoratedSpace, d2: DecoratedSpace) -> DecoratedSpace:
    """(V (x) V', Phi_13 + Phi'_24) with V (x) V' indexed by i*dim' + i'."""
    n1, n2 = d1.dim, d2.dim
    n = n1 * n2

    def fn(x: int, y: int) -> dict:
        i, i2 = divmod(x, n2)
        j, j2 = divmod(y, n2)
        out: dict = {}
        for p, q, c in d1.phi_on(i, j):
            k = (p * n2 + i2, q * n2 + j2)
            out[k] = out.get(k, 0) + c
        for p, q, c in d2.phi_on(i2, j2):
            k = (i * n2 + p, j * n2 + q)
            out[k] = out.get(k, 0) + c
        return out

    return DecoratedSpace.from_function(n, fn)


def closure_hilbert(d: DecoratedSpace, max_degree: int) -> list[int]:
    """dim of the degree-n part of S(V)/(J(V,V,V)) for n = 0..max_degree."""
    if max_degree > 6:
        raise ValueError("closure_hilbert is limited to max_degree <= 6")
    n = d.dim
    jac = []
    for i, j, k in combinations(range(n), 3):
        v = jacobian(d, basis_element(i), basis_element(j), basis_element(k))
        if v:
            jac.append(v)
    out = []
    for deg in range(max_degree + 1):
        total = comb(n + deg - 1, deg)
        if deg < 3 or not jac:
            out.append(total)
            continue
        rr = RowReducer()
        for mono in combinations_with_replacement(range(n), deg - 3):
            for v in jac:
                rr.add({tuple(sorted(mono + k)): c for k, c in v.items()})
        out.append(total - rr.rank)
    return out


# -- canonical-element test --------------------------------------------------------

class _CanonicalKernel:
    """c = [c12, c23] grouped by its first two slots, for fast evaluation."""

    def __init__(self, g: ChevalleyAlgebra):
        self.g = g
        self.terms: dict[tuple[int, int], list[tuple[int, object]]] = {}
        for (a, b, c), v in canonical_element(g).coeffs.items():
            self.terms.setdefault((a, b), []).append((c, v))


_KERNELS: dict = {}


def _kernel(g: ChevalleyAlgebra) -> _CanonicalKernel:
    k = _KERNELS.get(g.root_system.factors)
    if k is None or k.g is not g:
        k = _CanonicalKernel(g)
        _KERNELS[g.root_system.factors] = k
    return k


def canonical_image(m: HWModule, i: int, j: int, k: int, kernel: _CanonicalKernel | None = None) -> Sym:
    """Image of e_i ^ e_j ^ e_k under c, projected to S^3 V (up to the factor 6)."""
    kern = kernel or _kernel(m.algebra)
    act = m.action
    out: Sym = {}
    for a in range(m.algebra.dim):
        u = act[a].cols[i]
        if not u:
            continue
        for b in range(m.algebra.dim):
            terms = kern.terms.get((a, b))
            if not terms:
                continue
            w = act[b].cols[j]
            if not w:
                continue
            for c, coef in terms:
                z = act[c].cols[k]
                if not z:
                    continue
                for p, x in u.items():
                    for q, y in w.items():
                        xy = coef * x * y
                        for r, t in z.items():
                            key = tuple(sorted((p, q, r)))
                            val = out.get(key, 0) + xy * t
                            if val:
                                out[key] = val
                            else:
                                del out[key]
    return out


def canonical_image_literal(m: HWModule, i: int, j: int, k: int) -> Sym:
    """Apply c as an operator on V^{(x)3} to the antisymmetrized tensor, then symmetrize."""
    vec = antisymmetrized(i, j, k)
    out: dict = {}
    for (a, b, c), coef in canonical_element(m.algebra).coeffs.items():
        for key, s in vec.items():
            u, w, z = m.action[a].cols[key[0]], m.action[b].cols[key[1]], m.action[c].cols[key[2]]
            if not (u and w and z):
                continue
            for p, x in u.items():
                for q, y in w.items():
                    for r, t in z.items():
                        vadd(out, {(p, q, r): coef * s * x * y * t})
    return to_sym(out)


def _triples_of_weight(m: HWModule, target: tuple) -> list[tuple[int, int, int]]:
    spaces = m.weight_spaces()
    wts = m.basis_weights
    out = []
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            need = tuple(t - a - b for t, a, b in zip(target, wts[i], wts[j]))
            for k in spaces.get(need, ()):
                if k > j:
                    out.append((i, j, k))
    return out


def poisson_module_verdict(m: HWModule, method: str = "weight") -> Verdict:
    """Decide c(Lambda^3 V) = 0.

    method="weight" tests only the basis of Lambda^3 V of weight mu0, the minimal
    dominant weight congruent to 3*lambda: the image of c is a submodule of
    S^3 V and every simple constituent of it has mu0 as a weight.
    method="full" tests every triple; method="literal" applies c on V^{(x)3}.
    """
    n = m.dim
    if n < 3:
        return Verdict(True, method=method)
    rs = m.root_system
    if method == "weight":
        mu0 = rs.weight_coset_minimum(tuple(3 * x for x in m.highest_weight))
        triples = _triples_of_weight(m, mu0)
    elif method in ("full", "literal"):
        triples = list(combinations(range(n), 3))
    else:
        raise ValueError(f"unknown method {method!r}")
    kern = _kernel(m.algebra)
    count = 0
    for i, j, k in triples:
        count += 1
        img = canonical_image_literal(m, i, j, k) if method == "literal" else canonical_image(m, i, j, k, kern)
        if img:
            wit = {"triple": _labels(m, (i, j, k)), "image_s3": _sym_json(img)}
            return Verdict(False, wit, count, method)
    return Verdict(True, None, count, method)


def is_poisson_module(
    g: ChevalleyAlgebra | RootSystem | str | HWModule,
    lam: Sequence[int] | None = None,
    dim_ceiling: int | None = DEFAULT_DIM_CEILING,
    method: str = "weight",
) -> bool:
    if isinstance(g, HWModule):
        m = g
    else:
        alg = g if isinstance(g, ChevalleyAlgebra) else chevalley(g)
        m = highest_weight_module(alg, lam, dim_ceiling)
    return poisson_module_verdict(m, method).poisson


def flatness_check(g, lam=None, dim_ceiling: int | None = DEFAULT_DIM_CEILING, method: str = "weight") -> bool:
    """Flat iff the classical limit is Poisson; same computation as is_poisson_module."""
    return is_poisson_module(g, lam, dim_ceiling, method)


# -- necessary conditions -----------------------------------------------------------

def max_coroot_pairing(rs: RootSystem, lam: Sequence[int]) -> int:
    """max over positive roots alpha of <lambda, alpha^vee>."""
    return max(int(rs.coroot_pairing(lam, a)) for a in rs.positive_roots)


def sl2_filter(rs: RootSystem, lam: Sequence[int]) -> bool:
    """<lambda, alpha^vee> <= 2 for all roots alpha."""
    return max_coroot_pairing(rs, lam) <= 2


def double_weight_filter(rs: RootSystem, lam: Sequence[int]) -> bool | None:
    """If w0(lambda) = -lambda: 2 lambda - alpha_i in R u {0} whenever (lambda, alpha_i) != 0.

    Returns None when the hypothesis w0(lambda) = -lambda fails.
    """
    lam = tuple(lam)
    if rs.w0_action(lam) != tuple(-x for x in lam):
        return None
    for i in range(rs.rank):
        if lam[i]:
            v = tuple(2 * x - y for x, y in zip(lam, rs.cartan_matrix[i]))
            if any(v) and not rs.is_root(v):
                return False
    return True


def passes_filters(rs: RootSystem, lam: Sequence[int]) -> bool:
    return sl2_filter(rs, lam) and double_weight_filter(rs, lam) is not False
