"""Simple-generator actions on V_lambda as a quotient of the Verma module.

Only the Cartan matrix is needed: vectors F_{i_1}...F_{i_k} v are generated by
depth, E_j is commuted across the F's, and linear dependence is decided by the
contravariant (Shapovalov) form.  This is shared by the Chevalley-basis
construction (via the adjoint module) and by the module constructor.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .linalg import SparseMatrix, SVec, vadd, solve_dense
from .root_data import RootSystem


class ConstructionError(RuntimeError):
    pass


@dataclass
class SimpleActions:
    weights: list[tuple]          # weight of each basis vector
    e: list[SparseMatrix]         # E_i, one per node
    f: list[SparseMatrix]         # F_i, one per node
    grams: dict                   # weight -> Gram matrix of that weight space


def _is_weight(rs: RootSystem, lam: tuple, mu: tuple) -> bool:
    dom, _ = rs.dominant_conjugate(mu)
    diff = rs.omega_to_alpha(tuple(a - b for a, b in zip(lam, dom)))
    return all(x >= 0 and x.denominator == 1 for x in diff)


def build_simple_actions(rs: RootSystem, lam: tuple, check_positive: bool = True) -> SimpleActions:
    n = rs.rank
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    cm = rs.cartan_matrix
    alpha = [tuple(r) for r in cm]

    weights: list[tuple] = [lam]
    space: dict[tuple, list[int]] = {lam: [0]}
    grams: dict[tuple, list[list[mpq]]] = {lam: [[mpq(1)]]}
    e_cols: list[dict[int, SVec]] = [{} for _ in range(n)]   # column idx -> image
    f_cols: list[dict[int, SVec]] = [{} for _ in range(n)]
    layer = [lam]

    def apply(cols: dict[int, SVec], v: SVec) -> SVec:
        out: SVec = {}
        for k, c in v.items():
            col = cols.get(k)
            if col:
                vadd(out, col, c)
        return out

    for i in range(n):
        e_cols[i][0] = {}

    while layer:
        cand_weights = set()
        for w in layer:
            for i in range(n):
                mu = tuple(a - b for a, b in zip(w, alpha[i]))
                if mu not in space and _is_weight(rs, lam, mu):
                    cand_weights.add(mu)
        order = sorted(
            cand_weights,
            key=lambda mu: tuple(rs.omega_to_alpha(tuple(a - b for a, b in zip(lam, mu)))),
        )
        new_layer = []
        for mu in order:
            cands = []
            for i in range(n):
                up = tuple(a + b for a, b in zip(mu, alpha[i]))
                for w in space.get(up, ()):
                    cands.append((i, w, up))
            if not cands:
                continue
            # E_j on each candidate F_i w, expressed in the basis of V(mu + alpha_j)
            images = []
            for i, w, up in cands:
                img = []
                for j in range(n):
                    v = apply(f_cols[i], e_cols[j].get(w, {}))
                    if i == j:
                        vadd(v, {w: mpq(up[i])})
                    img.append(v)
                images.append(img)
            k = len(cands)
            gram = [[mpq(0)] * k for _ in range(k)]
            for a, (i, w, up) in enumerate(cands):
                basis_up = space[up]
                pos = basis_up.index(w)
                g_row = grams[up][pos]
                for b in range(k):
                    vec = images[b][i]
                    s = mpq(0)
                    for u, x in vec.items():
                        s += g_row[basis_up.index(u)] * x
                    gram[a][b] = s
            chosen = _select_basis(gram, check_positive)
            if not chosen:
                continue
            start = len(weights)
            idxs = list(range(start, start + len(chosen)))
            weights.extend([mu] * len(chosen))
            space[mu] = idxs
            g_bb = [[gram[a][b] for b in chosen] for a in chosen]
            grams[mu] = g_bb
            rest = [c for c in range(k) if c not in chosen]
            coeffs = {}
            if rest:
                rhs = [[gram[a][c] for c in rest] for a in chosen]
                sol = solve_dense(g_bb, rhs)
                for col, c in enumerate(rest):
                    coeffs[c] = {idxs[r]: sol[r][col] for r in range(len(chosen)) if sol[r][col]}
            for pos, c in enumerate(chosen):
                coeffs[c] = {idxs[pos]: mpq(1)}
            for c, (i, w, up) in enumerate(cands):
                f_cols[i][w] = coeffs[c]
            for pos, c in enumerate(chosen):
                for j in range(n):
                    e_cols[j][idxs[pos]] = images[c][j]
            new_layer.append(mu)
        layer = new_layer

    dim = len(weights)
    e = [SparseMatrix(dim, dim, [e_cols[i].get(c, {}) for c in range(dim)]) for i in range(n)]
    f = [SparseMatrix(dim, dim, [f_cols[i].get(c, {}) for c in range(dim)]) for i in range(n)]
    return SimpleActions(weights, e, f, grams)


def _select_basis(gram: list[list[mpq]], check_positive: bool) -> list[int]:
    """Greedy maximal nonsingular principal subset via symmetric elimination."""
    k = len(gram)
    g = [row[:] for row in gram]
    chosen = []
    for p in range(k):
        piv = g[p][p]
        if piv == 0:
            if check_positive and any(g[p][q] for q in range(p, k)):
                raise ConstructionError("contravariant form is not positive semidefinite")
            continue
        if piv < 0 and check_positive:
            raise ConstructionError("contravariant form has a negative pivot")
        chosen.append(p)
        for r in range(p + 1, k):
            if g[r][p]:
                f = g[r][p] / piv
                for c in range(p, k):
                    g[r][c] -= f * g[p][c]
    return chosen
