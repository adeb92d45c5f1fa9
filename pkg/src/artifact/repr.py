"""Irreducible highest-weight modules with exact action matrices."""

from __future__ import annotations

import json
from typing import Mapping, Sequence

from gmpy2 import mpq

from . import __version__
from .lie_algebra import ChevalleyAlgebra, chevalley
from .linalg import SparseMatrix, SVec, as_plain, vadd
from .root_data import RootSystem, build_root_system, format_system, format_weight
from .verma import build_simple_actions

DEFAULT_DIM_CEILING = 5000


class DimensionCeilingError(RuntimeError):
    pass


class HWModule:
    """V_lambda with a weight basis and a matrix for every Chevalley basis element."""

    def __init__(
        self,
        algebra: ChevalleyAlgebra,
        highest_weight: tuple,
        basis_weights: list[tuple],
        e_simple: Sequence[SparseMatrix],
        f_simple: Sequence[SparseMatrix],
    ):
        self.algebra = algebra
        self.highest_weight = tuple(highest_weight)
        self.basis_weights = list(basis_weights)
        self.dim = len(basis_weights)
        self.e_simple = list(e_simple)
        self.f_simple = list(f_simple)
        self.action: list[SparseMatrix] = algebra.complete_action(self.e_simple, self.f_simple)

    @property
    def root_system(self) -> RootSystem:
        return self.algebra.root_system

    def matrix(self, x: int | str) -> SparseMatrix:
        if isinstance(x, str):
            x = self.algebra.index_of_label(x)
        if not 0 <= x < self.algebra.dim:
            raise KeyError(f"basis index {x} out of range")
        return self.action[x]

    def weight_spaces(self) -> dict[tuple, list[int]]:
        spaces: dict[tuple, list[int]] = {}
        for i, w in enumerate(self.basis_weights):
            spaces.setdefault(w, []).append(i)
        return spaces

    def key(self) -> str:
        rs = self.root_system
        return f"{format_system(rs.factors)}:{format_weight(rs, self.highest_weight)}"

    def __repr__(self) -> str:
        return f"HWModule({self.key()}, dim={self.dim})"

    # -- serialization --------------------------------------------------------
    def to_json(self) -> str:
        def mat(m: SparseMatrix):
            return [[j, i, as_plain(x)] for j, col in enumerate(m.cols) for i, x in sorted(col.items())]

        payload = {
            "version": __version__,
            "key": self.key(),
            "weights": [list(w) for w in self.basis_weights],
            "e": [mat(m) for m in self.e_simple],
            "f": [mat(m) for m in self.f_simple],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, algebra: ChevalleyAlgebra | None = None) -> "HWModule":
        data = json.loads(text)
        system, weight = data["key"].split(":")
        if algebra is None:
            algebra = chevalley(build_root_system(system))
        weights = [tuple(w) for w in data["weights"]]
        n = len(weights)

        def mat(entries):
            cols: list[SVec] = [{} for _ in range(n)]
            for j, i, x in entries:
                cols[j][i] = mpq(x)
            return SparseMatrix(n, n, cols)

        e = [mat(m) for m in data["e"]]
        f = [mat(m) for m in data["f"]]
        return cls(algebra, weights[0], weights, e, f)


def _factor_simple_actions(rs: RootSystem, lam: tuple):
    out = []
    for f, factor in enumerate(rs.factors):
        sub = build_root_system([factor])
        nodes = rs.factor_nodes(f)
        out.append(build_simple_actions(sub, tuple(lam[i] for i in nodes)))
    return out


def highest_weight_module(
    g: ChevalleyAlgebra | RootSystem | str,
    lam: Sequence[int],
    dim_ceiling: int | None = DEFAULT_DIM_CEILING,
    cache=None,
) -> HWModule:
    if not isinstance(g, ChevalleyAlgebra):
        g = chevalley(g)
    rs = g.root_system
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight {lam} has wrong length for {rs.name}")
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {format_weight(rs, lam)} is not dominant")
    dim = rs.weyl_dimension(lam)
    if dim_ceiling is not None and dim > dim_ceiling:
        raise DimensionCeilingError(
            f"V_{format_weight(rs, lam)} over {rs.name} has dimension {dim} > ceiling {dim_ceiling}"
        )
    if cache is not None:
        hit = cache.load_module(rs, lam)
        if hit is not None:
            return HWModule.from_json(hit, g)
    parts = _factor_simple_actions(rs, lam)
    weights, e, f = _tensor_actions(rs, parts)
    m = HWModule(g, lam, weights, e, f)
    if cache is not None:
        cache.store_module(rs, lam, m.to_json())
    return m


def _tensor_actions(rs: RootSystem, parts):
    """Kronecker-combine per-factor simple actions into global simple matrices."""
    weights = [()]
    for p in parts:
        weights = [a + tuple(w) for a in weights for w in p.weights]
    dims = [len(p.weights) for p in parts]
    e: list[SparseMatrix] = [None] * rs.rank  # type: ignore[list-item]
    f: list[SparseMatrix] = [None] * rs.rank  # type: ignore[list-item]
    for k, p in enumerate(parts):
        left = 1
        for d in dims[:k]:
            left *= d
        right = 1
        for d in dims[k + 1 :]:
            right *= d
        il, ir = SparseMatrix.identity(left), SparseMatrix.identity(right)
        for local, node in enumerate(rs.factor_nodes(k)):
            e[node] = il.kron(p.e[local]).kron(ir)
            f[node] = il.kron(p.f[local]).kron(ir)
    return weights, e, f


def external_tensor(m1: HWModule, m2: HWModule) -> HWModule:
    """V_1 (x) V_2 over g_1 x g_2, each factor acting on its own slot."""
    rs1, rs2 = m1.root_system, m2.root_system
    rs = build_root_system(list(rs1.factors) + list(rs2.factors))
    g = chevalley(rs)
    n1, n2 = m1.dim, m2.dim
    i1, i2 = SparseMatrix.identity(n1), SparseMatrix.identity(n2)
    e = [m.kron(i2) for m in m1.e_simple] + [i1.kron(m) for m in m2.e_simple]
    f = [m.kron(i2) for m in m1.f_simple] + [i1.kron(m) for m in m2.f_simple]
    weights = [a + b for a in m1.basis_weights for b in m2.basis_weights]
    return HWModule(g, m1.highest_weight + m2.highest_weight, weights, e, f)


def act(m: HWModule, x: int | str | Mapping[int, object], v: Mapping[int, object] | Sequence) -> SVec:
    """Apply a basis element (index or label) or a combination {index: coeff} to v."""
    if not isinstance(v, Mapping):
        if len(v) != m.dim:
            raise ValueError(f"vector of length {len(v)} for a module of dimension {m.dim}")
        v = {i: mpq(c) for i, c in enumerate(v) if c}
    if isinstance(x, Mapping):
        out: SVec = {}
        for a, c in x.items():
            vadd(out, m.matrix(a).apply(v), c)
        return out
    return m.matrix(x).apply(v)


def check_brackets(m: HWModule, pairs: Sequence[tuple[int, int]] | None = None) -> list[tuple[int, int]]:
    """Pairs (a, b) where rho([x_a, x_b]) != [rho(x_a), rho(x_b)]; empty means compatible."""
    g = m.algebra
    bad = []
    it = pairs if pairs is not None else ((a, b) for a in range(g.dim) for b in range(a + 1, g.dim))
    for a, b in it:
        lhs = SparseMatrix(m.dim, m.dim)
        for t, c in g.bracket_basis(a, b):
            lhs = lhs.combine(m.action[t], c)
        if not (lhs - m.action[a].commutator(m.action[b])).is_zero():
            bad.append((a, b))
    return bad
