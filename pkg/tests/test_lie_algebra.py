from itertools import combinations

import pytest
from gmpy2 import mpq

from artifact.lie_algebra import (
    TensorElement,
    canonical_element,
    casimir,
    chevalley,
    explicit_canonical,
    is_invariant,
    is_totally_antisymmetric,
    product_embedding,
    wedge,
)
from artifact.root_data import build_root_system


def _bracket(g, x, y):
    return g.bracket(x, y)


def _jacobi_holds(g, triples):
    for a, b, c in triples:
        xa, xb, xc = {a: 1}, {b: 1}, {c: 1}
        total = {}
        for p, q, r in ((xa, xb, xc), (xb, xc, xa), (xc, xa, xb)):
            for k, v in _bracket(g, p, _bracket(g, q, r)).items():
                total[k] = total.get(k, 0) + v
        if any(total.values()):
            return False
    return True


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A2xA1"])
def test_jacobi_exhaustive(name):
    g = chevalley(name)
    assert _jacobi_holds(g, combinations(range(g.dim), 3))


def test_jacobi_sampled_large():
    import random

    rng = random.Random(1)
    for name in ("F4", "E6"):
        g = chevalley(name)
        triples = [tuple(rng.sample(range(g.dim), 3)) for _ in range(400)]
        assert _jacobi_holds(g, triples)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "C3"])
def test_antisymmetry_and_cartan_relations(name):
    g = chevalley(name)
    rs = g.root_system
    for a in range(g.dim):
        for b in range(g.dim):
            lhs = dict(g.bracket_basis(a, b))
            rhs = {k: -v for k, v in g.bracket_basis(b, a)}
            assert lhs == rhs
    for k, root in enumerate(rs.positive_roots):
        coroot = dict(g.bracket_basis(g.e(k), g.f(k)))
        alpha = rs.positive_roots_alpha[k]
        # H_alpha = sum_i alpha_i (alpha_i, alpha_i) / (alpha, alpha) H_i
        expected = {}
        for i, c in enumerate(alpha):
            if c:
                ai = rs.simple_roots_omega[i]
                expected[g.h(i)] = c * rs.inner(ai, ai) / rs.inner(root, root)
        assert coroot == expected
        for i in range(rs.rank):
            assert dict(g.bracket_basis(g.h(i), g.e(k))) == ({g.e(k): root[i]} if root[i] else {})


def test_dimensions_and_small_relations():
    assert chevalley("G2").dim == 14
    assert chevalley("E6").dim == 78
    g = chevalley("A1")
    e, f, h = g.e(0), g.f(0), g.h(0)
    assert dict(g.bracket_basis(e, f)) == {h: 1}
    assert dict(g.bracket_basis(h, e)) == {e: 2}
    assert dict(g.bracket_basis(h, f)) == {f: -2}


def test_structure_constants_are_integers():
    for name in ("A3", "B3", "G2", "F4"):
        g = chevalley(name)
        for terms in g.structure_constants.values():
            assert all(isinstance(c, int) for _, c in terms)


def test_structure_constant_dump_is_deterministic():
    text = chevalley("A2").dump_structure_constants()
    assert text == chevalley("A2").dump_structure_constants()
    assert "[E[10],E[01]] = +1*E[11]" in text


def test_casimir_sl2():
    g = chevalley("A1")
    e, f, h = g.e(0), g.f(0), g.h(0)
    target = TensorElement(2, {(e, f): mpq(1), (f, e): mpq(1), (h, h): mpq(1, 2)})
    assert casimir(g).is_proportional(target) is not None


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A1xA1", "D4"])
def test_casimir_symmetric_and_invariant(name):
    g = chevalley(name)
    c = casimir(g)
    assert c.permute((1, 0)).coeffs == c.coeffs
    assert is_invariant(g, c)


def _embed(t, mapping):
    return TensorElement(t.order, {tuple(mapping[i] for i in k): v for k, v in t.coeffs.items()})


@pytest.mark.parametrize("name", ["A1xA1", "A2xA1", "A1xB2"])
def test_product_blocks(name):
    g = chevalley(name)
    c, can = TensorElement(2), TensorElement(3)
    for f in range(len(g.root_system.factors)):
        sub = chevalley(build_root_system([g.root_system.factors[f]]))
        m = product_embedding(g, f)
        c = c + _embed(casimir(sub), m)
        can = can + _embed(canonical_element(sub), m)
    assert (casimir(g) - c).is_zero()
    assert (canonical_element(g) - can).is_zero()


def test_canonical_element_sl2():
    g = chevalley("A1")
    can = canonical_element(g)
    assert can.is_proportional(wedge(g.e(0), g.f(0), g.h(0))) == mpq(1, 16)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A2xA1", "D4", "F4", "E6"])
def test_canonical_element_antisymmetric_and_invariant(name):
    g = chevalley(name)
    can = canonical_element(g)
    assert not can.is_zero()
    assert is_totally_antisymmetric(can)
    assert (can.permute((1, 0, 2)) + can).is_zero()
    assert is_invariant(g, can)


def _split(g, t):
    hs = set(range(2 * g.npos, g.dim))
    with_h = {k: v for k, v in t.coeffs.items() if hs & set(k)}
    roots = {k: v for k, v in t.coeffs.items() if not hs & set(k)}
    return TensorElement(3, with_h), TensorElement(3, roots)


# the literal double sum counts each triple of root vectors twice and each
# E_alpha ^ H ^ F_alpha term once, so the two parts carry scalars t and t/2
EXPLICIT_SCALARS = {"A2": mpq(1, 36), "B2": mpq(1, 144), "G2": mpq(1, 576)}


@pytest.mark.parametrize("name", sorted(EXPLICIT_SCALARS))
def test_explicit_formula_componentwise(name):
    g = chevalley(name)
    can_h, can_r = _split(g, canonical_element(g))
    exp_h, exp_r = _split(g, explicit_canonical(g))
    t = can_h.is_proportional(exp_h)
    assert t == EXPLICIT_SCALARS[name]
    assert can_r.is_proportional(exp_r) == t / 2
    assert canonical_element(g).is_proportional(explicit_canonical(g)) is None
