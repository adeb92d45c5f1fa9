import random
from itertools import product
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from artifact.chars import sym_ext_square
from artifact.lie_algebra import canonical_element, chevalley
from artifact.linalg import SparseMatrix, vadd
from artifact.poisson import (
    DecorationError,
    DecoratedSpace,
    apply_schouten,
    bracket,
    basis_element,
    closure_hilbert,
    double_weight_filter,
    flatness_check,
    is_poisson_decorated,
    is_poisson_module,
    jacobi_bruteforce,
    jacobi_verdict,
    permutation_operator,
    plus_part_matches_casimir,
    poisson_module_verdict,
    r_minus,
    schouten_square,
    sl2_filter,
    symmetrized_schouten_vanishes,
    sym_add,
    sym_mul,
    sym_scale,
    tensor_decorated,
)
from artifact.repr import highest_weight_module
from artifact.root_data import build_root_system
from artifact.sweep import weights_up_to


def decorated(name, lam):
    g = chevalley(name)
    m = highest_weight_module(g, lam)
    return r_minus(g, m)


def random_decoration(dim, rng, density=0.4, lo=-2, hi=2):
    """Phi = M - tau M tau for a random integer M."""
    cols = []
    for k in range(dim * dim):
        cols.append({r: mpq(rng.randint(lo, hi)) for r in range(dim * dim) if rng.random() < density})
    m = SparseMatrix(dim * dim, dim * dim, [{r: x for r, x in c.items() if x} for c in cols])
    from artifact.poisson import flip

    t = flip(dim)
    return DecoratedSpace(dim, m - t @ m @ t)


def zero_decoration(dim):
    return DecoratedSpace(dim, SparseMatrix(dim * dim, dim * dim))


def sign_family(lmb):
    s = lambda i, j: (i > j) - (i < j)
    return DecoratedSpace.from_function(2, lambda i, j: {(j, i): mpq(lmb) * s(i, j)})


# -- r^- -------------------------------------------------------------------------

def test_r_minus_sl2_natural():
    d = decorated("A1", (1,))
    assert d.phi_on(0, 1) == [(1, 0, mpq(-1, 4))]
    assert d.phi_on(1, 0) == [(0, 1, mpq(1, 4))]
    assert d.phi_on(0, 0) == [] and d.phi_on(1, 1) == []


@pytest.mark.parametrize("name,lam", [("A1", (2,)), ("A2", (1, 1)), ("B2", (0, 1)), ("G2", (1, 0)), ("A1xA1", (1, 2))])
def test_r_minus_invariants(name, lam):
    g = chevalley(name)
    m = highest_weight_module(g, lam)
    d = r_minus(g, m)
    assert d.anticommutes_with_flip()
    assert plus_part_matches_casimir(g, m)
    for i in range(m.dim):
        col = d.phi.cols[i * m.dim + i]
        swapped = {(k % m.dim) * m.dim + k // m.dim: -x for k, x in col.items()}
        assert col == swapped


def test_sl2_adjoint_bracket_formula():
    g = chevalley("A1")
    m = highest_weight_module(g, (2,))
    d = r_minus(g, m)
    e, f = m.action[g.e(0)], m.action[g.f(0)]
    ratios = set()
    for a, b in product(range(3), repeat=2):
        ea, fb, eb, fa = (x.cols[y] for x, y in ((e, a), (f, b), (e, b), (f, a)))
        expected = sym_add(sym_mul({(p,): x for p, x in ea.items()}, {(q,): y for q, y in fb.items()}),
                           sym_scale(sym_mul({(p,): x for p, x in eb.items()}, {(q,): y for q, y in fa.items()}), -1))
        got = bracket(d, basis_element(a), basis_element(b))
        assert set(got) == set(expected)
        ratios |= {got[k] / expected[k] for k in got}
    assert ratios == {mpq(1, 4)}


def test_non_anticommuting_phi_rejected():
    with pytest.raises(DecorationError):
        DecoratedSpace.from_function(2, lambda i, j: {(i, j): 1})


# -- bracket properties ------------------------------------------------------------

SPACES = {
    "sl2_V3": lambda: decorated("A1", (3,)),
    "sl3_V10": lambda: decorated("A2", (1, 0)),
    "random3": lambda: random_decoration(3, random.Random(3)),
}


@st.composite
def sym_elements(draw, dim, max_deg=3):
    terms = draw(st.lists(
        st.tuples(st.lists(st.integers(0, dim - 1), min_size=1, max_size=max_deg), st.integers(-3, 3)),
        min_size=1, max_size=3))
    out = {}
    for mono, c in terms:
        vadd(out, {tuple(sorted(mono)): mpq(c)})
    return out


@pytest.mark.parametrize("key", sorted(SPACES))
@given(data=st.data())
def test_bracket_antisymmetric_and_leibniz(key, data):
    d = SPACES[key]()
    a = data.draw(sym_elements(d.dim))
    b = data.draw(sym_elements(d.dim))
    c = data.draw(sym_elements(d.dim, 2))
    assert sym_add(bracket(d, a, b), bracket(d, b, a)) == {}
    lhs = bracket(d, a, sym_mul(b, c))
    rhs = sym_add(sym_mul(bracket(d, a, b), c), sym_mul(b, bracket(d, a, c)))
    assert sym_add(lhs, sym_scale(rhs, -1)) == {}


def test_zero_phi():
    d = zero_decoration(3)
    assert bracket(d, {(0, 1): mpq(1)}, {(2,): mpq(5)}) == {}
    assert schouten_square(d).is_zero()
    assert jacobi_bruteforce(d) and is_poisson_decorated(d)
    assert closure_hilbert(d, 4) == [comb(3 + n - 1, n) for n in range(5)]


# -- Schouten square -----------------------------------------------------------------

@pytest.mark.parametrize("seed", range(6))
def test_schouten_anticommutes_with_transpositions(seed):
    rng = random.Random(seed)
    d = random_decoration(rng.choice([2, 3]), rng)
    s = schouten_square(d)
    for perm in ((1, 0, 2), (0, 2, 1)):
        sig = permutation_operator(d.dim, perm)
        assert (sig @ s @ sig + s).is_zero()


@pytest.mark.parametrize("name,lam", [("A1", (3,)), ("A2", (1, 1)), ("B2", (0, 1))])
def test_schouten_of_r_minus_is_canonical_action(name, lam):
    g = chevalley(name)
    m = highest_weight_module(g, lam)
    d = r_minus(g, m)
    can = canonical_element(g)
    rng = random.Random(0)
    n = m.dim
    for _ in range(40):
        key = (rng.randrange(n), rng.randrange(n), rng.randrange(n))
        direct = {}
        for (a, b, c), coef in can.coeffs.items():
            u, w, z = (m.action[x].cols[k] for x, k in zip((a, b, c), key))
            for p, x in u.items():
                for q, y in w.items():
                    for r, t in z.items():
                        vadd(direct, {(p, q, r): coef * x * y * t})
        # sign of the identity pinned by exact computation
        assert apply_schouten(d, {key: mpq(1)}) == direct


def test_decorated_examples():
    assert is_poisson_decorated(random_decoration(2, random.Random(5)))
    assert not is_poisson_decorated(decorated("A1", (3,)))
    assert is_poisson_decorated(decorated("A1", (2,)))


@pytest.mark.parametrize("name,lam", [("A1", (2,)), ("A1", (3,)), ("A2", (1, 0)), ("A2", (1, 1)), ("B2", (0, 1)), ("G2", (1, 0))])
def test_symmetrized_criterion_agrees(name, lam):
    d = decorated(name, lam)
    assert symmetrized_schouten_vanishes(d) == is_poisson_decorated(d)


@pytest.mark.parametrize("t", [mpq(-3), mpq(1, 7), mpq(5, 2)])
def test_scaling_invariance(t):
    for d in (decorated("A1", (3,)), decorated("A2", (2, 0)), random_decoration(3, random.Random(11))):
        assert is_poisson_decorated(d.scaled(t)) == is_poisson_decorated(d)


# -- Jacobi and closure ----------------------------------------------------------------

def test_jacobi_sl2_v3_witness():
    v = jacobi_verdict(decorated("A1", (3,)))
    assert not v.poisson
    assert len(v.witness["triple"]) == 3 and v.witness["jacobian"]
    assert v.checked <= comb(4 + 2, 3)


def test_closure_hilbert():
    assert closure_hilbert(decorated("A1", (3,)), 3)[3] == 16
    assert closure_hilbert(decorated("A1", (2,)), 5) == [comb(3 + n - 1, n) for n in range(6)]
    with pytest.raises(ValueError):
        closure_hilbert(decorated("A1", (1,)), 7)


# -- tensor products ------------------------------------------------------------------

@pytest.mark.parametrize("lmb,expected", [(-1, True), (1, True), (mpq(1, 2), False), (2, False)])
def test_sign_family_tensor(lmb, expected):
    t = tensor_decorated(sign_family(1), sign_family(lmb))
    assert is_poisson_decorated(t) == expected
    assert jacobi_bruteforce(t) == expected


def test_tensor_with_zero_acts_on_first_slots():
    d = random_decoration(2, random.Random(2))
    t = tensor_decorated(d, zero_decoration(3))
    for x, y in product(range(6), repeat=2):
        i, i2 = divmod(x, 3)
        j, j2 = divmod(y, 3)
        expected = sorted(((p * 3 + i2, q * 3 + j2, c) for p, q, c in d.phi_on(i, j)))
        assert sorted(t.phi_on(x, y)) == expected


def test_tensor_poisson_implies_factors_poisson():
    rng = random.Random(4)
    seen_poisson = 0
    for k in range(10):
        if k % 2:
            d1 = sign_family(1)
            d2 = sign_family(rng.choice([-1, 1, 2, 3]))
        else:
            d1 = random_decoration(rng.choice([2, 3]), rng, density=0.2, lo=-1, hi=1)
            d2 = zero_decoration(2) if rng.random() < 0.5 else random_decoration(2, rng, 0.2, -1, 1)
        t = tensor_decorated(d1, d2)
        if is_poisson_decorated(t):
            seen_poisson += 1
            assert is_poisson_decorated(d1) and is_poisson_decorated(d2)
    assert seen_poisson > 0


# -- modules ------------------------------------------------------------------------

@pytest.mark.parametrize("name,lam,expected", [
    ("C2", (1, 0), True), ("G2", (1, 0), False), ("A1xA1xA1", (1, 1, 1), False), ("A1xA1", (1, 1), True),
    ("A1xA1", (2, 1), False), ("A1xC2", (1, 1, 0), False), ("A2xA1", (1, 0, 1), False), ("A2xA2", (1, 0, 0, 1), True),
])
def test_module_examples(name, lam, expected):
    assert is_poisson_module(name, lam) == expected


@pytest.mark.parametrize("ell", range(7))
def test_sl2_ladder(ell):
    assert is_poisson_module("A1", (ell,)) == (ell <= 2)
    assert flatness_check("A1", (ell,)) == (ell <= 2)


CORPUS = [(s, w) for s in ("A1", "A2", "A3", "B2", "C2", "G2", "C3", "B3")
          for w in weights_up_to(build_root_system(s).rank, 2)
          if build_root_system(s).weyl_dimension(w) <= 20]


@pytest.mark.parametrize("name,lam", CORPUS)
def test_module_methods_agree(name, lam):
    m = highest_weight_module(name, lam)
    verdicts = {poisson_module_verdict(m, x).poisson for x in ("weight", "full", "literal")}
    assert len(verdicts) == 1
    rs = m.root_system
    if verdicts == {True}:
        assert sl2_filter(rs, lam) and double_weight_filter(rs, lam) is not False
    if sym_ext_square(rs, lam)[1].is_simple():
        assert verdicts == {True}


def test_witness_on_failure():
    v = poisson_module_verdict(highest_weight_module("G2", (1, 0)))
    assert not v.poisson
    assert len(v.witness["triple"]) == 3 and v.witness["image_s3"]


def test_filters():
    a1 = build_root_system("A1")
    assert double_weight_filter(a1, (1,)) is True       # 2*w - a = 0
    assert double_weight_filter(a1, (2,)) is True       # 2*w - a = a
    assert double_weight_filter(a1, (3,)) is False
    a3 = build_root_system("A3")
    assert double_weight_filter(a3, (1, 0, 0)) is None  # w0 does not negate w1
    assert double_weight_filter(a3, (1, 0, 1)) is False  # adjoint
    assert not sl2_filter(build_root_system("B2"), (0, 3))
    assert sl2_filter(build_root_system("C3"), (1, 0, 0))
