from itertools import product

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from artifact.root_data import (
    RootSystemError,
    build_root_system,
    format_weight,
    fundamental,
    inner,
    is_root,
    parabolic_element,
    parse_system,
    parse_weight,
    w0_action,
)

COUNTS = {
    "A1": 1, "A2": 3, "A3": 6, "A5": 15, "B2": 4, "B3": 9, "B4": 16, "C3": 9, "C4": 16,
    "D4": 12, "D5": 20, "E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6, "A2xA1": 4,
}
SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2", "A2xA1", "B2xG2"]

# C[i][j] = 2(a_i, a_j)/(a_j, a_j) with Bourbaki node labels
BOURBAKI = {
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "G2": [[2, -1], [-3, 2]],
    "F4": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
}


@pytest.mark.parametrize("name,count", sorted(COUNTS.items()))
def test_positive_root_counts(name, count):
    assert len(build_root_system(name).positive_roots) == count


@pytest.mark.parametrize("name,expected", sorted(BOURBAKI.items()))
def test_cartan_matrices(name, expected):
    assert [list(r) for r in build_root_system(name).cartan_matrix] == expected


@pytest.mark.parametrize("name", SMALL + ["E6", "F4"])
def test_cartan_matrix_from_form(name):
    rs = build_root_system(name)
    a = rs.simple_roots_omega
    for i in range(rs.rank):
        for j in range(rs.rank):
            assert rs.cartan_matrix[i][j] == 2 * rs.inner(a[i], a[j]) / rs.inner(a[j], a[j])


@pytest.mark.parametrize("name", SMALL)
def test_fundamental_weights_dual_to_coroots(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        w = fundamental(rs, i + 1)
        for j in range(rs.rank):
            assert rs.coroot_pairing(w, rs.simple_roots_omega[j]) == (i == j)


@pytest.mark.parametrize("name", SMALL + ["E6", "F4"])
def test_root_set_closed_under_addition(name):
    rs = build_root_system(name)
    roots = set(rs.positive_roots) | {tuple(-x for x in a) for a in rs.positive_roots}
    for a, b in product(rs.positive_roots, repeat=2):
        s = tuple(x + y for x, y in zip(a, b))
        if rs.is_root(s):
            assert s in roots and rs.is_positive_root(s)


@pytest.mark.parametrize("name", SMALL)
def test_weyl_orbit_of_simple_roots_is_root_set(name):
    rs = build_root_system(name)
    orbit = set()
    for a in rs.simple_roots_omega:
        orbit |= set(rs.orbit(a))
    assert len(orbit) == 2 * len(rs.positive_roots)


def test_small_examples():
    a2 = build_root_system("A2")
    assert a2.omega_to_alpha(a2.highest_root) == (1, 1)
    g2 = build_root_system("G2")
    assert g2.omega_to_alpha(g2.highest_root) == (3, 2)
    assert g2.inner(g2.highest_root, g2.highest_root) == 6
    b2 = build_root_system("B2")
    assert b2.omega_to_alpha(fundamental(b2, 2)) == (mpq(1, 2), 1)


def test_normalization_short_roots_have_length_two():
    for name, lengths in {"A3": {2}, "B3": {2, 4}, "C3": {2, 4}, "F4": {2, 4}, "G2": {2, 6}, "E6": {2}}.items():
        rs = build_root_system(name)
        assert {rs.inner(a, a) for a in rs.positive_roots} == lengths


def test_inner_examples():
    a1 = build_root_system("A1")
    assert inner(a1, (2,), (2,)) == 2
    for ell in range(5):
        assert inner(a1, (ell,), (2,)) == ell
    with pytest.raises(RootSystemError):
        inner(a1, (1,), (1, 0))


def test_w0_examples():
    a3, e6, c3 = (build_root_system(s) for s in ("A3", "E6", "C3"))
    assert w0_action(a3, (1, 0, 0)) == (0, 0, -1)
    assert w0_action(e6, fundamental(e6, 1)) == tuple(-x for x in fundamental(e6, 6))
    for i in range(1, 4):
        w = fundamental(c3, i)
        assert w0_action(c3, w) == tuple(-x for x in w)


def test_is_root_examples():
    a2 = build_root_system("A2")
    assert is_root(a2, a2.alpha_to_omega((1, 1)))
    assert not is_root(a2, (2, 0))
    assert is_root(build_root_system("B2"), (0, 2))


def test_parabolic_element_examples():
    a3 = build_root_system("A3")
    assert parabolic_element(a3, [0, 1, 2]) == ([], 0)
    word, length = parabolic_element(a3, [])
    assert length == 6 and a3.apply_word(word, a3.rho) == tuple(-x for x in a3.rho)
    assert parabolic_element(a3, [0, 2])[1] == 4


@pytest.mark.parametrize("name", ["A3", "A5", "B4", "C3", "D5", "G2", "F4", "E6", "A2xA1"])
def test_parabolic_length_identity(name):
    rs = build_root_system(name)
    for mask in range(2**rs.rank):
        delta = [i for i in range(rs.rank) if mask >> i & 1]
        word, length = rs.parabolic_element(delta)
        assert rs.is_reduced(word)
        assert length + len(rs.positive_in_span(delta)) == len(rs.positive_roots)


def test_invalid_factor_diagnostic():
    with pytest.raises(RootSystemError, match="E5"):
        build_root_system("A2xE5")
    with pytest.raises(RootSystemError):
        parse_system("Q3")


def test_weight_string_round_trip():
    rs = build_root_system("A2xA1")
    lam = parse_weight(rs, "1,0|2")
    assert lam == (1, 0, 2) and format_weight(rs, lam) == "1,0|2"
    with pytest.raises(RootSystemError):
        parse_weight(rs, "1,0")


@st.composite
def system_and_weight(draw):
    name = draw(st.sampled_from(["A3", "B3", "C3", "D4", "G2", "E6", "A2xA1"]))
    rs = build_root_system(name)
    w = tuple(draw(st.lists(st.integers(-4, 4), min_size=rs.rank, max_size=rs.rank)))
    return rs, w


@given(system_and_weight())
def test_w0_is_involution(data):
    rs, w = data
    assert rs.w0_action(rs.w0_action(w)) == w
    if rs.is_dominant(w):
        assert all(x <= 0 for x in rs.w0_action(w))


@given(system_and_weight())
def test_coordinate_round_trip(data):
    rs, w = data
    assert rs.alpha_to_omega(rs.omega_to_alpha(w)) == w


@given(system_and_weight(), st.integers(0, 200))
def test_inner_is_w_invariant(data, seed):
    rs, w = data
    i = seed % rs.rank
    v = rs.positive_roots[seed % len(rs.positive_roots)]
    assert rs.inner(rs.reflect(w, i), rs.reflect(v, i)) == rs.inner(w, v)
    assert rs.inner(w, v) == rs.inner(v, w)
