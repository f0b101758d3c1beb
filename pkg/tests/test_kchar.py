import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holbranch.catalog import default_catalog
from holbranch.kchar import (IrrDecomp, branch, character, decompose_weight_map, dominant_weights_in_box,
                             tensor_decompose, weight_multiplicities, weyl_dim)
from holbranch.lie import build_pair, diagonal_embedding, torus_embedding

import oracles

U1 = build_pair("SpR", [1])      # K = U(1)
U2 = build_pair("SpR", [2])      # K = U(2)
U3 = build_pair("SpR", [3])      # K = U(3)
U2xU1 = build_pair("Upq", [2, 1])
SO4 = build_pair("SO2n", [4])    # K = SO(2) x SO(4)
SO5 = build_pair("SO2n", [5])    # K = SO(2) x SO(5)
CATALOG = default_catalog()


def test_weyl_dim_examples():
    assert weyl_dim(U2, (4, 0)) == 5
    for a in range(-3, 4):
        for b in range(-3, a + 1):
            assert weyl_dim(U2, (a, b)) == a - b + 1
    assert weyl_dim(U3, (0, 0, 0)) == 1
    assert weyl_dim(U1, (7,)) == 1
    with pytest.raises(ValueError):
        weyl_dim(U2, (0, 1))


def test_weyl_dim_so5():
    # SO(5): standard 5, adjoint 10, spin 4
    assert weyl_dim(SO5, (0, 1, 0)) == 5
    assert weyl_dim(SO5, (0, 1, 1)) == 10
    assert not SO5.is_dominant((0, 1, -1))


def test_weight_multiplicity_examples():
    assert weight_multiplicities(U2, (2, 0)) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert weight_multiplicities(U2, (1, 1)) == {(1, 1): 1}
    assert weight_multiplicities(U3, (1, 0, 0)) == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    with pytest.raises(ValueError):
        weight_multiplicities(U2, (0, 2))


def test_tensor_examples():
    assert tensor_decompose(U1, (3,), (4,)) == {(7,): 1}
    assert tensor_decompose(U2, (1, 0), (1, 0)) == {(2, 0): 1, (1, 1): 1}
    assert tensor_decompose(U2, (2, 1), (0, 0)) == {(2, 1): 1}
    with pytest.raises(ValueError):
        tensor_decompose(U2, (0, 1), (0, 0))


def test_decompose_examples():
    assert decompose_weight_map(U2, {(2, 0): 1, (1, 1): 2, (0, 2): 1}) == {(2, 0): 1, (1, 1): 1}
    assert decompose_weight_map(U2, {}) == {}
    assert decompose_weight_map(U2, weight_multiplicities(U2, (3, 1))) == {(3, 1): 1}


def test_decompose_rejects_non_invariant_map_with_witness():
    with pytest.raises(ValueError, match=r"\(2, 0\)"):
        decompose_weight_map(U2, {(2, 0): 1, (1, 1): 1})


def test_decompose_virtual():
    wm = {w: -m for w, m in weight_multiplicities(U2, (2, 0)).items()}
    assert decompose_weight_map(U2, wm) == {(2, 0): -1}


def test_branch_examples():
    t = torus_embedding(U2)
    assert branch(t, (1, 0)) == {(1, 0): 1, (0, 1): 1}
    assert branch(t, (1, 1)) == {(1, 1): 1}
    d = diagonal_embedding(U1)
    for a, b in itertools.product(range(-3, 4), repeat=2):
        assert branch(d, (a, b)) == {(a + b,): 1}
    with pytest.raises(ValueError):
        branch(t, (1, 0, 0))


def test_irrdecomp_arithmetic():
    a = IrrDecomp(U2, {(1, 0): 2})
    b = IrrDecomp(U2, {(1, 0): 1, (0, 0): 1})
    assert a - b == {(1, 0): 1, (0, 0): -1}
    assert (a + b).dim() == 2 * 2 + 2 + 1
    assert (a - a) == {}
    assert 3 * b == {(1, 0): 3, (0, 0): 3}
    with pytest.raises(ValueError):
        IrrDecomp(U2, {(0, 1): 1})
    with pytest.raises(ValueError):
        a + IrrDecomp(U3, {})


@pytest.mark.parametrize("pair", [U2, U3, U2xU1, SO4, SO5], ids=lambda p: p.slug)
def test_freudenthal_mass_and_invariance(pair):
    for lam in dominant_weights_in_box(pair, 3):
        wm = weight_multiplicities(pair, lam)
        assert sum(wm.values()) == weyl_dim(pair, lam)
        assert wm[lam] == 1
        for w, m in wm.items():
            for s in pair.simple_reflections:
                sw = tuple(sum(a * b for a, b in zip(row, w)) for row in s)
                assert wm[sw] == m


@pytest.mark.parametrize("n,pair", [(2, U2), (3, U3)])
def test_freudenthal_matches_tableaux(n, pair):
    for lam in oracles.dominant_un(n, 3, lo=-1):
        assert weight_multiplicities(pair, lam) == oracles.un_weights_ssyt(lam)


def test_tensor_dimension_conservation_small_ranks():
    pairs = [U2, U2xU1, SO4, SO5, build_pair("SOstar", [3])]
    for pair in pairs:
        lams = list(dominant_weights_in_box(pair, 2))
        for lam, mu in itertools.product(lams[:12], repeat=2):
            dec = tensor_decompose(pair, lam, mu)
            assert dec.is_nonnegative()
            assert dec.dim() == weyl_dim(pair, lam) * weyl_dim(pair, mu)


def test_tensor_matches_convolution_so5():
    lams = list(dominant_weights_in_box(SO5, 2))[:10]
    for lam, mu in itertools.product(lams, repeat=2):
        conv = oracles.convolve(weight_multiplicities(SO5, lam), weight_multiplicities(SO5, mu))
        assert tensor_decompose(SO5, lam, mu) == decompose_weight_map(SO5, conv)


@pytest.mark.parametrize("emb", [e for e in CATALOG.embeddings.values() if e.ambient.rank <= 3],
                         ids=lambda e: e.id)
def test_branch_dimension_conservation(emb):
    for lam in dominant_weights_in_box(emb.ambient, 3):
        dec = branch(emb, lam)
        assert dec.is_nonnegative()
        assert dec.dim() == weyl_dim(emb.ambient, lam)
        # re-expanding the decomposition gives back the pushed-forward diagram
        pushed = {}
        for w, m in weight_multiplicities(emb.ambient, lam).items():
            v = emb.project(w)
            pushed[v] = pushed.get(v, 0) + m
        assert character(dec) == pushed


def test_branch_deterministic():
    e = CATALOG.embedding("sp6R:u2,1")
    first = [branch(e, lam) for lam in dominant_weights_in_box(U3, 2)]
    second = [branch(e, lam) for lam in reversed(list(dominant_weights_in_box(U3, 2)))]
    assert first == list(reversed(second))


weights3 = st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3).map(
    lambda w: tuple(sorted(w, reverse=True)))


@settings(max_examples=60, deadline=None)
@given(weights3, weights3)
def test_tensor_commutes_and_matches_oracle(lam, mu):
    a = tensor_decompose(U3, lam, mu)
    assert a == tensor_decompose(U3, mu, lam)
    assert a == oracles.un_tensor(lam, mu)
