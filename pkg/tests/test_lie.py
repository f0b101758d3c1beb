import itertools
from fractions import Fraction

import pytest

from holbranch.catalog import default_catalog
from holbranch.lie import (Family, blattner_of_hc, build_embedding, build_pair, candidate_embeddings,
                           classify_weight, diagonal_embedding, in_ghat_hol, make_embedding, pair_from_slug,
                           strongly_elliptic_nonempty, subtorus_embedding, torus_embedding)

CATALOG = default_catalog()
PAIRS = list(CATALOG.pairs.values())


def test_upq_11():
    p = build_pair(Family.Upq, [1, 1])
    assert set(p.noncompact_pos_roots) == {(1, -1)}
    assert p.p_name == "M_{1,1}(C)"
    assert p.z == (Fraction(1, 2), Fraction(-1, 2))
    assert p.z_primitive == (1, -1)


def test_sp2():
    p = build_pair("SpR", [2])
    assert set(p.noncompact_pos_roots) == {(2, 0), (1, 1), (0, 2)}
    assert p.two_rho_n == (3, 3)
    assert p.rho_c == (Fraction(1, 2), Fraction(-1, 2))


def test_sp1():
    p = build_pair("SpR", [1])
    assert p.rank == 1
    assert p.compact_pos_roots == ()
    assert p.noncompact_pos_roots == ((2,),)
    assert p.two_rho_n == (2,)


def test_sp2_noncompact_roots_are_weights_of_sym2():
    # weights of S^2(C^2) under the diagonal torus: e_i + e_j, i <= j
    weights = sorted(tuple(a + b for a, b in zip(u, v))
                     for u, v in itertools.combinations_with_replacement([(1, 0), (0, 1)], 2))
    assert sorted(build_pair("SpR", [2]).noncompact_pos_roots) == weights


def test_u21_step_and_zo():
    p = build_pair("Upq", [2, 1])
    assert p.z_primitive == (1, 1, -2)
    assert p.z_step == 3


def test_so2n_roots():
    p = build_pair("SO2n", [3])
    assert set(p.noncompact_pos_roots) == {(1, 1), (1, -1), (1, 0)}
    assert p.compact_pos_roots == ((0, 1),)
    q = build_pair("SO2n", [4])
    assert len(q.noncompact_pos_roots) == 4
    assert q.z == (1, 0, 0)


@pytest.mark.parametrize("family,params", [
    ("SpR", [0]), ("SOstar", [1]), ("Upq", [0, 2]), ("Upq", [1]), ("SO2n", [0]), ("Nope", [1]),
])
def test_build_pair_errors(family, params):
    with pytest.raises(ValueError):
        build_pair(family, params)


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.slug)
def test_pair_invariants(pair):
    pair.validate()
    c = pair.z_step
    for beta in pair.noncompact_pos_roots:
        assert sum(b * z for b, z in zip(beta, pair.z)) == 1
        assert classify_weight(pair, beta).z_degree == c
    assert c > 0
    rn = set(pair.noncompact_pos_roots)
    for s in pair.simple_reflections:
        for beta in rn:
            assert tuple(sum(a * b for a, b in zip(row, beta)) for row in s) in rn
    # compact positive roots are lexicographically positive and have z-degree 0
    for a in pair.compact_pos_roots:
        assert a > (0,) * pair.rank
        assert pair.z_degree(a) == 0


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.slug)
def test_two_rho_n_membership(pair):
    assert classify_weight(pair, pair.two_rho_n).in_Ghat_hol == pair.is_dominant(pair.two_rho_n)
    assert pair.is_dominant(pair.two_rho_n)


def test_classify_examples():
    sp1 = build_pair("SpR", [1])
    c = classify_weight(sp1, (3,))
    assert (c.dominant, c.z_degree, c.in_chol, c.in_Ghat_hol) == (True, 3, True, True)
    assert not classify_weight(sp1, (1,)).in_Ghat_hol
    sp2 = build_pair("SpR", [2])
    c = classify_weight(sp2, (0, 0))
    assert (c.dominant, c.z_degree, c.in_chol, c.in_Ghat_hol) == (True, 0, True, False)
    with pytest.raises(ValueError):
        classify_weight(sp2, (1,))


def test_ghat_sp1_is_lambda_at_least_two():
    sp1 = build_pair("SpR", [1])
    assert [w for w in range(-5, 8) if in_ghat_hol(sp1, (w,))] == list(range(2, 8))


def test_blattner_examples():
    sp1 = build_pair("SpR", [1])
    assert blattner_of_hc(sp1, (1,)) == (2,)
    assert blattner_of_hc(sp1, (5,)) == (6,)
    assert blattner_of_hc(build_pair("SpR", [2]), (2, 1)) == (3, 3)


def test_blattner_rational_input_and_errors():
    u11 = build_pair("Upq", [1, 1])
    # half-integral HC parameter (U(1,1) has rho_c = 0, rho_n = (1/2,-1/2))
    assert blattner_of_hc(u11, (Fraction(3, 2), Fraction(-1, 2))) == (2, -1)
    sp2 = build_pair("SpR", [2])
    with pytest.raises(ValueError):
        blattner_of_hc(sp2, (1, 1))  # singular on the compact root
    with pytest.raises(ValueError):
        blattner_of_hc(sp2, (2, -2))  # singular on (1,1)


@pytest.mark.parametrize("slug", ["sp4R", "sp6R", "sostar6", "u2,1", "so2,4", "so2,5"])
def test_blattner_injective_on_box(slug):
    pair = pair_from_slug(slug)
    seen = {}
    interior = []
    halves = [Fraction(k, 2) for k in range(-12, 13)]
    for mu in itertools.product(halves, repeat=pair.rank):
        if any(pair.inner(a, mu) == 0 for a in pair.compact_pos_roots + pair.noncompact_pos_roots):
            continue
        if not all(pair.inner(a, mu) > 0 for a in pair.compact_pos_roots):
            continue
        if not all(pair.inner(b, mu) > 0 for b in pair.noncompact_pos_roots):
            continue
        interior.append(mu)
    for mu in interior:
        try:
            b = blattner_of_hc(pair, mu)
        except ValueError:
            continue  # not integral for this lattice
        assert b not in seen, (mu, seen.get(b))
        seen[b] = mu
        assert in_ghat_hol(pair, b)
    assert seen


def test_embedding_table_row():
    e = build_embedding(build_pair("SpR", [2]), "sp2Rxsp2R")
    assert e.proj == ((1, 0), (0, 1))
    assert set(e.shared_noncompact) == {(2, 0), (0, 2)}
    assert e.contains_z
    assert e.quotient_weights == ((1, 1),)


def test_embedding_diagonal():
    e = diagonal_embedding(build_pair("SpR", [1]))
    assert e.proj == ((1, 1),)
    assert {e.project(b) for b in e.shared_noncompact} == {(2,)}
    assert e.contains_z
    assert e.quotient_weights == ((2,),)
    assert e.sub.z == (Fraction(1, 2),)


def test_embedding_torus():
    e = build_embedding(build_pair("SpR", [2]), "T")
    assert e.proj == ((1, 0), (0, 1))
    assert e.shared_noncompact == ()
    assert e.contains_z


def test_embedding_not_in_catalog():
    with pytest.raises(ValueError):
        build_embedding("sp4R", "sp6R")


def test_subgroup_z_is_induced():
    e = build_embedding("sp4R", "u1,1")
    assert e.sub.z == (Fraction(1, 2), Fraction(-1, 2))
    # z-degrees agree along proj for every weight in a box
    for w in itertools.product(range(-3, 4), repeat=2):
        assert e.ambient.z_degree(w) == e.sub.z_degree(e.project(w))


def test_trivial_subgroup_does_not_contain_z():
    e = subtorus_embedding(build_pair("SpR", [2]), ())
    assert not e.contains_z
    assert e.sub.rank == 0


def test_make_embedding_rejects_bad_proj():
    sp2 = build_pair("SpR", [2])
    with pytest.raises(ValueError):
        make_embedding(sp2, build_pair("Torus", [2]), [[1, 0], [2, 0]])
    with pytest.raises(ValueError):
        make_embedding(sp2, build_pair("Torus", [1]), [[1, 0, 0]])


@pytest.mark.parametrize("emb", list(CATALOG.embeddings.values()), ids=lambda e: e.id)
def test_catalog_embedding_invariants(emb):
    sub_nc = set(emb.sub.noncompact_pos_roots)
    for b in emb.shared_noncompact:
        assert emb.project(b) in sub_nc
    if emb.contains_z:
        for b in emb.sub.noncompact_pos_roots:
            assert sum(x * z for x, z in zip(b, emb.sub.z)) == 1
        for w in emb.quotient_weights:
            assert emb.sub.z_degree(w) == emb.ambient.z_step


def test_strongly_elliptic_table():
    assert not strongly_elliptic_nonempty("GL(n,C)", 3)
    assert strongly_elliptic_nonempty("SL(n,R)", 2)
    assert not strongly_elliptic_nonempty("SL(n,R)", 3)
    assert strongly_elliptic_nonempty("SO_o(p,q)", 2, 3)
    assert not strongly_elliptic_nonempty("SO_o(p,q)", 3, 3)
    for p in PAIRS:
        assert p.se_nonempty


def test_pair_equality_and_hash():
    a, b = build_pair("SpR", [2]), build_pair("SpR", [2])
    assert a == b and hash(a) == hash(b)
    assert a != build_pair("SOstar", [2])
    assert pair_from_slug("Sp2RxSP2R") == diagonal_embedding(build_pair("SpR", [1])).ambient


def test_candidates_cover_table_rows():
    kinds = {e.kind for e in candidate_embeddings(build_pair("Upq", [2, 2]))}
    assert {"involution", "torus"} <= kinds
    ids = {e.id for e in candidate_embeddings(build_pair("Upq", [2, 2]))}
    assert "u2,2:sp4R" in ids and "u2,2:sostar4" in ids
    assert torus_embedding(build_pair("SO2n", [3])).sub.rank == 2
