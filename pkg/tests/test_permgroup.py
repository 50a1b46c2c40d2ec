import pytest
from hypothesis import given, strategies as st

from unitals.permgroup import (
    PermGroup,
    compose,
    conjugate,
    fixed_points,
    generalized_dihedral_check,
    gleason_check,
    identity_perm,
    inverse,
    is_involution,
    is_transitive,
    is_two_transitive,
    mulclose,
    orbit_of,
    perm_cycles,
    perm_order,
    setwise_block_stabilizer,
    two_point_stabilizer,
    two_point_stabilizer_orbits,
    validate_perm,
)

S4_GENS = [(1, 0, 2, 3), (1, 2, 3, 0)]
A4_GENS = [(1, 2, 0, 3), (0, 2, 3, 1)]
C6_GEN = [(1, 2, 3, 4, 5, 0)]

perms8 = st.permutations(range(8)).map(tuple)


@given(p=perms8, q=perms8)
def test_compose_applies_left_then_right(p, q):
    r = compose(p, q)
    for x in range(8):
        assert r[x] == q[p[x]]


@given(p=perms8)
def test_inverse(p):
    assert compose(p, inverse(p)) == identity_perm(8)
    assert compose(inverse(p), p) == identity_perm(8)


@given(p=perms8, g=perms8)
def test_conjugate_transports_action(p, g):
    c = conjugate(p, g)
    for x in range(8):
        assert c[g[x]] == g[p[x]]


@given(p=perms8)
def test_perm_order_matches_iteration(p):
    n = perm_order(p)
    acc = identity_perm(8)
    for _ in range(n):
        acc = compose(acc, p)
    assert acc == identity_perm(8)
    # and no smaller positive power is the identity
    acc = p
    for _ in range(n - 1):
        assert acc != identity_perm(8)
        acc = compose(acc, p)


def test_perm_cycles():
    assert perm_cycles((1, 0, 3, 4, 2)) == [(0, 1), (2, 3, 4)]
    assert perm_cycles(identity_perm(3)) == []
    assert fixed_points((1, 0, 2)) == (2,)
    assert is_involution((1, 0, 2)) and not is_involution((1, 2, 0))
    assert not is_involution(identity_perm(3))


def test_validate_perm():
    assert validate_perm([1, 0]) == (1, 0)
    with pytest.raises(ValueError):
        validate_perm([0, 0])
    with pytest.raises(ValueError):
        validate_perm([0, 1], degree=3)


def test_mulclose_s3():
    elems = mulclose([(1, 0, 2), (1, 2, 0)])
    assert len(elems) == 6


@pytest.mark.parametrize(
    "gens,order",
    [
        (S4_GENS, 24),
        (A4_GENS, 12),
        (C6_GEN, 6),
        ([(1, 0, 3, 2), (2, 3, 0, 1)], 4),  # Klein four-group
        ([(1, 2, 3, 0), (3, 2, 1, 0)], 8),  # dihedral on a square
    ],
)
def test_group_order_matches_closure(gens, order):
    G = PermGroup(gens)
    assert G.order() == order == len(mulclose(gens))
    assert set(G.elements()) == mulclose(gens)


def test_membership():
    G = PermGroup(A4_GENS)
    assert (1, 0, 3, 2) in G  # double transposition is even
    assert (1, 0, 2, 3) not in G  # a transposition is odd


def test_orbits_and_transitivity():
    G = PermGroup(C6_GEN)
    assert orbit_of(G, 0) == frozenset(range(6))
    assert is_transitive(G, range(6))
    assert not is_two_transitive(G, range(6))
    S3 = PermGroup([(1, 0, 2), (1, 2, 0)])
    assert is_two_transitive(S3, range(3))
    two_orbits = PermGroup([(1, 0, 2, 3)], degree=4)
    assert sorted(map(len, two_orbits.orbits(range(4)))) == [1, 1, 2]
    with pytest.raises(ValueError):
        is_transitive(two_orbits, [0, 2])  # not invariant


def test_stabilizer_chain_orders():
    S4 = PermGroup(S4_GENS)
    stab0 = S4.with_base((0,)).level_group(1)
    assert stab0.order() == 6
    assert all(g[0] == 0 for g in stab0.elements())
    stab01 = two_point_stabilizer(S4, 0, 1)
    assert stab01.order() == 2
    assert two_point_stabilizer_orbits(S4, 0, 1) == [1, 1, 2]


def test_setwise_block_stabilizer():
    S4 = PermGroup(S4_GENS)
    H = setwise_block_stabilizer(S4, (0, 1))
    assert H.order() == 4
    for g in H.elements():
        assert {g[0], g[1]} == {0, 1}


def test_trivial_group():
    G = PermGroup([], degree=5)
    assert G.order() == 1
    assert G.elements() == [identity_perm(5)]
    assert orbit_of(G, 3) == frozenset({3})


def test_gleason_check(atlas2):
    certs = [(c, atlas2.nontrivial[c][0]) for c in range(9)]
    rep = gleason_check(certs, range(9), 2)
    assert rep.ok and rep.transitive

    rep = gleason_check(certs[:-1], range(9), 2)
    assert not rep.ok and rep.uncovered == (8,)

    rep = gleason_check(certs, range(9), 3)  # wrong order
    assert not rep.ok and rep.certificate_failures


def test_generalized_dihedral_s3():
    S3 = PermGroup([(1, 0, 2), (1, 2, 0)])
    rep = generalized_dihedral_check(S3, (1, 0, 2))
    assert rep.ok
    assert rep.m_order == 3
    assert rep.m_abelian and rep.m_regular and rep.tau_conjugation_semiregular
    assert rep.equivalences_agree
    assert rep.coset_is_conjugacy_class and rep.coset_all_involutions
    assert rep.tau_inverts_m


def test_generalized_dihedral_rejects_d4():
    # products of two involutions form the even-order rotation subgroup
    D4 = PermGroup([(1, 2, 3, 0), (3, 2, 1, 0)])
    rep = generalized_dihedral_check(D4, (3, 2, 1, 0))
    assert not rep.ok
    assert rep.reason is not None


def test_generalized_dihedral_requires_involution():
    S3 = PermGroup([(1, 0, 2), (1, 2, 0)])
    with pytest.raises(ValueError):
        generalized_dihedral_check(S3, (1, 2, 0))
    with pytest.raises(ValueError):
        generalized_dihedral_check(S3, identity_perm(3))
