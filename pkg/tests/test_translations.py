import pytest

from helpers import ag23_unital, agl23_elements, relabel
from unitals.gf import prime_power
from unitals.permgroup import (
    compose,
    conjugate,
    fixed_points,
    identity_perm,
    inverse,
    perm_order,
    unique_involution_check,
    two_point_stabilizer,
)
from unitals.translations import (
    build_atlas,
    is_translation,
    orbit_congruence_check,
    smallest_prime_factor,
    translation_transitivity_check,
    translations_at,
)


def test_smallest_prime_factor():
    assert smallest_prime_factor(2) == 2
    assert smallest_prime_factor(9) == 3
    assert smallest_prime_factor(35) == 5
    assert smallest_prime_factor(13) == 13
    with pytest.raises(ValueError):
        smallest_prime_factor(1)


def test_search_agrees_with_brute_force_over_affine_group():
    """Oracle: filter the full affine group AGL(2,3) by the raw definition.

    The unital of order 2 on GF(3)² has AGL(2,3) among its automorphisms;
    every translation of this design is an affine map (the design's full
    automorphism group is 2-transitive of order 432 = |AGL(2,3)|), so
    filtering all 432 maps yields the complete translation group at any
    center, independently of the search under test.
    """
    U = ag23_unital()
    affine = agl23_elements()
    for c in (0, 4, 8):
        expected = sorted(g for g in affine if is_translation(U, g, c))
        assert translations_at(U, c) == expected
        assert len(expected) == 2


def test_is_translation_raw_definition(h2, atlas2):
    ident = identity_perm(9)
    for c in range(9):
        assert is_translation(h2, ident, c)
        sigma = atlas2.nontrivial[c][0]
        assert is_translation(h2, sigma, c)
        # moving the center is disqualifying
        other = next(x for x in range(9) if sigma[x] != x and x != c)
        assert not is_translation(h2, sigma, other)
    # a transposition is not an automorphism of the design
    assert not is_translation(h2, (1, 0, 2, 3, 4, 5, 6, 7, 8), 2)
    with pytest.raises(ValueError):
        is_translation(h2, (0, 0, 2, 3, 4, 5, 6, 7, 8), 0)


def test_translations_form_a_group(atlas2, atlas3):
    for atlas in (atlas2, atlas3):
        v = atlas.unital.v
        for c in range(v):
            group = set(atlas.nontrivial[c]) | {identity_perm(v)}
            for a in group:
                assert inverse(a) in group
                for b in group:
                    assert compose(a, b) in group


def test_fixed_points_are_exactly_the_center(atlas3):
    for c in range(28):
        for sigma in atlas3.nontrivial[c]:
            assert fixed_points(sigma) == (c,)


def test_orders_are_characteristic_powers(atlas2, atlas3, atlas4, atlas5):
    for atlas in (atlas2, atlas3, atlas4, atlas5):
        p, _ = prime_power(atlas.unital.q)
        for perms in atlas.nontrivial:
            for sigma in perms:
                n = perm_order(sigma)
                while n % p == 0:
                    n //= p
                assert n == 1


@pytest.mark.parametrize(
    "q,per_center,total_orders",
    [(2, 2, {2: 9}), (3, 3, {3: 28}), (4, 4, {2: 65}), (5, 5, {5: 126})],
)
def test_translation_group_sizes(q, per_center, total_orders, request):
    atlas = request.getfixturevalue(f"atlas{q}")
    assert all(atlas.group_order(c) == per_center for c in range(atlas.unital.v))
    assert {n: len(s) for n, s in atlas.centers_by_order.items()} == total_orders
    assert atlas.trivial_centers == frozenset()


def test_hermitian_order_four_has_no_order_four_translation(atlas4):
    # the per-center groups have order 4 but every nontrivial element is an
    # involution (elementary abelian), so no translation of order 4 exists
    assert 4 not in atlas4.centers_by_order
    assert atlas4.orders == (2,)


def test_generated_group_orders(atlas2, atlas3, atlas4):
    assert atlas2.group_for(2).order() == 18
    assert atlas3.group_for(3).order() == 6048
    assert atlas4.group_for(2).order() == 62400


def test_two_point_stabilizer_structure(atlas3):
    G = atlas3.group_for(3)
    Q = two_point_stabilizer(G, 0, 1)
    assert Q.order() == 8
    rep = unique_involution_check(Q)
    assert rep.ok and rep.count == 1
    # Q is cyclic of order 8, so its involution is central and cannot invert
    # the whole group elementwise
    assert sorted(perm_order(g) for g in Q.elements()) == [1, 2, 4, 4, 8, 8, 8, 8]
    rep = unique_involution_check(Q, Q)
    assert rep.count == 1 and rep.inverts_other is False and not rep.ok


def test_pruning_rule_matches_unrestricted_search(h2):
    for c in range(9):
        assert translations_at(h2, c) == translations_at(h2, c, allow_fixed=True)


def test_relabeling_conjugates_translations(h3, atlas3):
    g = tuple((11 * i + 7) % 28 for i in range(28))
    assert sorted(g) == list(range(28))
    other = relabel(h3, g)
    for c in (0, 13):
        expected = sorted(conjugate(sigma, g) for sigma in atlas3.nontrivial[c])
        moved = translations_at(other, g[c])
        assert [p for p in moved if p != identity_perm(28)] == expected


def test_threads_do_not_change_the_atlas(h2):
    a1 = build_atlas(h2, threads=1)
    a2 = build_atlas(h2, threads=2)
    assert a1.nontrivial == a2.nontrivial


def test_center_out_of_range(h2):
    with pytest.raises(ValueError):
        translations_at(h2, 9)


def test_transitivity_check(atlas2, atlas3, atlas4):
    for atlas, p in ((atlas2, 2), (atlas3, 3), (atlas4, 2)):
        rep = translation_transitivity_check(atlas, p)
        assert rep.ok
        assert rep.group_transitive_on_centers
        assert rep.block_transitivity_ok and rep.blocks_checked > 0
        assert rep.divisor_collapse_ok
    with pytest.raises(ValueError):
        translation_transitivity_check(atlas2, 3)


def test_congruence_check(atlas2, atlas3, atlas4, atlas5):
    for atlas in (atlas2, atlas3, atlas4, atlas5):
        for n in atlas.orders:
            rep = orbit_congruence_check(atlas, n)
            assert rep.ok
            assert rep.center_set_size % n == 1
    with pytest.raises(ValueError):
        orbit_congruence_check(atlas2, 5)
