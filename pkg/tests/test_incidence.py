import pytest

from helpers import ag23_unital, relabel
from unitals.incidence import (
    Incidence,
    fisher_check,
    format_unital,
    ideal_embedding_check,
    isomorphism_search,
    onan_search,
    parse_unital,
    read_unital,
    restrict_to,
    validate_unital,
    write_unital,
)

FANO = Incidence(
    7,
    [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)],
)


def test_incidence_canonicalization():
    I = Incidence(4, [(2, 1), (0, 3)])
    assert I.blocks == ((0, 3), (1, 2))
    with pytest.raises(ValueError):
        Incidence(3, [(0, 1), (1, 0)])  # duplicate after sorting
    with pytest.raises(ValueError):
        Incidence(3, [(0, 4)])
    with pytest.raises(ValueError):
        Incidence(3, [(1, 1)])


def test_unital_pair_lookup(h3):
    for x in range(h3.v):
        for y in range(x + 1, h3.v):
            bid = h3.block_through(x, y)
            assert x in h3.blocks[bid] and y in h3.blocks[bid]
    assert len(h3.pencil(0)) == 9  # q^2 blocks through a point
    with pytest.raises(ValueError):
        h3.block_through(0, 0)


def test_validate_unital_accepts(h2, h3):
    assert validate_unital(h2, 2).valid
    assert validate_unital(h3, 3).valid


def test_validate_unital_rejects_mutations(h2):
    # missing block: a point pair loses coverage
    broken = Incidence(9, h2.blocks[1:])
    rep = validate_unital(broken, 2)
    assert not rep.valid and not rep.checks["pair_coverage"]
    assert "pair_coverage" in rep.violations

    # wrong block size
    rep = validate_unital(Incidence(9, [(0, 1), (2, 3)]), 2)
    assert not rep.valid and not rep.checks["block_size"]

    # wrong point count
    rep = validate_unital(Incidence(8, [(0, 1, 2)]), 2)
    assert not rep.valid and not rep.checks["point_count"]

    # doubled pair: add an extra block through an existing pair
    extra = list(h2.blocks) + [(0, 1, 5)]
    try:
        rep = validate_unital(Incidence(9, extra), 2)
        assert not rep.valid
    except ValueError:
        pass  # structural rejection is equally acceptable here


def test_restrict_to_and_ideal_embedding(h2):
    # a block is an ideally embedded linear space (trivially: itself)
    blk = h2.blocks[0]
    sub = restrict_to(h2, blk)
    assert sub.incidence.v == 3 and sub.incidence.blocks == ((0, 1, 2),)
    assert sub.is_linear_space
    ok, witness = ideal_embedding_check(h2, blk)
    assert not ok and witness is not None  # other blocks leave the triple

    ok, witness = ideal_embedding_check(h2, range(9))
    assert ok and witness is None

    with pytest.raises(ValueError):
        restrict_to(h2, [0, 99])


def test_fisher_check():
    rep = fisher_check(FANO)
    assert rep.fisher_holds and rep.projective_plane_flag and rep.r == 3

    rep = fisher_check(ag23_unital())
    assert rep.fisher_holds and not rep.projective_plane_flag
    assert (rep.r, rep.k) == (4, 3)

    with pytest.raises(ValueError):
        fisher_check(Incidence(5, [(0, 1, 2), (0, 3)]))  # mixed sizes
    with pytest.raises(ValueError):
        fisher_check(Incidence(3, []))
    with pytest.raises(ValueError):
        fisher_check(Incidence(6, [(0, 1, 2), (3, 4, 5)]))  # r not integral


def test_onan_absence_small(h2, h3):
    assert onan_search(h2).status == "none"
    assert onan_search(h3).status == "none"


def test_onan_finds_planted_configuration():
    # four triples pairwise meeting in six distinct points
    I = Incidence(6, [(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)])
    res = onan_search(I)
    assert res.status == "witness"
    assert res.blocks == (0, 1, 2, 3)
    assert res.points == (0, 1, 2, 3, 4, 5)


def test_onan_budget():
    I = Incidence(6, [(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)])
    res = onan_search(I, budget=1)
    assert res.status == "budget-exhausted"
    assert res.nodes >= 1


def test_onan_rejects_repeated_pairs():
    with pytest.raises(ValueError):
        onan_search(Incidence(4, [(0, 1, 2), (0, 1, 3)]))


def test_isomorphism_identity_and_relabel(h3):
    iso = isomorphism_search(h3, h3)
    assert iso == tuple(range(28))

    g = tuple((5 * i + 3) % 28 for i in range(28))  # a fixed affine scramble
    assert sorted(g) == list(range(28))
    other = relabel(h3, g)
    iso = isomorphism_search(h3, other)
    assert iso is not None
    blocks = set(other.blocks)
    for blk in h3.blocks:
        assert tuple(sorted(iso[x] for x in blk)) in blocks


def test_isomorphism_parameter_shortcut(h2, h3):
    assert isomorphism_search(h2, h3) is None


def test_isomorphism_distinguishes_hexagon_from_triangles():
    hexagon = Incidence(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    triangles = Incidence(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
    assert isomorphism_search(hexagon, triangles) is None
    rotated = Incidence(6, [(1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 1)])
    assert isomorphism_search(hexagon, rotated) is not None


def test_format_parse_roundtrip(h3):
    text = format_unital(h3)
    assert text.startswith("unital v=28 k=4\n")
    assert parse_unital(text) == h3


def test_write_read_roundtrip(tmp_path, h2):
    path = tmp_path / "u.unital"
    write_unital(h2, path)
    assert read_unital(path) == h2


def test_parse_comments_and_blank_lines():
    text = "# a comment\n\nunital v=3 k=3  # trailing\n0 1 2\n"
    U = parse_unital(text)
    assert U.v == 3 and U.blocks == ((0, 1, 2),)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("0 1 2\n", "expected header"),
        ("unital v=9 k=3\n0 1\n", "expected k=3"),
        ("unital v=9 k=3\n0 1 x\n", "non-integer"),
        ("unital v=9 k=3\n2 1 0\n", "strictly ascending"),
        ("unital v=9 k=3\n0 1 9\n", "out of range"),
        ("unital v=9 k=3\n0 1 2\n0 1 2\n", "duplicate block (first seen on line 2)"),
        ("# nothing\n", "missing"),
        ("unital v=0 k=3\n", "out of range"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ValueError, match=".*") as exc:
        parse_unital(text, source="bad.unital")
    assert fragment in str(exc.value)
    if fragment != "missing":
        assert "bad.unital:" in str(exc.value)  # line number prefix


def test_parse_error_reports_line_number():
    text = "unital v=9 k=3\n0 1 2\n0 1\n"
    with pytest.raises(ValueError) as exc:
        parse_unital(text, source="f")
    assert "f:3:" in str(exc.value)
