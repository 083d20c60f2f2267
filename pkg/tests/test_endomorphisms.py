"""Structured endomorphisms of T^n and the pair file format."""

import itertools
import random

import pytest

from hopfgalois.endomorphisms import (
    PairFileError,
    StructuredEndo,
    all_coords,
    compose,
    count_aut0,
    count_end0,
    enumerate_aut0,
    enumerate_end0,
    format_pair_file,
    identity_endo,
    image_coords_table,
    invert_aut0,
    is_automorphism,
    parse_pair_file,
    trivial_endo,
)
from hopfgalois.groups import BudgetError, load_group, power_identity

S3 = load_group("s3")
A5 = load_group("a5")


def test_counts():
    assert count_end0(S3, 1) == 7
    assert count_end0(S3, 2) == 169
    assert count_end0(S3, 3) == 6859
    assert count_end0(A5, 1) == 121
    assert count_aut0(S3, 2) == 72
    assert count_aut0(S3, 3) == 1296


def test_enumeration_matches_count_and_is_duplicate_free():
    seen = set()
    for e in enumerate_end0(S3, 2):
        seen.add((e.theta, e.phis))
    assert len(seen) == 169


def test_budget_gate():
    with pytest.raises(BudgetError):
        list(enumerate_end0(S3, 8))


def test_every_enumerated_endo_is_a_homomorphism():
    rng = random.Random(0xE11D0)
    coords = [tuple(rng.randrange(6) for _ in range(2)) for _ in range(8)]
    for e in enumerate_end0(S3, 2):
        for a in coords:
            for b in coords:
                ab = tuple(S3.mul[x][y] for x, y in zip(a, b))
                image = tuple(S3.mul[x][y] for x, y in zip(e.apply(a), e.apply(b)))
                assert e.apply(ab) == image


def test_identity_and_trivial():
    ident = identity_endo(S3, 3)
    triv = trivial_endo(S3, 3)
    x = (2, 5, 1)
    assert ident.apply(x) == x
    assert triv.apply(x) == power_identity(3)
    assert is_automorphism(ident)
    assert not is_automorphism(triv)


def test_validation_rejects_malformed_endos():
    with pytest.raises(ValueError):
        StructuredEndo(S3, 2, (1,), (0, 0))
    with pytest.raises(ValueError):
        StructuredEndo(S3, 2, (3, 1), (0, 0))  # theta out of range
    with pytest.raises(ValueError):
        StructuredEndo(S3, 2, (0, 1), (0, 0))  # phi must be None on a 0
    with pytest.raises(ValueError):
        StructuredEndo(S3, 2, (1, 1), (None, 0))  # and an id otherwise
    with pytest.raises(ValueError):
        StructuredEndo(S3, 2, (1, 1), (99, 0))


def test_compose_agrees_with_pointwise_composition():
    rng = random.Random(0xC0437)
    endos = list(enumerate_end0(S3, 2))
    coords = [tuple(rng.randrange(6) for _ in range(2)) for _ in range(6)]
    for _ in range(200):
        e1 = rng.choice(endos)
        e2 = rng.choice(endos)
        c = compose(e1, e2)
        for x in coords:
            assert c.apply(x) == e1.apply(e2.apply(x))


def test_compose_is_associative():
    rng = random.Random(0xA550C)
    endos = list(enumerate_end0(S3, 2))
    for _ in range(100):
        a, b, c = (rng.choice(endos) for _ in range(3))
        lhs = compose(compose(a, b), c)
        rhs = compose(a, compose(b, c))
        assert (lhs.theta, lhs.phis) == (rhs.theta, rhs.phis)


def test_aut0_enumeration_and_inverses():
    auts = list(enumerate_aut0(S3, 2))
    assert len(auts) == count_aut0(S3, 2)
    assert all(is_automorphism(e) for e in auts)
    ident = identity_endo(S3, 2)
    for e in auts:
        inv = invert_aut0(e)
        back = compose(e, inv)
        assert (back.theta, back.phis) == (ident.theta, ident.phis)
    with pytest.raises(ValueError):
        invert_aut0(trivial_endo(S3, 2))


def test_aut0_is_exactly_the_invertible_part_of_end0():
    invertible = {
        (e.theta, e.phis) for e in enumerate_end0(S3, 2) if is_automorphism(e)
    }
    assert invertible == {(e.theta, e.phis) for e in enumerate_aut0(S3, 2)}


def test_image_table_matches_apply():
    coords = all_coords(S3, 2)
    assert coords.shape == (36, 2)
    e = StructuredEndo(S3, 2, (2, 2), (1, 4))
    table = image_coords_table(e)
    for k in (0, 1, 7, 35):
        assert tuple(int(v) for v in table[k]) == e.apply(tuple(int(v) for v in coords[k]))


# ── Pair files ──────────────────────────────────────────────────────


PAIR_TEXT = """\
# comment lines and blanks are skipped

n=2
theta_f=0,1
phi_f=-,3
theta_g=1,2
phi_g=0,2
"""


def test_parse_pair_file():
    f, g = parse_pair_file(PAIR_TEXT, S3)
    assert f.theta == (0, 1) and f.phis == (None, 3)
    assert g.theta == (1, 2) and g.phis == (0, 2)


def test_pair_file_round_trip():
    f, g = parse_pair_file(PAIR_TEXT, S3)
    f2, g2 = parse_pair_file(format_pair_file(f, g), S3)
    assert (f2.theta, f2.phis) == (f.theta, f.phis)
    assert (g2.theta, g2.phis) == (g.theta, g.phis)


@pytest.mark.parametrize(
    "mutation,complaint",
    [
        ("n=2\ntheta_f=0,1\nphi_f=-,3\ntheta_g=1,2", "missing field phi_g"),
        ("n=x\ntheta_f=0\nphi_f=-\ntheta_g=1\nphi_g=0", "n must be an integer"),
        ("n=2\ntheta_f=0\nphi_f=-,0\ntheta_g=1,1\nphi_g=0,0", "must have 2 entries"),
        ("n=2\ntheta_f=0,1\nphi_f=0,0\ntheta_g=1,1\nphi_g=0,0", 'must be "-"'),
        ("n=2\ntheta_f=0,1\nphi_f=-,-\ntheta_g=1,1\nphi_g=0,0", 'is "-" but'),
        ("n=2\ntheta_f=0,9\nphi_f=-,0\ntheta_g=1,1\nphi_g=0,0", "invalid endomorphism f"),
        ("just some text", "expected key=value"),
    ],
)
def test_pair_file_errors(mutation, complaint):
    with pytest.raises(PairFileError, match=complaint):
        parse_pair_file(mutation, S3)
