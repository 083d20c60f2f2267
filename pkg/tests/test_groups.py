"""Multiplication-table groups: validation, catalog, automorphisms, powers."""

import random

import pytest

from hopfgalois.groups import (
    FiniteGroup,
    GroupValidationError,
    catalog_names,
    choose_prime_subgroups,
    commutator_closure,
    enumerate_homomorphisms,
    find_isomorphism,
    has_fpf_automorphism,
    is_fixed_point_free,
    is_simple,
    is_solvable,
    load_group,
    normal_subgroups,
    power_coords,
    power_group,
    power_index,
    quotient_group,
    subgroup_closure,
)

S3 = load_group("s3")
C6 = load_group("c6")
Q8 = load_group("q8")


# ── Table validation ─────────────────────────────────────────────────────


def test_catalog_basics():
    assert S3.order == 6
    assert C6.order == 6
    assert load_group("a5").order == 60
    assert load_group("d4").order == 8
    assert "s3" in catalog_names()
    # catalog loads are cached by name
    assert load_group("s3") is S3


def test_identity_and_inverses():
    for G in (S3, C6, Q8):
        assert G.mul[0] == tuple(range(G.order))
        for x in range(G.order):
            assert G.mul[x][G.inv[x]] == 0
            assert G.mul[G.inv[x]][x] == 0


def test_rejects_non_square_table():
    with pytest.raises(GroupValidationError, match="not square"):
        FiniteGroup([[0, 1], [1]])


def test_rejects_bad_identity():
    with pytest.raises(GroupValidationError, match="identity"):
        FiniteGroup([[1, 0], [0, 1]])


def test_rejects_closure_violation():
    with pytest.raises(GroupValidationError, match="closure"):
        FiniteGroup([[0, 1], [1, 7]])


def test_rejects_broken_associativity():
    # Rows and columns are Latin (every element appears once), identity
    # is fine, but (1·1)·2 != 1·(1·2): this is a quasigroup, not a group.
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupValidationError, match="associativity|inverse"):
        FiniteGroup(table)


def test_file_round_trip(tmp_path):
    path = tmp_path / "c3.tbl"
    body = "3\n" + "\n".join(" ".join(str(C3_MUL[x][y]) for y in range(3)) for x in range(3))
    path.write_text(body + "\n")
    G = load_group(str(path))
    assert G.order == 3
    assert G.name == "c3"
    assert find_isomorphism(G, load_group("c3")) is not None


C3_MUL = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_file_rejects_corrupt_table(tmp_path):
    path = tmp_path / "broken.tbl"
    path.write_text("2\n0 1\n1 1\n")
    with pytest.raises(GroupValidationError):
        load_group(str(path))
    path.write_text("3\n0 1 2\n1 2 0\n")
    with pytest.raises(GroupValidationError, match="expected 3 table rows"):
        load_group(str(path))


def test_unknown_source_is_an_error():
    with pytest.raises(GroupValidationError, match="not a catalog name"):
        load_group("definitely-not-a-group")


# ── Element structure ────────────────────────────────────────────────────


def test_element_orders():
    assert sorted(S3.element_orders()) == [1, 2, 2, 2, 3, 3]
    assert sorted(C6.element_orders()) == [1, 2, 3, 3, 6, 6]
    assert sorted(Q8.element_orders()) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_center_and_abelian():
    assert S3.center() == (0,)
    assert len(Q8.center()) == 2
    assert C6.is_abelian()
    assert not S3.is_abelian()


def test_conjugation_is_an_automorphism():
    for g in range(S3.order):
        images = S3.conjugation_images(g)
        assert images in S3.automorphisms()
        assert S3.automorphisms()[S3.conjugation_aut_id(g)] == images


# ── Automorphisms and homomorphisms ──────────────────────────────────────


def test_automorphism_counts():
    assert len(S3.automorphisms()) == 6
    assert len(C6.automorphisms()) == 2
    assert len(Q8.automorphisms()) == 24
    assert len(load_group("d4").automorphisms()) == 8
    assert len(load_group("c2").automorphisms()) == 1


def test_aut_id_zero_is_identity():
    for G in (S3, C6, Q8):
        assert G.automorphisms()[0] == tuple(range(G.order))


def test_aut_index_round_trip():
    for i, a in enumerate(S3.automorphisms()):
        assert S3.aut_index(a) == i
    with pytest.raises(ValueError):
        S3.aut_index(tuple([0] * 6))


def test_inner_automorphisms():
    # S3 is centerless so conjugation is faithful: all 6 auts are inner.
    assert len(S3.inner_automorphism_ids()) == 6
    # Q8 has center of order 2: 4 inner auts out of 24.
    assert len(Q8.inner_automorphism_ids()) == 4
    assert C6.inner_automorphism_ids() == (0,)


def test_hom_counts():
    c2 = load_group("c2")
    assert len(list(enumerate_homomorphisms(C6, c2))) == 2
    # maps factor through the abelianization S3 -> C2 -> C6
    assert len(list(enumerate_homomorphisms(S3, C6))) == 2
    # identity plus one per involution of S3
    assert len(list(enumerate_homomorphisms(c2, S3))) == 4


def test_homs_are_really_homomorphisms():
    rng = random.Random(0x5E11)
    for f in enumerate_homomorphisms(S3, Q8):
        for _ in range(20):
            x, y = rng.randrange(6), rng.randrange(6)
            assert f[S3.mul[x][y]] == Q8.mul[f[x]][f[y]]


def test_find_isomorphism_on_relabeled_table():
    # Relabel C6 by a permutation fixing the identity; the search must
    # still see through it.
    perm = [0, 3, 5, 1, 4, 2]
    inv = [perm.index(i) for i in range(6)]
    mul = [[perm[C6.mul[inv[x]][inv[y]]] for y in range(6)] for x in range(6)]
    H = FiniteGroup(mul, name="c6-relabeled")
    images = find_isomorphism(C6, H)
    assert images is not None
    for x in range(6):
        for y in range(6):
            assert images[C6.mul[x][y]] == H.mul[images[x]][images[y]]
    assert find_isomorphism(S3, C6) is None


def test_fixed_point_free_automorphisms():
    c5 = load_group("c5")
    doubling = next(
        a for a in c5.automorphisms() if a != tuple(range(5))
    )
    assert is_fixed_point_free(doubling) or any(
        is_fixed_point_free(a) for a in c5.automorphisms()
    )
    assert has_fpf_automorphism(c5)
    # These are the targets the tree criterion needs: no fpf automorphism.
    assert not has_fpf_automorphism(S3)
    assert not has_fpf_automorphism(C6)
    assert not has_fpf_automorphism(load_group("a5"))


# ── Direct powers ────────────────────────────────────────────────────────


def test_power_group_shape():
    G = power_group(S3, 2)
    assert G.order == 36
    assert power_group(S3, 1) is S3
    assert power_group(S3, 2) is G  # cached


def test_power_index_round_trip():
    rng = random.Random(0xA0)
    for _ in range(50):
        coords = tuple(rng.randrange(6) for _ in range(3))
        assert power_coords(S3, 3, power_index(S3, coords)) == coords


def test_power_multiplication_is_componentwise():
    G = power_group(S3, 2)
    rng = random.Random(7)
    for _ in range(100):
        a = tuple(rng.randrange(6) for _ in range(2))
        b = tuple(rng.randrange(6) for _ in range(2))
        k = G.mul[power_index(S3, a)][power_index(S3, b)]
        assert power_coords(S3, 2, k) == tuple(S3.mul[x][y] for x, y in zip(a, b))


# ── Subgroup machinery ───────────────────────────────────────────────────


def test_subgroup_closure():
    rot = next(x for x in range(6) if S3.element_order(x) == 3)
    assert len(subgroup_closure(S3, [rot])) == 3
    assert len(subgroup_closure(S3, [0])) == 1


def test_commutator_and_quotient():
    derived = commutator_closure(S3, range(6))
    assert len(derived) == 3
    Q, proj = quotient_group(S3, derived)
    assert Q.order == 2
    assert proj[0] == 0


def test_solvability_and_simplicity():
    assert is_solvable(S3)
    assert is_solvable(Q8)
    a5 = load_group("a5")
    assert not is_solvable(a5)
    assert is_simple(a5)
    assert not is_simple(S3)
    assert len(normal_subgroups(S3)) == 3


def test_prime_subgroup_choices():
    choice = choose_prime_subgroups(S3, 2, 3)
    members = choice.member_tuples(S3)
    assert len(members) == 9
    assert all(len(t) == 2 for t in members)
    # spans an elementary abelian 3-group: every member has order 1 or 3
    for t in members:
        assert all(S3.element_order(x) in (1, 3) for x in t)
    # a second order-3 element exists, so variant 1 must work and differ
    other = choose_prime_subgroups(S3, 2, 3, variant=1)
    assert other.generators != choice.generators
    with pytest.raises(ValueError, match="not prime"):
        choose_prime_subgroups(S3, 2, 4)
    with pytest.raises(ValueError, match="does not divide"):
        choose_prime_subgroups(S3, 2, 5)
    with pytest.raises(ValueError, match="variant"):
        choose_prime_subgroups(S3, 2, 3, variant=9)
