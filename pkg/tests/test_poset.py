"""Poset core: validation, order queries, enumeration, canonical form."""

from itertools import combinations, permutations

import pytest

from c3control import (
    CycleError,
    DuplicateNameError,
    NotReducedError,
    Poset,
    poset_from_covers,
    poset_h,
)

from conftest import posets_of_size


def diamond() -> Poset:
    # D < B,C < A
    return Poset(4, [(3, 1), (3, 2), (1, 0), (2, 0)], ["A", "B", "C", "D"])


def test_cycle_rejected():
    with pytest.raises(CycleError) as exc:
        Poset(3, [(0, 1), (1, 2), (2, 0)])
    assert len(exc.value.witness) >= 2


def test_transitive_edge_rejected():
    with pytest.raises(NotReducedError) as exc:
        Poset(3, [(2, 1), (1, 0), (2, 0)])
    assert exc.value.pair == ("2", "0")


def test_duplicate_names_rejected():
    with pytest.raises(DuplicateNameError):
        Poset(2, [], ["X", "X"])


def test_bad_cover_ids_rejected():
    with pytest.raises(ValueError):
        Poset(2, [(0, 5)])
    with pytest.raises(ValueError):
        Poset(2, [(0, 0)])


def test_order_queries():
    p = diamond()
    assert set(p.upper_covers(3)) == {1, 2}
    assert set(p.lower_covers(0)) == {1, 2}
    assert p.up_set(3) == frozenset({0, 1, 2, 3})
    assert p.up_set(1) == frozenset({0, 1})
    assert p.lt(3, 0) and not p.lt(0, 3) and not p.lt(1, 2)
    assert p.leq(1, 1) and not p.lt(1, 1)
    assert p.minimal_elements() == (3,)
    assert p.maximal_elements() == (0,)
    assert p.id_of("D") == 3 and p.name_of(3) == "D"


def test_up_mask_matches_up_set():
    for p in posets_of_size(4):
        for x in range(p.n):
            assert {y for y in range(p.n) if p.up_mask(x) >> y & 1} == set(p.up_set(x))


def test_linear_extensions_match_brute_force():
    for p in posets_of_size(4):
        brute = {
            order
            for order in permutations(range(p.n))
            if p.is_linear_extension(order)
        }
        listed = list(p.linear_extensions())
        assert set(listed) == brute
        assert len(listed) == len(brute) == p.linear_extension_count()
        assert listed == sorted(listed)  # lexicographic order, no repeats


def test_linear_extension_is_most_derived_first():
    p = diamond()
    for order in p.linear_extensions():
        assert order[0] == 3 and order[-1] == 0


def test_antichains_match_brute_force():
    for p in posets_of_size(4):
        brute = set()
        for r in range(p.n + 1):
            for sub in combinations(range(p.n), r):
                if all(not p.lt(x, y) and not p.lt(y, x) for x in sub for y in sub if x != y):
                    brute.add(sub)
        assert set(p.antichains()) == brute
        assert () in brute


def test_restrict_diamond():
    p = diamond()
    # Dropping B leaves D < C < A with the transitive D < A edge reduced away.
    q = p.restrict([0, 2, 3])
    assert q.n == 3
    assert q.names == ("A", "C", "D")
    assert sorted(q.covers) == [(1, 0), (2, 1)]


def test_restrict_roundtrip_full_set():
    for p in posets_of_size(4):
        q = p.restrict(range(p.n))
        assert sorted(q.covers) == sorted(p.covers)


def test_relabel_inverse():
    p = poset_h()
    perm = [3, 1, 4, 0, 9, 2, 6, 8, 7, 5]
    q = p.relabel(perm)
    inv = [0] * p.n
    for old, new in enumerate(perm):
        inv[new] = old
    assert sorted(q.relabel(inv).covers) == sorted(p.covers)
    assert q.names[perm[0]] == p.names[0]


def test_add_bottom():
    p = diamond()
    q = p.add_bottom("Z")
    assert q.n == 5
    assert q.minimal_elements() == (0,)
    assert q.name_of(0) == "Z"
    assert all(q.lt(0, x) for x in range(1, 5))
    # the old minimal element is the only lower cover of the new bottom
    assert q.upper_covers(0) == (p.minimal_elements()[0] + 1,)


def test_canonical_form_is_isomorphism_invariant():
    for p in posets_of_size(4):
        key = p.canonical_form()
        for perm in permutations(range(p.n)):
            assert p.relabel(perm).canonical_form() == key


def test_canonical_form_separates_classes():
    # Distinct keys exactly match the known number of iso classes on 4 points
    # that admit the identity extension (16 of A000112).
    keys = {p.canonical_form() for p in posets_of_size(4)}
    assert len(keys) == 16


def test_poset_from_covers_names():
    p = poset_from_covers(3, ["x", "y", "z"], [(2, 1), (1, 0)])
    assert p.lt(p.id_of("z"), p.id_of("x"))


def test_poset_h_shape(h=None):
    p = poset_h()
    assert p.n == 10
    assert p.minimal_elements() == (p.id_of("F"),)
    assert set(p.upper_covers(p.id_of("F"))) == {p.id_of("E1"), p.id_of("E2"), p.id_of("E3")}
    assert set(p.upper_covers(p.id_of("E2"))) == {p.id_of("D2"), p.id_of("B")}
    assert p.linear_extension_count() == 720
    assert p.maximal_elements() == (p.id_of("A"), p.id_of("B"), p.id_of("C"))
