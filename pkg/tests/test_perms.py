"""Permutation primitives: parsing, containment, enumeration."""

from __future__ import annotations

from itertools import permutations as all_permutations

import pytest

from permclass.perms import (
    Basis,
    BasisError,
    CLASS_E_BASIS,
    CLASS_F_BASIS,
    Permutation,
    ResourceLimitError,
    avoids_all,
    basis,
    class_levels,
    contains,
    delete_entry,
    enumerate_class,
    left_to_right_minima,
    pattern_of,
    perm,
    right_to_left_maxima,
)


class TestParsing:
    def test_space_separated(self):
        assert Permutation.parse("2 1 4 3").values == (2, 1, 4, 3)
        assert len(perm("15 17 11 4 16 1 14 8 6 3 2 13 12 10 9 7 5")) == 17

    def test_comma_separated(self):
        assert Permutation.parse("2, 1, 4, 3").values == (2, 1, 4, 3)

    def test_compact_digits(self):
        assert Permutation.parse("2341").values == (2, 3, 4, 1)

    def test_compact_rejected_beyond_nine(self):
        with pytest.raises(ValueError):
            Permutation.parse("1234567891")  # ten digits, ambiguous

    def test_long_form_beyond_nine(self):
        p = Permutation.parse("10 9 8 7 6 5 4 3 2 1")
        assert len(p) == 10

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))
        with pytest.raises(ValueError):
            Permutation((2, 3))
        with pytest.raises(ValueError):
            Permutation(())


class TestContainment:
    def test_documented_positive(self):
        assert contains(3241, 1573462) is True

    def test_documented_negative(self):
        assert contains(3214, 1573462) is False

    def test_single_point_embeds_anywhere(self):
        for n in range(1, 6):
            for p in all_permutations(range(1, n + 1)):
                assert contains(1, p)

    def test_longer_pattern_never_contained(self):
        assert contains(12345, 1234) is False

    def test_partial_order_small(self):
        universe = [tuple(p) for k in range(1, 5) for p in all_permutations(range(1, k + 1))]
        rel = {(a, b): contains(a, b) for a in universe for b in universe}
        for a in universe:
            assert rel[(a, a)]
            for b in universe:
                if rel[(a, b)] and rel[(b, a)]:
                    assert a == b
                for c in universe:
                    if rel[(a, b)] and rel[(b, c)]:
                        assert rel[(a, c)]

    def test_transitivity_spot_checks_length_5(self):
        fives = [tuple(p) for p in all_permutations(range(1, 6))]
        smaller = [tuple(p) for k in (2, 3) for p in all_permutations(range(1, k + 1))]
        for a in smaller:
            for b in [tuple(p) for p in all_permutations(range(1, 5))]:
                if not contains(a, b):
                    continue
                for c in fives[::7]:
                    if contains(b, c):
                        assert contains(a, c)


class TestAvoidance:
    def test_avoids_documented(self):
        assert avoids_all(1573462, basis(3214))

    def test_containment_reflexive(self):
        assert not avoids_all(perm(123), basis(123))

    def test_patterns_longer_than_host(self):
        assert avoids_all(123, CLASS_F_BASIS)

    def test_basis_minimality_enforced(self):
        with pytest.raises(BasisError):
            basis(123, 1234)
        with pytest.raises(BasisError):
            Basis(frozenset())


class TestExtremes:
    def test_minima_fig1(self):
        p = perm("15 17 11 4 16 1 14 8 6 3 2 13 12 10 9 7 5")
        assert left_to_right_minima(p) == (1, 3, 4, 6)

    def test_minima_monotone(self):
        assert left_to_right_minima(123) == (1,)
        assert left_to_right_minima(321) == (1, 2, 3)

    def test_maxima_monotone(self):
        assert right_to_left_maxima(123) == (3,)
        assert right_to_left_maxima(321) == (1, 2, 3)

    def test_maxima_by_direct_scan(self):
        assert right_to_left_maxima(2143) == (3, 4)
        for p in all_permutations(range(1, 7)):
            expected = tuple(
                i + 1 for i in range(6) if all(p[j] < p[i] for j in range(i + 1, 6))
            )
            assert right_to_left_maxima(p) == expected

    def test_minima_always_include_first_and_lowest(self):
        for p in all_permutations(range(1, 6)):
            positions = left_to_right_minima(p)
            assert 1 in positions
            assert p.index(1) + 1 in positions


class TestEnumeration:
    def test_paper_heads(self):
        assert enumerate_class(CLASS_F_BASIS, 4) == 22
        assert enumerate_class(CLASS_E_BASIS, 5) == 88

    def test_any_length4_basis_at_3(self):
        assert enumerate_class(basis(4321), 3) == 6

    def test_matches_naive_filter_both_bases(self):
        for b in (CLASS_F_BASIS, CLASS_E_BASIS):
            for n in range(1, 8):
                direct = sum(
                    1 for p in all_permutations(range(1, n + 1))
                    if avoids_all(Permutation(p), b)
                )
                assert enumerate_class(b, n) == direct

    def test_collect_lexicographic(self):
        members = enumerate_class(CLASS_F_BASIS, 3, mode="collect")
        assert [m.values for m in members] == sorted(m.values for m in members)
        assert len(members) == 6

    def test_collect_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_class(CLASS_F_BASIS, 8, mode="collect", cap=100)

    def test_downward_closure(self):
        for b in (CLASS_F_BASIS, CLASS_E_BASIS):
            for level in class_levels(b, 6):
                for vals in level:
                    if len(vals) == 1:
                        continue
                    for i in range(1, len(vals) + 1):
                        assert avoids_all(delete_entry(vals, i), b)

    def test_length_one_pattern_empties_class(self):
        assert enumerate_class(basis(1), 3) == 0


def test_pattern_of_renormalises():
    assert pattern_of((15, 3, 9)) == (3, 1, 2)
    assert pattern_of((5,)) == (1,)
