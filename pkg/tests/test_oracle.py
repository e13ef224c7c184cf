"""The brute-force oracle itself, and its cross-validation harness."""

from __future__ import annotations

from collections import Counter
from itertools import permutations as all_permutations

import pytest

from permclass import class_e, class_f, oracle
from permclass.oracle import (
    brute_count,
    catalan,
    classify_histogram,
    count_series,
    cross_validate,
    e_statistics_histogram,
    iter_class,
    iter_levels,
)
from permclass.perms import (
    CLASS_E_BASIS,
    CLASS_F_BASIS,
    Permutation,
    ResourceLimitError,
    avoids_all,
    basis,
)


class TestCounts:
    def test_documented_values(self):
        assert brute_count(CLASS_F_BASIS, 5) == 89
        assert brute_count(CLASS_E_BASIS, 6) == 367
        assert brute_count(basis(321), 1) == 1

    def test_matches_naive_filter(self):
        for b in (CLASS_F_BASIS, CLASS_E_BASIS):
            for n in range(1, 7):
                direct = sum(
                    1 for p in all_permutations(range(1, n + 1))
                    if avoids_all(Permutation(p), b)
                )
                assert brute_count(b, n) == direct

    def test_emitted_members_are_avoiders(self):
        for vals in iter_class(CLASS_F_BASIS, 6):
            assert avoids_all(Permutation(vals), CLASS_F_BASIS)

    def test_resource_limit(self):
        with pytest.raises(ResourceLimitError):
            count_series(CLASS_F_BASIS, 12)
        with pytest.raises(ResourceLimitError):
            classify_histogram(10)

    def test_agrees_with_extension_generator(self):
        from permclass.perms import enumerate_class

        for b in (CLASS_F_BASIS, CLASS_E_BASIS):
            counts = count_series(b, 8)
            assert counts == [enumerate_class(b, n) for n in range(1, 9)]


class TestHistograms:
    def test_labels_at_three(self):
        h = classify_histogram(3)
        assert sum(h["A"].values()) == 5
        assert dict(h["B"]) == {2: 1}
        assert sum(h["C"].values()) == 0

    def test_shortest_c_permutations(self):
        h = classify_histogram(5)
        assert sum(h["C"].values()) == 2  # 13524 and 14523 themselves

    def test_partition_at_four(self):
        h = classify_histogram(4)
        assert sum(sum(v.values()) for v in h.values()) == 22

    def test_a_counts_are_catalan(self):
        for n in range(1, 8):
            h = classify_histogram(n)
            assert sum(h["A"].values()) == catalan(n)

    def test_e_statistics_small(self):
        assert dict(e_statistics_histogram(1)) == {(0, False): 1}
        assert dict(e_statistics_histogram(2)) == {(0, False): 1, (1, True): 1}
        assert sum(e_statistics_histogram(5).values()) == 88


class TestCrossValidation:
    def test_small_run_green(self):
        f_sol = class_f.solve(8)
        e_sol = class_e.solve(8)
        report = cross_validate(f_sol, e_sol, n_count=6, n_bivariate=5)
        assert report.ok, report.render()
        assert "PASS" in report.render()

    def test_fault_injection_reports_first_mismatch(self):
        from dataclasses import replace
        from permclass.series import MultiSeries, variable

        f_sol = class_f.solve(8)
        e_sol = class_e.solve(8)
        z = variable("z", 8)
        u = variable("u", 8)
        # seed an off-by-one fault at z^3 u^2 of B(z,u)
        tampered = replace(f_sol, b_u=f_sol.b_u + z ** 3 * u ** 2)
        report = cross_validate(tampered, e_sol, n_count=4, n_bivariate=4)
        assert not report.ok
        failing = [c for c in report.checks if not c.ok]
        assert failing[0].name == "histogram[B] n=3"
        assert "u^2" in failing[0].detail
        assert report.to_json()["ok"] is False
