"""Brute-force ground truth, computed straight from the definitions.

Counts, A/B/C classifications and catalytic-statistic histograms here are
produced without any generating function: classes are enumerated by a
prefix-pruned depth-first search (append a new last element of every
possible rank, prune prefixes that already contain a forbidden pattern),
classification uses pattern containment only, and statistics come from
the structural decompositions in ``hasse``.  The generation strategy is
deliberately different from ``perms.enumerate_class``, which grows
avoiders by inserting a new maximum; the two share nothing above
``Permutation`` and ``contains``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from . import hasse
from .perms import (
    Basis,
    CLASS_E_BASIS,
    CLASS_F_BASIS,
    Permutation,
    ResourceLimitError,
    avoids_all,
    perm,
    _constraints,
)
from .series import MultiSeries

DEFAULT_COUNT_LIMIT = 11
DEFAULT_HISTOGRAM_LIMIT = 9
VALIDATE_TO = 8  # emitted avoiders up to this length are re-checked from scratch


def _ending_constraints(b: Basis) -> list:
    """Per pattern: constraint table of all entries but the last, plus the
    ascent/descent relation of each entry to the last one."""
    tables = []
    for p in b:
        vals = p.values
        head = vals[:-1]
        last = vals[-1]
        tables.append((_constraints(head), tuple(v < last for v in head)))
    return tables


def _completes_pattern(prefix: tuple, tables: list) -> bool:
    """Does the prefix contain a forbidden pattern ending at its last element?"""
    n = len(prefix)
    last = prefix[-1]
    for cons, below_last in tables:
        k = len(cons)
        if k >= n:
            continue

        def search(t: int, start: int, chosen: list) -> bool:
            if t == k:
                return True
            for j in range(start, n - 1 - (k - t - 1)):
                x = prefix[j]
                if (x < last) != below_last[t]:
                    continue
                if all((chosen[s] < x) == asc for s, asc in cons[t]):
                    chosen.append(x)
                    if search(t + 1, j + 1, chosen):
                        return True
                    chosen.pop()
            return False

        if search(0, 0, []):
            return True
    return False


def iter_levels(b: Basis, max_n: int, validate_to: int = VALIDATE_TO) -> Iterator[list]:
    """Yield the avoiders of each length 1..max_n as value tuples.

    Levels are built by appending a last element of every possible rank to
    each shorter avoider; a prefix of an avoider is itself an avoider, so
    this reaches everything.  Up to validate_to, every emitted permutation
    is additionally re-tested against the basis from scratch.
    """
    tables = _ending_constraints(b)
    level = [(1,)] if not any(len(p) == 1 for p in b) else []
    yield list(level)
    for n in range(2, max_n + 1):
        nxt = []
        for parent in level:
            for rank in range(1, n + 1):
                child = tuple(v if v < rank else v + 1 for v in parent) + (rank,)
                if not _completes_pattern(child, tables):
                    nxt.append(child)
        if n <= validate_to:
            for child in nxt:
                if not avoids_all(Permutation(child), b):
                    raise AssertionError(f"generator emitted a non-avoider {child}")
        yield nxt
        level = nxt


def count_series(b: Basis, max_n: int, limit: int = DEFAULT_COUNT_LIMIT) -> list[int]:
    """[|Av(b)_1|, ..., |Av(b)_max_n|] by exhaustive generation."""
    if max_n > limit:
        raise ResourceLimitError(f"counting beyond n={limit} is disabled by the resource limit")
    return [len(level) for level in iter_levels(b, max_n)]


def brute_count(b: Basis, n: int, limit: int = DEFAULT_COUNT_LIMIT) -> int:
    return count_series(b, n, limit=limit)[n - 1]


def iter_class(b: Basis, n: int, limit: int = DEFAULT_COUNT_LIMIT) -> Iterator[tuple]:
    if n > limit:
        raise ResourceLimitError(f"enumeration beyond n={limit} is disabled by the resource limit")
    for k, level in enumerate(iter_levels(b, n), start=1):
        if k == n:
            yield from level


# ---------------------------------------------------------------------------
# histograms

def classify_histogram(n: int, limit: int = DEFAULT_HISTOGRAM_LIMIT,
                       levels: list | None = None) -> dict[str, Counter]:
    """Histograms of the class-F catalytic statistic, one per label A/B/C.

    Labels come from containment checks, statistics from the structural
    decomposition; neither touches the series pipeline.
    """
    if n > limit:
        raise ResourceLimitError(f"histograms beyond n={limit} are disabled by the resource limit")
    members = levels if levels is not None else list(iter_class(CLASS_F_BASIS, n, limit=limit))
    out = {"A": Counter(), "B": Counter(), "C": Counter()}
    for vals in members:
        stat = hasse.class_f_statistic(vals)
        out[stat.label][stat.value] += 1
    return out


def e_statistics_histogram(n: int, limit: int = DEFAULT_HISTOGRAM_LIMIT,
                           levels: list | None = None) -> Counter:
    """Joint histogram of (u-tree count of the bottom subgraph, membership
    in P) over the class-E permutations of length n."""
    if n > limit:
        raise ResourceLimitError(f"histograms beyond n={limit} are disabled by the resource limit")
    members = levels if levels is not None else list(iter_class(CLASS_E_BASIS, n, limit=limit))
    out: Counter = Counter()
    for vals in members:
        stat = hasse.class_e_statistic(vals)
        out[(stat.value, stat.rightmost_is_path)] += 1
    return out


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


# ---------------------------------------------------------------------------
# cross-validation of series against the oracle

@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CrossValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, ok, detail))

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }

    def render(self) -> str:
        rows = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
                for c in self.checks]
        rows.append(("all checks passed" if self.ok else "FAILURES PRESENT"))
        return "\n".join(rows)


def _profile(series: MultiSeries, n: int) -> dict[int, int]:
    prof = series.variable_profile(n, "u")
    out = {}
    for e, c in prof.items():
        if c.denominator != 1:
            raise AssertionError(f"non-integer coefficient {c} at z^{n} u^{e}")
        out[e] = c.numerator
    return out


def _first_difference(expected: dict[int, int], got: dict[int, int]) -> str:
    keys = sorted(set(expected) | set(got))
    for k in keys:
        if expected.get(k, 0) != got.get(k, 0):
            return f"u^{k}: oracle {expected.get(k, 0)}, series {got.get(k, 0)}"
    return ""


def cross_validate(f_solution, e_solution, n_count: int = 10, n_bivariate: int = 9,
                   count_limit: int = DEFAULT_COUNT_LIMIT,
                   histogram_limit: int = DEFAULT_HISTOGRAM_LIMIT) -> CrossValidationReport:
    """Assert every oracle-vs-series agreement and report a pass/fail matrix.

    f_solution and e_solution are the solved pipelines for the two classes
    (``class_f.solve`` / ``class_e.solve``).  Any disagreement is reported
    with the first differing coefficient.
    """
    report = CrossValidationReport()

    f_levels = list(iter_levels(CLASS_F_BASIS, n_count))[: n_count]
    e_levels = list(iter_levels(CLASS_E_BASIS, n_count))[: n_count]

    for name, levels, series in (("F", f_levels, f_solution.f_total),
                                 ("E", e_levels, e_solution.e_1)):
        for n in range(1, n_count + 1):
            want = len(levels[n - 1])
            got = series.integer_coefficients(n, n)[0]
            ok = want == got
            report.add(f"count[{name}] n={n}", ok,
                       "" if ok else f"oracle {want}, series {got}")
            if not ok:
                break

    for n in range(1, n_bivariate + 1):
        hists = classify_histogram(n, limit=histogram_limit, levels=f_levels[n - 1])
        for label, series in (("A", f_solution.a_u), ("B", f_solution.b_u), ("C", f_solution.c_u)):
            want = {k: v for k, v in sorted(hists[label].items())}
            got = _profile(series, n)
            diff = _first_difference(want, got)
            report.add(f"histogram[{label}] n={n}", not diff, diff)
        total = sum(sum(h.values()) for h in hists.values())
        report.add(f"partition[F] n={n}", total == len(f_levels[n - 1]),
                   f"labelled {total} of {len(f_levels[n - 1])}")
        a_total = sum(hists["A"].values())
        report.add(f"catalan[A] n={n}", a_total == catalan(n),
                   "" if a_total == catalan(n) else f"A count {a_total} != Catalan {catalan(n)}")

    for n in range(1, n_bivariate + 1):
        joint = e_statistics_histogram(n, limit=histogram_limit, levels=e_levels[n - 1])
        e_marginal: Counter = Counter()
        p_marginal: Counter = Counter()
        for (trees, in_p), count in joint.items():
            e_marginal[trees] += count
            if in_p:
                p_marginal[trees] += count
        diff = _first_difference(dict(e_marginal), _profile(e_solution.e_u, n))
        report.add(f"histogram[E] n={n}", not diff, diff)
        diff = _first_difference(dict(p_marginal), _profile(e_solution.p_u, n))
        report.add(f"histogram[P] n={n}", not diff, diff)

    return report
