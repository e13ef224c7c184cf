"""Permutations, pattern containment, and pruned enumeration of
pattern-avoiding classes.

Values and positions are 1-based in every public interface, matching the
usual one-line notation; internal index arithmetic is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class BasisError(ValueError):
    """The forbidden-pattern set is not minimal (one pattern contains another)."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its configured size limit."""


@dataclass(frozen=True)
class Permutation:
    """A permutation in one-line notation: a bijection onto {1, ..., n}."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        n = len(vals)
        if n == 0:
            raise ValueError("permutations have length at least 1")
        if sorted(vals) != list(range(1, n + 1)):
            raise ValueError(f"{vals} is not an arrangement of 1..{n}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return " ".join(str(v) for v in self.values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse space- or comma-separated values; a compact digit string
        like "2341" is accepted only for length at most 9."""
        text = text.strip()
        if "," in text:
            parts = [p for p in (s.strip() for s in text.split(",")) if p]
        elif any(ch.isspace() for ch in text):
            parts = text.split()
        else:
            if not text.isdigit():
                raise ValueError(f"cannot parse permutation from {text!r}")
            if len(text) > 9:
                raise ValueError("compact digit form is only unambiguous up to length 9")
            parts = list(text)
        return cls(tuple(int(p) for p in parts))


def perm(spec) -> Permutation:
    """Coerce an int like 2341, a string, or a sequence into a Permutation."""
    if isinstance(spec, Permutation):
        return spec
    if isinstance(spec, int):
        return Permutation.parse(str(spec))
    if isinstance(spec, str):
        return Permutation.parse(spec)
    return Permutation(tuple(spec))


def pattern_of(values: Sequence[int]) -> tuple:
    """Renormalise a sequence of distinct integers onto 1..k, preserving order."""
    ranked = sorted(values)
    rank = {v: i + 1 for i, v in enumerate(ranked)}
    return tuple(rank[v] for v in values)


def _constraints(pattern: Sequence[int]) -> tuple:
    """For each pattern element, its order constraints against earlier ones."""
    return tuple(
        tuple((s, pattern[s] < pattern[t]) for s in range(t))
        for t in range(len(pattern))
    )


def _embed(host: Sequence[int], cons: tuple, t: int, start: int, stop: int,
           chosen: list) -> bool:
    """Backtracking search for an order-isomorphic embedding of a pattern
    (given by its constraint table) into host[start:stop]."""
    if t == len(cons):
        return True
    for j in range(start, stop - (len(cons) - t - 1)):
        x = host[j]
        if all((chosen[s] < x) == asc for s, asc in cons[t]):
            chosen.append(x)
            if _embed(host, cons, t + 1, j + 1, stop, chosen):
                return True
            chosen.pop()
    return False


def contains(pattern, host) -> bool:
    """True iff host has a subsequence ordered like pattern."""
    p = perm(pattern).values
    h = perm(host).values
    if len(p) > len(h):
        return False
    return _embed(h, _constraints(p), 0, 0, len(h), [])


@dataclass(frozen=True)
class Basis:
    """A minimal set of forbidden patterns.

    Minimality is asserted, not repaired: if one pattern contains another
    the set does not define the class its author intended.
    """

    patterns: frozenset

    def __post_init__(self):
        pats = frozenset(perm(p) for p in self.patterns)
        if not pats:
            raise BasisError("a basis must contain at least one pattern")
        for p in pats:
            for q in pats:
                if p is not q and contains(p, q):
                    raise BasisError(f"basis is not minimal: {q} contains {p}")
        object.__setattr__(self, "patterns", pats)

    def __iter__(self):
        return iter(sorted(self.patterns, key=lambda p: (len(p), p.values)))

    def __len__(self):
        return len(self.patterns)


def basis(*patterns) -> Basis:
    return Basis(frozenset(perm(p) for p in patterns))


CLASS_F_BASIS = basis(1234, 2341)
CLASS_E_BASIS = basis(1243, 2314)
CLASS_BASES = {"F": CLASS_F_BASIS, "E": CLASS_E_BASIS}


def avoids_all(host, b: Basis | Iterable) -> bool:
    """True iff host contains none of the basis patterns."""
    pats = b if isinstance(b, Basis) else [perm(p) for p in b]
    return not any(contains(p, host) for p in pats)


def left_to_right_minima(p) -> tuple:
    """1-based positions of entries smaller than everything before them."""
    vals = perm(p).values
    out = []
    best = None
    for i, v in enumerate(vals):
        if best is None or v < best:
            out.append(i + 1)
            best = v
    return tuple(out)


def right_to_left_maxima(p) -> tuple:
    """1-based positions of entries larger than everything after them."""
    vals = perm(p).values
    out = []
    best = None
    for i in range(len(vals) - 1, -1, -1):
        if best is None or vals[i] > best:
            out.append(i + 1)
            best = vals[i]
    return tuple(reversed(out))


def delete_entry(p, position: int) -> Permutation:
    """Remove the entry at a 1-based position and renormalise."""
    vals = perm(p).values
    kept = vals[: position - 1] + vals[position:]
    return Permutation(pattern_of(kept))


# ---------------------------------------------------------------------------
# class enumeration by extension: every avoider of length n arises from an
# avoider of length n-1 by inserting the new maximum value (downward closure),
# so only occurrences through the inserted maximum need to be re-checked.

def _split_at_max(pattern: tuple) -> tuple:
    """(constraint table of pattern minus its maximum, index of the maximum)."""
    m = pattern.index(len(pattern))
    reduced = pattern[:m] + pattern[m + 1:]
    return _constraints(reduced), m


def _creates_pattern(parent: tuple, i: int, cons: tuple, boundary: int) -> bool:
    """Would inserting a new maximum at slot i of parent complete an
    occurrence whose non-maximal part is described by cons?  Pattern
    elements before the boundary must embed left of the slot, the rest at
    or right of it."""
    k = len(cons)

    def search(t: int, start: int, chosen: list) -> bool:
        if t == k:
            return True
        lo = start if t != boundary else max(start, i)
        hi = i if t < boundary else len(parent)
        for j in range(lo, hi):
            x = parent[j]
            if all((chosen[s] < x) == asc for s, asc in cons[t]):
                chosen.append(x)
                if search(t + 1, j + 1, chosen):
                    return True
                chosen.pop()
        return False

    return search(0, 0, [])


def _children(parent: tuple, reduced_basis: list) -> Iterator[tuple]:
    """All avoiders obtained from parent by inserting the new maximum."""
    n = len(parent) + 1
    for i in range(n):
        ok = True
        for cons, boundary in reduced_basis:
            if _creates_pattern(parent, i, cons, boundary):
                ok = False
                break
        if ok:
            yield parent[:i] + (n,) + parent[i:]


def _reduced_basis(b: Basis) -> list:
    return [_split_at_max(p.values) for p in b]


def class_levels(b: Basis, max_n: int) -> Iterator[list]:
    """Yield the avoiders of each length 1..max_n as lists of value tuples,
    built by extending the previous level."""
    reduced = _reduced_basis(b)
    level = [(1,)]
    if any(len(p) == 1 for p in b):
        level = []
    yield level
    for _ in range(1, max_n):
        level = [child for parent in level for child in _children(parent, reduced)]
        yield level


def enumerate_class(b: Basis, n: int, mode: str = "count", cap: int = 1_000_000):
    """Count Av(basis) at length n, or collect the avoiders themselves.

    Collect mode returns the avoiders in lexicographic one-line order and
    raises ResourceLimitError if there are more than cap of them.
    """
    if n < 1:
        raise ValueError("length must be at least 1")
    if mode not in ("count", "collect"):
        raise ValueError(f"unknown mode {mode!r}")
    last = []
    for level in class_levels(b, n):
        last = level
        if mode == "collect" and len(last) > cap:
            raise ResourceLimitError(f"class has more than {cap} members at some length <= {n}")
    if mode == "count":
        return len(last)
    return [Permutation(t) for t in sorted(last)]
