"""Hasse graphs of permutations and their structural anatomy.

The Hasse graph of a permutation is the cover-relation graph of the
dominance order on its point set {(i, value_i)}: one point lies below
another when both its position and its value are smaller.  Minimal
elements are the left-to-right minima, maximal elements the
right-to-left maxima.

Every permutation is spanned by a sequence of source graphs, one per
left-to-right minimum: the k-th source graph consists of its root (the
k-th minimum) together with the points above and to the right of it that
no earlier source graph has claimed.  The bottom subgraph is the graph
induced by the lowest point and everything above and to its right; it
can meet several source graphs, and it is the part of the permutation
that constrains how a further source graph may be attached.

For Av(1234,2341) the decisive feature is the spike: the point playing
the role of the 3 in the positionally leftmost 123.  Permutations in the
class split into three sets,

    A: avoids 123 entirely (source graphs and bottom subgraphs are fans),
    B: contains a 123 but avoids 13524 and 14523,
    C: contains a 13524 or a 14523,

and the catalytic statistic for the generating functions is the fan leaf
count for A, and the number of bottom-subgraph points left of the spike
for B and C.

For Av(1243,2314) every source graph is plane and only its root may fork
up-right, so its non-root points split into u-trees: blocks ending at
the right-to-left maxima of the non-root part, each a lower-right trunk
path carrying pendant leaves, and each a 132- and 231-avoiding pattern.
The catalytic statistic is the number of u-trees in the bottom subgraph,
together with whether the rightmost of them is a bare path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perms import (
    Permutation,
    avoids_all,
    basis,
    contains,
    left_to_right_minima,
    pattern_of,
    perm,
    CLASS_E_BASIS,
    CLASS_F_BASIS,
)

PATTERN_123 = perm(123)
B_EXTRA_PATTERNS = (perm(13524), perm(14523))


class NotInClassError(ValueError):
    """The permutation lies outside the class the operation is defined for."""


@dataclass(frozen=True)
class HasseGraph:
    """Cover relation of the dominance order on a permutation's points.

    Edges are stored as 1-based position pairs (i, j) with i < j; the
    value at j is then necessarily larger than the value at i.
    """

    permutation: Permutation
    edges: frozenset

    @property
    def vertices(self) -> tuple:
        return tuple((i + 1, v) for i, v in enumerate(self.permutation.values))

    def neighbours_above(self, position: int) -> tuple:
        return tuple(sorted(j for i, j in self.edges if i == position))


def build_hasse(p) -> HasseGraph:
    """The Hasse graph: (i, j) is an edge iff point i is dominated by point j
    with no third point between them in both coordinates."""
    pm = perm(p)
    vals = pm.values
    n = len(vals)
    edges = set()
    for a in range(n):
        for b in range(a + 1, n):
            if vals[a] > vals[b]:
                continue
            if any(vals[a] < vals[c] < vals[b] for c in range(a + 1, b)):
                continue
            edges.add((a + 1, b + 1))
    return HasseGraph(pm, frozenset(edges))


@dataclass(frozen=True)
class SourceDecomposition:
    """Source graphs, bottom subgraph, spike and A/B/C label.

    Positions are 1-based.  source_index maps each position to the index
    (0-based) of the source graph owning it; roots lists the roots in
    left-to-right order.  The label is one of "A", "B", "C" for members
    of Av(1234,2341) and "outside" otherwise.
    """

    permutation: Permutation
    roots: tuple
    source_index: tuple
    bottom: tuple
    spike: int | None
    label: str

    @property
    def source_graphs(self) -> tuple:
        groups: list = [[] for _ in self.roots]
        for pos, k in enumerate(self.source_index, start=1):
            groups[k].append(pos)
        return tuple(tuple(g) for g in groups)

    def bottom_source_count(self) -> int:
        return len({self.source_index[p - 1] for p in self.bottom})


def _spike_position(vals: tuple) -> int | None:
    """1-based position of the leftmost point completing a 123, if any.

    Formally the minimal r admitting p < q < r with v_p < v_q < v_r; the
    spike is the point playing the 3 in the positionally first 123.
    """
    best_top = None      # smallest value that closes an ascent so far
    running_min = None
    for r, v in enumerate(vals):
        if best_top is not None and v > best_top:
            return r + 1
        if running_min is not None and v > running_min:
            best_top = v if best_top is None else min(best_top, v)
        running_min = v if running_min is None else min(running_min, v)
    return None


def class_f_label(p) -> str:
    """"A" | "B" | "C" for members of Av(1234,2341), else "outside"."""
    pm = perm(p)
    if not avoids_all(pm, CLASS_F_BASIS):
        return "outside"
    if not contains(PATTERN_123, pm):
        return "A"
    if not any(contains(q, pm) for q in B_EXTRA_PATTERNS):
        return "B"
    return "C"


def source_decomposition(p) -> SourceDecomposition:
    pm = perm(p)
    vals = pm.values
    n = len(vals)
    minima = left_to_right_minima(pm)
    min_positions = [m - 1 for m in minima]
    min_values = [vals[i] for i in min_positions]
    index = [0] * n
    for k, pos in enumerate(min_positions):
        index[pos] = k
    for i, v in enumerate(vals):
        if i in min_positions:
            continue
        # roots have decreasing values; the owner is the first root whose
        # value lies below v (its position is then automatically left of i)
        for k, mv in enumerate(min_values):
            if mv < v:
                index[i] = k
                break
    lowest = vals.index(1)
    bottom = tuple(range(lowest + 1, n + 1))
    return SourceDecomposition(
        permutation=pm,
        roots=minima,
        source_index=tuple(index),
        bottom=bottom,
        spike=_spike_position(vals),
        label=class_f_label(pm),
    )


# ---------------------------------------------------------------------------
# u-trees

@dataclass(frozen=True)
class UTree:
    """One u-tree: a trunk path at the lower right with pendant leaves.

    vertices are 1-based positions in left-to-right order; the last one
    is the tree's root (a right-to-left maximum of its source graph's
    non-root part).  pendants pairs each leaf with the trunk vertex it
    hangs from.
    """

    vertices: tuple
    trunk: tuple
    pendants: tuple

    @property
    def is_path(self) -> bool:
        return not self.pendants

    @property
    def root(self) -> int:
        return self.vertices[-1]


def _split_u_trees(vals: tuple, positions: list) -> list:
    """Split a set of positions (ascending) into u-trees: blocks ending at
    each right-to-left maximum of the induced point set."""
    trees: list = []
    if not positions:
        return trees
    blocks: list = []
    current: list = []
    suffix_max = 0
    boundaries = set()
    running = 0
    for pos in reversed(positions):
        if vals[pos - 1] > running:
            running = vals[pos - 1]
            boundaries.add(pos)
    for pos in positions:
        current.append(pos)
        if pos in boundaries:
            blocks.append(current)
            current = []
    for block in blocks:
        trunk = []
        smallest = None
        for pos in reversed(block):
            v = vals[pos - 1]
            if smallest is None or v < smallest:
                trunk.append(pos)
                smallest = v
        trunk.reverse()
        trunk_set = set(trunk)
        pendants = []
        for pos in block:
            if pos in trunk_set:
                continue
            support = next(t for t in trunk if t > pos and vals[t - 1] > vals[pos - 1])
            pendants.append((pos, support))
        trees.append(UTree(tuple(block), tuple(trunk), tuple(pendants)))
    return trees


@dataclass(frozen=True)
class UTreeDecomposition:
    """u-trees of each source graph plus those of the bottom subgraph."""

    permutation: Permutation
    decomposition: SourceDecomposition
    trees_by_source: tuple
    bottom_trees: tuple
    rightmost_is_path: bool

    def tree_pattern(self, tree: UTree) -> tuple:
        vals = self.permutation.values
        return pattern_of([vals[p - 1] for p in tree.vertices])


def u_tree_decomposition(p) -> UTreeDecomposition:
    pm = perm(p)
    if not avoids_all(pm, CLASS_E_BASIS):
        raise NotInClassError(f"{pm} contains 1243 or 2314; u-trees are only defined inside the class")
    vals = pm.values
    dec = source_decomposition(pm)
    trees_by_source = []
    for k, graph in enumerate(dec.source_graphs):
        root = dec.roots[k]
        non_root = [pos for pos in graph if pos != root]
        trees_by_source.append(tuple(_split_u_trees(vals, non_root)))
    lowest = vals.index(1) + 1
    bottom_non_root = [pos for pos in dec.bottom if pos != lowest]
    bottom_trees = tuple(_split_u_trees(vals, bottom_non_root))
    rightmost_is_path = bool(bottom_trees) and bottom_trees[-1].is_path
    return UTreeDecomposition(
        permutation=pm,
        decomposition=dec,
        trees_by_source=tuple(trees_by_source),
        bottom_trees=bottom_trees,
        rightmost_is_path=rightmost_is_path,
    )


# ---------------------------------------------------------------------------
# catalytic statistics

@dataclass(frozen=True)
class CatalyticStatistics:
    """The statistic a class's bivariate generating function marks with u."""

    class_name: str
    value: int
    label: str | None = None              # class F only
    rightmost_is_path: bool | None = None  # class E only


def class_f_statistic(p) -> CatalyticStatistics:
    """Fan leaf count for A-permutations; bottom-subgraph points left of
    the spike for B- and C-permutations."""
    pm = perm(p)
    dec = source_decomposition(pm)
    if dec.label == "outside":
        raise NotInClassError(f"{pm} is not in Av(1234,2341)")
    if dec.label == "A":
        value = len(dec.bottom) - 1
    else:
        value = sum(1 for pos in dec.bottom if pos < dec.spike)
    return CatalyticStatistics(class_name="F", value=value, label=dec.label)


def class_e_statistic(p) -> CatalyticStatistics:
    """Number of u-trees in the bottom subgraph, and whether the rightmost
    one is a path (membership in the set P)."""
    ut = u_tree_decomposition(p)
    return CatalyticStatistics(
        class_name="E",
        value=len(ut.bottom_trees),
        rightmost_is_path=ut.rightmost_is_path,
    )


def catalytic_statistics(p, class_name: str) -> CatalyticStatistics:
    if class_name == "F":
        return class_f_statistic(p)
    if class_name == "E":
        return class_e_statistic(p)
    raise ValueError(f"unknown class {class_name!r}; expected 'F' or 'E'")


# ---------------------------------------------------------------------------
# reports

def decomposition_json(p, class_name: str | None = None) -> dict:
    """A JSON-ready report of the full structural decomposition."""
    pm = perm(p)
    graph = build_hasse(pm)
    dec = source_decomposition(pm)
    doc = {
        "schema": 1,
        "permutation": list(pm.values),
        "vertices": [[i, v] for i, v in graph.vertices],
        "edges": sorted([list(e) for e in graph.edges]),
        "roots": list(dec.roots),
        "source_index": [k + 1 for k in dec.source_index],
        "bottom": list(dec.bottom),
        "spike": dec.spike,
        "label": dec.label,
    }
    if class_name == "F" or (class_name is None and dec.label != "outside"):
        try:
            stat = class_f_statistic(pm)
            doc["class_f"] = {"label": stat.label, "statistic": stat.value}
        except NotInClassError:
            pass
    if class_name == "E" or class_name is None:
        try:
            ut = u_tree_decomposition(pm)
            doc["class_e"] = {
                "u_trees_by_source": [
                    [list(t.vertices) for t in trees] for trees in ut.trees_by_source
                ],
                "bottom_u_trees": [list(t.vertices) for t in ut.bottom_trees],
                "rightmost_is_path": ut.rightmost_is_path,
                "statistic": len(ut.bottom_trees),
            }
        except NotInClassError:
            if class_name == "E":
                raise
    return doc


def render_grid(p) -> str:
    """Plain-text grid: each point is drawn as the 1-based index of its
    source graph, the spike is starred, roots are parenthesised."""
    pm = perm(p)
    dec = source_decomposition(pm)
    vals = pm.values
    n = len(vals)
    pos_of = {v: i + 1 for i, v in enumerate(vals)}
    width = len(str(n))
    lines = []
    for value in range(n, 0, -1):
        pos = pos_of[value]
        cells = []
        for i in range(1, n + 1):
            if i != pos:
                cells.append("." * 1)
                continue
            mark = str(dec.source_index[i - 1] + 1)
            if i in dec.roots:
                mark = f"({mark})"
            if dec.spike == i:
                mark += "*"
            cells.append(mark)
        lines.append(f"{value:>{width}} | " + " ".join(cells))
    legend = [
        f"roots: {', '.join(str(r) for r in dec.roots)}",
        f"bottom subgraph: positions {dec.bottom[0]}..{dec.bottom[-1]}" if dec.bottom else "",
        f"spike: position {dec.spike}" if dec.spike else "spike: none",
        f"label: {dec.label}",
    ]
    return "\n".join(lines + [l for l in legend if l])
