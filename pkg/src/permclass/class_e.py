"""Generating functions for Av(1243,2314), solved exactly as truncated series.

Source graphs in this class are plane, fork only at the root, and split
into u-trees; with u marking the number of u-trees in the bottom
subgraph and P the set of class members whose rightmost bottom u-tree is
a path, the bivariate series satisfy the coupled system

    E(u) = S(u)   + S(u)    * (E(1) - u E(u)) / (1 - u)
                  + S*(u)   * (P(1) -   P(u)) / (1 - u)
    P(u) = S_P(u) + S_P(u)  * (E(1) - u E(u)) / (1 - u)
                  + S_P*(u) * (P(1) -   P(u)) / (1 - u)

built from five rational blocks: U for a single u-tree, S and S_P for
source graphs (arbitrary / path-ended), S* and S_P* for the multiplicity
with which a source graph can be slid left of a path-ended bottom.  The
system is solved z-adically; the univariate solution is then certified
against its cubic minimal polynomial, an exact zero-residual check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .series import (
    DEFAULT_ORDER,
    MultiSeries,
    RealPolynomial,
    assert_catalytic_bound,
    catalytic_eval,
    fixed_point_solve,
    newton_algebraic,
    rational_series,
    real_roots,
    slice_quotient,
    variable,
)


class PipelineError(AssertionError):
    """A hard postcondition of the pipeline failed (construction bug)."""


def building_blocks(order: int = DEFAULT_ORDER) -> dict[str, MultiSeries]:
    """The five rational building blocks, expanded exactly.

    U(z)     = z(1-z)/(1-2z)                     one u-tree
    S(u)     = z(1-2z)/(1-(2+u)z+uz^2)           source graph, u per u-tree
    S_P(u)   = u z^2 (1-2z) / ((1-z)(1-(2+u)z+uz^2))   rightmost u-tree a path
    S*(u)    = u z^2 / (1-(2+u)z+uz^2)           second-method attachments
    S_P*(u)  = u z (1-2z)(1-uz) / ((1-z)(1-(2+u)z+uz^2))  P-preserving ones
    """
    z = variable("z", order)
    u = variable("u", order)
    kernel = 1 - (2 + u) * z + u * z ** 2
    return {
        "U": rational_series(z * (1 - z), 1 - 2 * z),
        "S": rational_series(z * (1 - 2 * z), kernel),
        "S_P": rational_series(u * z ** 2 * (1 - 2 * z), (1 - z) * kernel),
        "S_star": rational_series(u * z ** 2, kernel),
        "S_P_star": rational_series(u * z * (1 - 2 * z) * (1 - u * z), (1 - z) * kernel),
    }


def solve_ep(order: int = DEFAULT_ORDER,
             blocks: dict[str, MultiSeries] | None = None) -> tuple[MultiSeries, MultiSeries]:
    """Simultaneous fixed point of the coupled E/P system."""
    blocks = building_blocks(order) if blocks is None else blocks
    s, s_p = blocks["S"], blocks["S_P"]
    s_star, s_p_star = blocks["S_star"], blocks["S_P_star"]

    def step(pair):
        e, p = pair
        grow_e = slice_quotient(e, "u", weighted=True)
        grow_p = slice_quotient(p, "u", weighted=False)
        return (s + s * grow_e + s_star * grow_p,
                s_p + s_p * grow_e + s_p_star * grow_p)

    e = MultiSeries.zero(order, ("u",))
    p = MultiSeries.zero(order, ("u",))
    for _ in range(order + 2):
        e_next, p_next = step((e, p))
        if e_next == e and p_next == p:
            assert_catalytic_bound(e)
            assert_catalytic_bound(p)
            return e, p
        e, p = e_next, p_next
    raise PipelineError("the E/P system did not reach a fixed point; not a contraction")


# ---------------------------------------------------------------------------
# the cubic minimal polynomial of the univariate generating function

def minimal_polynomial(order: int = DEFAULT_ORDER) -> list[MultiSeries]:
    """Coefficients [c0, c1, c2, c3] of c0 + c1 F + c2 F^2 + c3 F^3 = 0."""
    z = variable("z", order)
    return [
        z - 3 * z ** 2 + 2 * z ** 3,
        -(1 - 5 * z + 8 * z ** 2 - 5 * z ** 3),
        2 * z - 5 * z ** 2 + 4 * z ** 3,
        z ** 3,
    ]


def cubic_residual(f: MultiSeries) -> MultiSeries:
    """Evaluate the minimal polynomial at f; zero iff f is the right branch."""
    coeffs = minimal_polynomial(f.order)
    acc = MultiSeries.zero(f.order, f.vars)
    for c in reversed(coeffs):
        acc = acc * f + c
    return acc


def newton_solution(order: int = DEFAULT_ORDER) -> MultiSeries:
    """Solve the cubic by Newton iteration, seeded with z + 2z^2 to pick
    the enumerative branch (the cubic has two others)."""
    z = variable("z", order)
    seed = z + 2 * z ** 2
    return newton_algebraic(minimal_polynomial(order), seed, order)


# ---------------------------------------------------------------------------
# growth rate

GROWTH_QUINTIC = RealPolynomial((2, -41, 101, -97, 36, -4))


@dataclass(frozen=True)
class GrowthReport:
    rate: float
    tolerance: float
    quintic_roots: tuple
    empirical_ratio: float
    empirical_n: int

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "class": "E",
            "rate": self.rate,
            "tolerance": self.tolerance,
            "quintic_roots": list(self.quintic_roots),
            "empirical_ratio": self.empirical_ratio,
            "empirical_n": self.empirical_n,
        }


def growth_rate(tolerance: float = 1e-9, sequence_terms: list[int] | None = None) -> GrowthReport:
    """Greatest real root of 2 - 41z + 101z^2 - 97z^3 + 36z^4 - 4z^5.

    The reported empirical ratio |E_n| / |E_{n-1}| is a sanity trend only:
    it approaches the rate slowly from below and is never asserted.
    """
    roots = real_roots(GROWTH_QUINTIC, (0, 30), tolerance, grid=512)
    if not roots:
        raise PipelineError("the growth quintic must have a real root")
    if sequence_terms is None:
        sequence_terms = sequence(12)
    ratio = sequence_terms[-1] / sequence_terms[-2]
    return GrowthReport(
        rate=roots[-1],
        tolerance=tolerance,
        quintic_roots=tuple(roots),
        empirical_ratio=ratio,
        empirical_n=len(sequence_terms),
    )


# ---------------------------------------------------------------------------
# assembled solution

@dataclass(frozen=True)
class ClassESolution:
    order: int
    e_u: MultiSeries
    p_u: MultiSeries
    e_1: MultiSeries
    p_1: MultiSeries
    blocks: dict = field(repr=False)
    cubic_residual: MultiSeries = field(repr=False)
    growth: GrowthReport = field(repr=False)

    def sequence(self, last: int | None = None) -> list[int]:
        return self.e_1.integer_coefficients(1, last)

    def to_json(self, heads: int = 12) -> dict:
        heads = min(heads, self.order)
        return {
            "schema": 1,
            "class": "E",
            "order": self.order,
            "sequence": self.sequence(heads),
            "path_bottomed": self.p_1.integer_coefficients(1, heads),
            "blocks": {k: v.to_json() for k, v in sorted(self.blocks.items())},
            "cubic_residual_is_zero": self.cubic_residual.is_zero(),
            "growth": self.growth.to_json(),
        }


def solve(order: int = DEFAULT_ORDER) -> ClassESolution:
    """Solve the coupled system, certify the cubic, and report the growth."""
    blocks = building_blocks(order)
    e_u, p_u = solve_ep(order, blocks)
    e_1 = catalytic_eval(e_u, "u", 1)
    p_1 = catalytic_eval(p_u, "u", 1)
    residual = cubic_residual(e_1)
    if not residual.is_zero():
        raise PipelineError("solved E(1) does not satisfy its cubic minimal polynomial")
    if newton_solution(order) != e_1:
        raise PipelineError("Newton branch of the cubic disagrees with the solved system")
    dominance = e_u - p_u
    for n in range(order + 1):
        for c in dominance.coeffs[n].values():
            if c < 0:
                raise PipelineError(f"P exceeds E at z^{n}; P-permutations are a subset")
    for name, s in (("E", e_u), ("P", p_u)):
        for n in range(order + 1):
            for c in s.coeffs[n].values():
                if c.denominator != 1 or c < 0:
                    raise PipelineError(f"{name}(z,u) has a non-counting coefficient at z^{n}")
    return ClassESolution(
        order=order,
        e_u=e_u, p_u=p_u, e_1=e_1, p_1=p_1,
        blocks=blocks,
        cubic_residual=residual,
        growth=growth_rate(sequence_terms=e_1.integer_coefficients(1, min(order, 12))),
    )


def sequence(order: int = DEFAULT_ORDER) -> list[int]:
    """|Av(1243,2314)_n| for n = 1..order, from the certified cubic branch."""
    return newton_solution(order).integer_coefficients(1, order)
