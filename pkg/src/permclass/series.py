"""Exact truncated power series in z with polynomial coefficients in
catalytic variables, over arbitrary-precision rationals.

A ``MultiSeries`` stores, for every z-degree up to its truncation order,
a polynomial with ``Fraction`` coefficients in an ordered subset of the
catalytic variables u, v, y.  All arithmetic is exact.  Structural
recursions are solved z-adically (``fixed_point_solve``), algebraic
equations by Newton iteration (``newton_algebraic``, ``sqrt_series``),
and every polynomial division that a structure theorem promises to be
exact is verified at runtime: a nonzero remainder raises instead of
being rounded away.

Floating point appears only in ``real_roots`` at the bottom of the
module, and even there sign decisions on the sample grid are made with
exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

CATALYTIC_VARIABLES = ("u", "v", "y")
DEFAULT_ORDER = 16

Scalar = Union[int, Fraction]
Monomial = tuple  # exponent tuple aligned with a series' variable list
Poly = dict      # Monomial -> Fraction


class SeriesError(ValueError):
    """Base class for algebra failures that indicate a construction bug."""


class RemainderError(SeriesError):
    """A division that must be exact left a nonzero remainder."""


class ValuationError(SeriesError):
    """A series has smaller z-valuation than the operation requires."""


class ConvergenceError(SeriesError):
    """An iteration failed to stabilise within its guaranteed bound."""


class RamificationError(SeriesError):
    """Newton iteration hit a non-invertible derivative."""


class DegreeBoundError(SeriesError):
    """A counting series exceeded the catalytic degree bound."""


# ---------------------------------------------------------------------------
# polynomial helpers (exponent-tuple dictionaries, destination mutated)

def _padd_into(dst: Poly, src: Poly, sign: int = 1) -> None:
    for m, c in src.items():
        s = dst.get(m)
        s = c * sign if s is None else s + c * sign
        if s:
            dst[m] = s
        else:
            dst.pop(m, None)


def _pscale(p: Poly, c: Fraction) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _pshift(p: Poly, idx: int, amount: int) -> Poly:
    """Multiply a polynomial by var**amount, the variable given by index."""
    out: Poly = {}
    for m, c in p.items():
        mm = list(m)
        mm[idx] += amount
        out[tuple(mm)] = c
    return out


def _peval(p: Poly, idx: int, value: Fraction) -> Poly:
    """Substitute a rational value for one variable, keeping the arity."""
    out: Poly = {}
    for m, c in p.items():
        e = m[idx]
        if e:
            c = c * value ** e
            mm = list(m)
            mm[idx] = 0
            m = tuple(mm)
        if not c:
            continue
        s = out.get(m)
        s = c if s is None else s + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pderive(p: Poly, idx: int) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        e = m[idx]
        if not e:
            continue
        mm = list(m)
        mm[idx] = e - 1
        out[tuple(mm)] = c * e
    return out


def _pexact_div(p: Poly, d: Poly, pivot: int) -> Poly:
    """Exact division of p by d, long division in the pivot variable.

    The leading coefficient of d in the pivot variable must be a plain
    rational (no other variables), which holds for every divisor used
    here: 1-u, 1-v, 1-y, v-u and constant multiples thereof.  A nonzero
    remainder raises RemainderError, because in this package exactness
    of such divisions is a theorem, not a hope.
    """
    if not p:
        return {}
    deg = max(m[pivot] for m in d)
    lead = [(m, c) for m, c in d.items() if m[pivot] == deg]
    if len(lead) != 1 or any(e for i, e in enumerate(lead[0][0]) if i != pivot):
        raise SeriesError("divisor must have a scalar leading coefficient in the pivot variable")
    lc = lead[0][1]
    work = dict(p)
    quot: Poly = {}
    while work:
        dm = max(m[pivot] for m in work)
        if dm < deg:
            raise RemainderError(f"nonzero remainder of degree {dm} in pivot variable")
        layer = [(m, c) for m, c in work.items() if m[pivot] == dm]
        for m, c in layer:
            qm = list(m)
            qm[pivot] = dm - deg
            qm = tuple(qm)
            qc = c / lc
            s = quot.get(qm)
            s = qc if s is None else s + qc
            if s:
                quot[qm] = s
            else:
                quot.pop(qm, None)
            for md, cd in d.items():
                mm = tuple(x + y for x, y in zip(qm, md))
                t = work.get(mm)
                t = -qc * cd if t is None else t - qc * cd
                if t:
                    work[mm] = t
                else:
                    work.pop(mm, None)
    return quot


def _extend(p: Poly, old: tuple, new: tuple) -> Poly:
    """Re-index monomials from variable list old to its superset new."""
    if old == new:
        return p
    slots = [new.index(v) for v in old]
    width = len(new)
    out: Poly = {}
    for m, c in p.items():
        mm = [0] * width
        for e, slot in zip(m, slots):
            mm[slot] = e
        out[tuple(mm)] = c
    return out


def _merge_vars(a: tuple, b: tuple) -> tuple:
    return tuple(v for v in CATALYTIC_VARIABLES if v in a or v in b)


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# ---------------------------------------------------------------------------

class MultiSeries:
    """Power series in z, truncated at ``order``, coefficients in Q[u,v,y].

    Instances are immutable values: every operation builds a new series.
    Two series compare equal when their coefficients agree for all
    z-degrees up to the smaller of the two truncation orders.
    """

    __slots__ = ("vars", "order", "coeffs")

    def __init__(self, vars: Iterable[str], order: int, coeffs: Sequence[Mapping]):
        vs = tuple(vars)
        if any(v not in CATALYTIC_VARIABLES for v in vs):
            raise SeriesError(f"unknown catalytic variable in {vs}")
        if vs != tuple(v for v in CATALYTIC_VARIABLES if v in vs):
            raise SeriesError(f"catalytic variables must be listed in canonical order, got {vs}")
        if order < 0:
            raise SeriesError("truncation order must be non-negative")
        if len(coeffs) != order + 1:
            raise SeriesError("coefficient list must cover z^0 .. z^order")
        cleaned = []
        width = len(vs)
        for p in coeffs:
            q: Poly = {}
            for m, c in p.items():
                if len(m) != width:
                    raise SeriesError("monomial arity does not match the variable list")
                c = _as_fraction(c)
                if c:
                    q[tuple(m)] = c
            cleaned.append(q)
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("MultiSeries is immutable")

    @classmethod
    def _raw(cls, vars: tuple, order: int, coeffs: list) -> "MultiSeries":
        self = object.__new__(cls)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int, vars: Iterable[str] = ()) -> "MultiSeries":
        vs = tuple(vars)
        return cls._raw(vs, order, [{} for _ in range(order + 1)])

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "MultiSeries":
        c = _as_fraction(value)
        coeffs = [{} for _ in range(order + 1)]
        if c:
            coeffs[0] = {(): c}
        return cls._raw((), order, coeffs)

    @classmethod
    def variable(cls, name: str, order: int) -> "MultiSeries":
        if name == "z":
            coeffs = [{} for _ in range(order + 1)]
            if order >= 1:
                coeffs[1] = {(): Fraction(1)}
            return cls._raw((), order, coeffs)
        if name not in CATALYTIC_VARIABLES:
            raise SeriesError(f"unknown variable {name!r}")
        coeffs = [{} for _ in range(order + 1)]
        coeffs[0] = {(1,): Fraction(1)}
        return cls._raw((name,), order, coeffs)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Smallest z-degree with a nonzero coefficient, None for zero."""
        for n, p in enumerate(self.coeffs):
            if p:
                return n
        return None

    def coefficient(self, n: int) -> Poly:
        """The z^n coefficient as an exponent-tuple dictionary over vars."""
        if n > self.order:
            raise SeriesError(f"coefficient of z^{n} lies beyond truncation order {self.order}")
        return dict(self.coeffs[n])

    def scalar_coefficient(self, n: int) -> Fraction:
        p = self.coeffs[n] if n <= self.order else None
        if p is None:
            raise SeriesError(f"coefficient of z^{n} lies beyond truncation order {self.order}")
        if not p:
            return Fraction(0)
        if len(p) == 1 and not any(next(iter(p))):
            return next(iter(p.values()))
        raise SeriesError(f"z^{n} coefficient is not constant in the catalytic variables")

    def integer_coefficients(self, first: int = 1, last: int | None = None) -> list[int]:
        last = self.order if last is None else last
        out = []
        for n in range(first, last + 1):
            c = self.scalar_coefficient(n)
            if c.denominator != 1:
                raise SeriesError(f"z^{n} coefficient {c} is not an integer")
            out.append(c.numerator)
        return out

    def variable_profile(self, n: int, var: str) -> dict[int, Fraction]:
        """The z^n coefficient as {exponent of var: coefficient}.

        Requires the coefficient to involve no other catalytic variable.
        """
        p = self.coefficient(n)
        if var in self.vars:
            idx = self.vars.index(var)
        else:
            idx = None
        out: dict[int, Fraction] = {}
        for m, c in p.items():
            if any(e for i, e in enumerate(m) if i != idx):
                raise SeriesError(f"z^{n} coefficient involves variables other than {var}")
            e = m[idx] if idx is not None else 0
            out[e] = out.get(e, Fraction(0)) + c
        return {e: c for e, c in out.items() if c}

    def truncate(self, order: int) -> "MultiSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return MultiSeries._raw(self.vars, order, list(self.coeffs[: order + 1]))

    def with_vars(self, vars: Iterable[str]) -> "MultiSeries":
        """Extend the variable list (a canonical superset) without changing values."""
        new = tuple(vars)
        merged = _merge_vars(self.vars, new)
        if merged != new:
            raise SeriesError("variable list must be a canonical superset")
        coeffs = [_extend(p, self.vars, new) for p in self.coeffs]
        return MultiSeries._raw(new, self.order, coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: "MultiSeries") -> tuple:
        vs = _merge_vars(self.vars, other.vars)
        a = self if self.vars == vs else self.with_vars(vs)
        b = other if other.vars == vs else other.with_vars(vs)
        return vs, a, b

    def _binary(self, other, sign: int) -> "MultiSeries":
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.constant(other, self.order)
        vs, a, b = self._aligned(other)
        order = min(a.order, b.order)
        coeffs = []
        for n in range(order + 1):
            p = dict(a.coeffs[n])
            _padd_into(p, b.coeffs[n], sign)
            coeffs.append(p)
        return MultiSeries._raw(vs, order, coeffs)

    def __add__(self, other):
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1)

    def __rsub__(self, other):
        return (-self)._binary(other, 1)

    def __neg__(self):
        coeffs = [_pscale(p, Fraction(-1)) for p in self.coeffs]
        return MultiSeries._raw(self.vars, self.order, coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return MultiSeries._raw(self.vars, self.order, [_pscale(p, c) for p in self.coeffs])
        vs, a, b = self._aligned(other)
        order = min(a.order, b.order)
        out = [dict() for _ in range(order + 1)]
        for i in range(order + 1):
            pa = a.coeffs[i]
            if not pa:
                continue
            for j in range(order + 1 - i):
                pb = b.coeffs[j]
                if not pb:
                    continue
                _padd_into(out[i + j], _pmul(pa, pb))
        return MultiSeries._raw(vs, order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise SeriesError("series powers must be non-negative integers")
        result = MultiSeries.constant(1, self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.constant(other, self.order)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        vs, a, b = self._aligned(other)
        order = min(a.order, b.order)
        return all(a.coeffs[n] == b.coeffs[n] for n in range(order + 1))

    __hash__ = None

    # -- presentation -------------------------------------------------------

    def _term_name(self, n: int, m: Monomial) -> str:
        parts = []
        if n:
            parts.append("z" if n == 1 else f"z^{n}")
        for v, e in zip(self.vars, m):
            if e:
                parts.append(v if e == 1 else f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        lines = []
        for n, p in enumerate(self.coeffs):
            for m in sorted(p):
                lines.append(f"{self._term_name(n, m)}: {p[m]}")
        return "\n".join(lines) if lines else "0"

    def __repr__(self):
        head = str(self).replace("\n", "; ")
        if len(head) > 60:
            head = head[:57] + "..."
        return f"MultiSeries(order={self.order}, vars={self.vars}, {head})"

    def to_json(self) -> dict:
        terms = {}
        for n, p in enumerate(self.coeffs):
            for m in sorted(p):
                terms[self._term_name(n, m)] = str(p[m])
        return {"order": self.order, "catalytic": list(self.vars), "terms": terms}


# ---------------------------------------------------------------------------
# ring/spec operations

def variable(name: str, order: int = DEFAULT_ORDER) -> MultiSeries:
    return MultiSeries.variable(name, order)


def constant(value: Scalar, order: int = DEFAULT_ORDER) -> MultiSeries:
    return MultiSeries.constant(value, order)


def solve_linear(num: MultiSeries, den: MultiSeries, pivot: str | None = None) -> MultiSeries:
    """The unique series X with den*X = num.

    The z^0 coefficient of den must be invertible: either a nonzero
    rational, or, when ``pivot`` names a catalytic variable, a polynomial
    by which every step of the z-adic recurrence divides exactly.
    """
    vs, a, b = num._aligned(den)
    order = min(a.order, b.order)
    d0 = b.coeffs[0]
    if not d0:
        raise ValuationError("denominator has zero constant term; shift z-valuation first")
    scalar_lead = len(d0) == 1 and not any(next(iter(d0)))
    if not scalar_lead and pivot is None:
        raise SeriesError("denominator constant term is not scalar; a pivot variable is required")
    pivot_idx = vs.index(pivot) if pivot is not None and not scalar_lead else None
    inv0 = Fraction(1) / next(iter(d0.values())) if scalar_lead else None
    out: list[Poly] = []
    for n in range(order + 1):
        acc = dict(a.coeffs[n])
        for k in range(1, n + 1):
            dk = b.coeffs[k]
            if not dk or not out[n - k]:
                continue
            _padd_into(acc, _pmul(dk, out[n - k]), -1)
        if scalar_lead:
            out.append(_pscale(acc, inv0))
        else:
            out.append(_pexact_div(acc, d0, pivot_idx))
    return MultiSeries._raw(vs, order, out)


def rational_series(num: MultiSeries, den: MultiSeries, pivot: str | None = None) -> MultiSeries:
    """Series expansion of num/den.

    If den has positive z-valuation k, num must be divisible by z^k as
    well; both are shifted down and the result's order shrinks by k.
    """
    k = den.valuation()
    if k is None:
        raise ValuationError("division by the zero series")
    if k:
        num = shift_div(num, k)
        den = shift_div(den, k)
    return solve_linear(num, den, pivot)


def shift_div(f: MultiSeries, k: int) -> MultiSeries:
    """Divide by z^k; the truncation order drops by k."""
    if k < 0:
        raise SeriesError("shift must be non-negative")
    if k == 0:
        return f
    if k > f.order:
        raise ValuationError(f"cannot shift by z^{k} at truncation order {f.order}")
    if any(f.coeffs[n] for n in range(k)):
        raise ValuationError(f"series has z-valuation below {k}; an upstream construction is wrong")
    return MultiSeries._raw(f.vars, f.order - k, list(f.coeffs[k:]))


def sqrt_series(f: MultiSeries) -> MultiSeries:
    """The square root with constant term 1, by Newton iteration."""
    c0 = f.coeffs[0]
    if c0 != {(): Fraction(1)}:
        raise SeriesError("sqrt_series requires constant term exactly 1")
    g = MultiSeries.constant(1, f.order)
    half = Fraction(1, 2)
    for _ in range(f.order.bit_length() + 2):
        nxt = (g + solve_linear(f, g)) * half
        if nxt == g:
            return nxt
        g = nxt
    raise ConvergenceError("square root iteration failed to stabilise")


def catalytic_eval(f: MultiSeries, var: str, value: Scalar) -> MultiSeries:
    """Substitute a rational value for a catalytic variable and drop it."""
    if var not in f.vars:
        raise SeriesError(f"series has no catalytic variable {var!r}")
    idx = f.vars.index(var)
    val = _as_fraction(value)
    new_vars = tuple(v for v in f.vars if v != var)
    coeffs = []
    for p in f.coeffs:
        q = _peval(p, idx, val)
        out: Poly = {}
        for m, c in q.items():
            mm = tuple(e for i, e in enumerate(m) if i != idx)
            s = out.get(mm)
            s = c if s is None else s + c
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
        coeffs.append(out)
    return MultiSeries._raw(new_vars, f.order, coeffs)


def catalytic_derivative(f: MultiSeries, var: str) -> MultiSeries:
    """Formal partial derivative with respect to a catalytic variable."""
    if var not in f.vars:
        return MultiSeries.zero(f.order, f.vars)
    idx = f.vars.index(var)
    return MultiSeries._raw(f.vars, f.order, [_pderive(p, idx) for p in f.coeffs])


def substitute_var(f: MultiSeries, old: str, new: str) -> MultiSeries:
    """Substitute one catalytic variable for another (old := new)."""
    if old == new:
        return f
    if old not in f.vars:
        raise SeriesError(f"series has no catalytic variable {old!r}")
    if new not in CATALYTIC_VARIABLES:
        raise SeriesError(f"unknown catalytic variable {new!r}")
    merged = _merge_vars(f.vars, (new,))
    g = f if f.vars == merged else f.with_vars(merged)
    oi, ni = merged.index(old), merged.index(new)
    coeffs = []
    for p in g.coeffs:
        out: Poly = {}
        for m, c in p.items():
            mm = list(m)
            mm[ni] += mm[oi]
            mm[oi] = 0
            mm = tuple(mm)
            s = out.get(mm)
            s = c if s is None else s + c
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
        coeffs.append(out)
    kept = tuple(v for v in merged if v != old)
    stripped = []
    for p in coeffs:
        q: Poly = {}
        for m, c in p.items():
            q[tuple(e for i, e in enumerate(m) if i != oi)] = c
        stripped.append(q)
    return MultiSeries._raw(kept, g.order, stripped)


def _divide_by_linear(num: MultiSeries, var: str, subtrahend_var: str | None = None) -> MultiSeries:
    """Divide each z-coefficient by (1 - var), or by (var - other) when
    subtrahend_var is given.  The division must be exact at every level."""
    vs = _merge_vars(num.vars, (var,) if subtrahend_var is None else (var, subtrahend_var))
    g = num if num.vars == vs else num.with_vars(vs)
    idx = vs.index(var)
    width = len(vs)
    unit = tuple([0] * width)
    if subtrahend_var is None:
        lin = {unit: Fraction(1)}
        m = [0] * width
        m[idx] = 1
        lin[tuple(m)] = Fraction(-1)
    else:
        m = [0] * width
        m[idx] = 1
        lin = {tuple(m): Fraction(1)}
        m2 = [0] * width
        m2[vs.index(subtrahend_var)] = 1
        lin[tuple(m2)] = Fraction(-1)
    coeffs = [_pexact_div(p, lin, idx) if p else {} for p in g.coeffs]
    return MultiSeries._raw(vs, g.order, coeffs)


def slice_quotient(f: MultiSeries, var: str, weighted: bool) -> MultiSeries:
    """The slice operator (f(1) - var*f)/(1 - var), or (f(1) - f)/(1 - var)
    when weighted is False.  Exactness of the division is asserted."""
    vs = _merge_vars(f.vars, (var,))
    g = f if f.vars == vs else f.with_vars(vs)
    at_one = catalytic_eval(g, var, 1)
    if weighted:
        idx = vs.index(var)
        shifted = MultiSeries._raw(vs, g.order, [_pshift(p, idx, 1) for p in g.coeffs])
        num = at_one - shifted
    else:
        num = at_one - g
    return _divide_by_linear(num, var)


def divided_difference(f: MultiSeries, var_a: str, var_b: str) -> MultiSeries:
    """(f - f[var_a := var_b]) / (var_a - var_b), exactly."""
    swapped = substitute_var(f, var_a, var_b)
    num = f - swapped
    return _divide_by_linear(num, var_a, var_b)


def fixed_point_solve(phi: Callable[[MultiSeries], MultiSeries], seed: MultiSeries,
                      order: int | None = None) -> MultiSeries:
    """The unique fixed point of a z-adic contraction, to the seed's order.

    phi must improve agreement by at least one z-degree per application,
    which holds at every use site because each slice operator multiplies
    by a series of positive z-valuation.
    """
    order = seed.order if order is None else order
    f = seed.truncate(order) if seed.order > order else seed
    for _ in range(order + 2):
        nxt = phi(f)
        if nxt.order < order:
            raise SeriesError("contraction map must preserve the truncation order")
        nxt = nxt.truncate(order) if nxt.order > order else nxt
        if nxt == f:
            return nxt
        f = nxt
    raise ConvergenceError(f"no fixed point within {order + 2} iterations; map is not a contraction")


def newton_algebraic(coefficients: Sequence[MultiSeries], seed: MultiSeries,
                     order: int | None = None) -> MultiSeries:
    """Solve P(F) = 0 for a polynomial P with series coefficients.

    coefficients[k] multiplies F**k.  The seed must satisfy P(seed) = 0
    to z-order at least 1 with an invertible P'(seed); the correct branch
    of the algebraic function is selected by the seed.
    """
    order = seed.order if order is None else order
    coeffs = [c.truncate(order) if c.order > order else c for c in coefficients]

    def poly_at(x: MultiSeries) -> MultiSeries:
        acc = MultiSeries.zero(order, x.vars)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def deriv_at(x: MultiSeries) -> MultiSeries:
        acc = MultiSeries.zero(order, x.vars)
        for k in range(len(coeffs) - 1, 0, -1):
            acc = acc * x + coeffs[k] * k
        return acc

    f = seed.truncate(order) if seed.order > order else seed
    residual = poly_at(f)
    if residual.coeffs[0]:
        raise SeriesError("seed does not satisfy the equation at z^0")
    for _ in range(order + 2):
        if residual.is_zero():
            return f
        slope = deriv_at(f)
        d0 = slope.coeffs[0]
        if not d0 or len(d0) != 1 or any(next(iter(d0))):
            raise RamificationError("derivative is not a unit; the branch is ramified")
        f = f - solve_linear(residual, slope)
        residual = poly_at(f)
    raise ConvergenceError("Newton iteration failed to reach a root")


def assert_catalytic_bound(f: MultiSeries, bound: Callable[[int], int] | None = None) -> MultiSeries:
    """Check that every catalytic degree at z^n is at most bound(n).

    Counting series must satisfy this because each marked statistic is at
    most the permutation length; the check turns that combinatorial claim
    into a runtime assertion.  Returns the series for chaining.
    """
    limit = bound if bound is not None else (lambda n: n)
    for n, p in enumerate(f.coeffs):
        cap = limit(n)
        for m in p:
            if any(e > cap for e in m):
                raise DegreeBoundError(f"z^{n} coefficient has catalytic degree above {cap}")
    return f


# ---------------------------------------------------------------------------
# real polynomials and root isolation

@dataclass(frozen=True)
class RealPolynomial:
    """A univariate polynomial with rational coefficients, low degree first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coefficients)
        if not coeffs or not coeffs[-1]:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def real_roots(poly: RealPolynomial | Sequence[Scalar], interval: tuple = (0, 10),
               tolerance: float = 1e-9, grid: int = 256) -> list[float]:
    """All real roots in the interval, found by sign-change bracketing on a
    rational sample grid followed by bisection.  Roots of even multiplicity
    inside a single cell are invisible to this method; the polynomials used
    here have well-separated simple roots."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if not isinstance(poly, RealPolynomial):
        poly = RealPolynomial(tuple(poly))
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if hi <= lo:
        raise ValueError("empty interval")
    step = (hi - lo) / grid
    points = [lo + k * step for k in range(grid + 1)]
    values = [poly(x) for x in points]
    roots: list[float] = []
    for k in range(grid + 1):
        if values[k] == 0:
            roots.append(float(points[k]))
    for k in range(grid):
        a, b = values[k], values[k + 1]
        if a == 0 or b == 0 or (a > 0) == (b > 0):
            continue
        x_lo, x_hi = float(points[k]), float(points[k + 1])
        f_lo = float(a)
        while x_hi - x_lo > tolerance:
            mid = (x_lo + x_hi) / 2.0
            f_mid = poly(mid)
            if f_mid == 0:
                x_lo = x_hi = mid
                break
            if (f_mid > 0) == (f_lo > 0):
                x_lo, f_lo = mid, f_mid
            else:
                x_hi = mid
        roots.append((x_lo + x_hi) / 2.0)
    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 4 * tolerance:
            deduped.append(r)
    return deduped
