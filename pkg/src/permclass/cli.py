"""Command-line driver tying the enumeration machinery together.

Subcommands: count, series, decompose, verify, growth, oeis.  Exit codes
follow the usual convention: 0 success, 1 verification or comparison
failure, 2 usage error.  ``permclass verify --suite all`` is the
canonical entry point that exercises every module invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import permutations as all_permutations

from . import class_e, class_f, hasse, oeis, oracle
from .perms import (
    CLASS_BASES,
    Permutation,
    ResourceLimitError,
    avoids_all,
    basis,
    class_levels,
    contains,
    enumerate_class,
    left_to_right_minima,
    perm,
)
from .series import (
    DEFAULT_ORDER,
    MultiSeries,
    catalytic_eval,
    divided_difference,
    fixed_point_solve,
    newton_algebraic,
    rational_series,
    slice_quotient,
    sqrt_series,
    variable,
)


@dataclass
class Config:
    order: int = DEFAULT_ORDER
    count_limit: int = oracle.DEFAULT_COUNT_LIMIT
    histogram_limit: int = oracle.DEFAULT_HISTOGRAM_LIMIT
    offline: bool = True
    output: str = "text"

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be at least 1")
        if self.count_limit < 1 or self.histogram_limit < 1:
            raise ValueError("resource limits must be positive")


def _emit(doc: dict, text: str, config: Config) -> None:
    if config.output == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_count(args, config: Config) -> int:
    n = args.n
    if args.method == "brute":
        value = oracle.brute_count(CLASS_BASES[args.cls], n, limit=config.count_limit)
    else:
        order = max(config.order, n)
        if args.cls == "F":
            series = (class_f.solve(order).f_total if args.method == "series"
                      else class_f.closed_form_total(order))
        else:
            series = (class_e.solve(order).e_1 if args.method == "series"
                      else class_e.newton_solution(order))
        value = series.integer_coefficients(n, n)[0]
    _emit({"schema": 1, "class": args.cls, "n": n, "method": args.method, "count": value},
          str(value), config)
    return 0


def _solution(cls: str, order: int):
    return class_f.solve(order) if cls == "F" else class_e.solve(order)


def _cmd_series(args, config: Config) -> int:
    order = args.order or config.order
    sol = _solution(args.cls, order)
    doc = sol.to_json(heads=order)
    text_lines = [f"{args.cls}: " + ", ".join(str(v) for v in sol.sequence(order))]
    if args.bivariate:
        bi = sol.e_u if args.cls == "E" else None
        parts = ({"E": sol.e_u, "P": sol.p_u} if args.cls == "E"
                 else {"A": sol.a_u, "B": sol.b_u, "C": sol.c_u})
        doc["bivariate"] = {k: v.to_json() for k, v in parts.items()}
        for name, series in parts.items():
            text_lines.append(f"-- {name}(z,u) --")
            text_lines.append(str(series))
    if not args.intermediates:
        doc.pop("intermediates", None)
        doc.pop("blocks", None)
    elif args.cls == "F":
        text_lines.append("-- intermediates --")
        for name, series in sorted(sol.intermediates.items()):
            text_lines.append(f"[{name}]")
            text_lines.append(str(series.truncate(min(6, series.order))))
    else:
        text_lines.append("-- blocks --")
        for name, series in sorted(sol.blocks.items()):
            text_lines.append(f"[{name}]")
            text_lines.append(str(series.truncate(min(6, series.order))))
    _emit(doc, "\n".join(text_lines), config)
    return 0


def _cmd_decompose(args, config: Config) -> int:
    p = perm(args.perm)
    doc = hasse.decomposition_json(p, class_name=args.cls)
    text = hasse.render_grid(p)
    if "class_e" in doc:
        ce = doc["class_e"]
        text += f"\nu-trees in bottom subgraph: {ce['statistic']}"
        text += f"\nrightmost bottom u-tree is a path: {ce['rightmost_is_path']}"
    if "class_f" in doc:
        cf = doc["class_f"]
        text += f"\nclass statistic ({cf['label']}): {cf['statistic']}"
    _emit(doc, text, config)
    return 0


def _cmd_growth(args, config: Config) -> int:
    if args.cls == "F":
        report = class_f.growth_report(tolerance=args.tol)
        text = (f"growth rate: {report.rate} (reciprocal of the least singularity "
                f"{report.least_singularity}); singularity candidates: "
                + ", ".join(f"{s:.6f}" for s in report.singularities))
    else:
        report = class_e.growth_rate(tolerance=args.tol)
        text = (f"growth rate: {report.rate:.6f} (greatest real root of the quintic); "
                f"empirical ratio at n={report.empirical_n}: {report.empirical_ratio:.4f}")
    _emit(report.to_json(), text, config)
    return 0


def _cmd_oeis(args, config: Config) -> int:
    record = oeis.oeis_fetch(args.id, args.terms, offline=args.offline or config.offline)
    if args.id == "A165540":
        computed = class_f.sequence(max(len(record), 1))
    elif args.id == "A165539":
        computed = class_e.sequence(max(len(record), 1))
    else:
        computed = []
    report = oeis.compare(record, computed)
    doc = {"schema": 1, "record": record.to_json(), "comparison": report.to_json()}
    _emit(doc, report.render(), config)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# verify suites

def _check_perm_suite(config: Config) -> list:
    checks = []
    pairs_ok = True
    small = [tuple(p) for k in range(1, 5) for p in all_permutations(range(1, k + 1))]
    matrix = {(a, b): contains(a, b) for a in small for b in small}
    for a in small:
        pairs_ok &= matrix[(a, a)]
        for b in small:
            if matrix[(a, b)] and matrix[(b, a)]:
                pairs_ok &= (a == b)
            for c in small:
                if matrix[(a, b)] and matrix[(b, c)]:
                    pairs_ok &= matrix[(a, c)]
    checks.append(("containment is a partial order (n<=4)", pairs_ok, ""))

    ok = True
    detail = ""
    for name, b in CLASS_BASES.items():
        for n in range(1, 7):
            direct = sum(1 for p in all_permutations(range(1, n + 1)) if avoids_all(Permutation(p), b))
            fast = enumerate_class(b, n)
            if direct != fast:
                ok, detail = False, f"{name} n={n}: filter {direct}, extension {fast}"
    checks.append(("extension generation matches full filtering (n<=6)", ok, detail))

    ok = True
    detail = ""
    from .perms import delete_entry
    for name, b in CLASS_BASES.items():
        for level in class_levels(b, 6):
            for vals in level:
                if len(vals) == 1:
                    continue
                for i in range(1, len(vals) + 1):
                    if not avoids_all(delete_entry(vals, i), b):
                        ok, detail = False, f"{name}: deleting entry {i} of {vals}"
    checks.append(("classes are closed downwards (n<=6)", ok, detail))
    return checks


def _check_series_suite(config: Config) -> list:
    checks = []
    z = variable("z", 12)
    u = variable("u", 12)
    s = sqrt_series(1 - 4 * z)
    checks.append(("sqrt(1-4z)^2 = 1-4z", s * s == 1 - 4 * z, ""))
    cat = fixed_point_solve(lambda f: 1 + z * f * f, MultiSeries.zero(12))
    checks.append(("Catalan fixed point", cat.integer_coefficients(0, 5) == [1, 1, 2, 5, 14, 42], ""))
    a_s = rational_series(z, 1 - z * u)
    checks.append(("A_S expansion", a_s.coefficient(3) == {(2,): 1}, ""))
    f = u ** 3
    geo = slice_quotient(f, "u", weighted=False)
    checks.append(("plain slice of u^3", geo.coefficient(0) == {(2,): 1, (1,): 1, (0,): 1}, ""))
    dd = divided_difference(u ** 2, "u", "v")
    checks.append(("divided difference of u^2", dd.coefficient(0) == {(1, 0): 1, (0, 1): 1}, ""))
    lin = newton_algebraic([-(z), 1 - z], MultiSeries.zero(12), 12)
    checks.append(("Newton on a linear equation", lin == rational_series(z, 1 - z), ""))
    return checks


def _check_class_f_suite(config: Config) -> list:
    order = min(config.order, 12)
    sol = class_f.solve(order)
    checks = [("pipeline closed-form postconditions", True, "asserted during solve")]
    expected = [1, 2, 6, 22, 89, 376, 1611, 6901, 29375, 123996, 518971, 2155145][:order]
    checks.append(("sequence head", sol.sequence(order) == expected, ""))
    zero_at_zero = all(
        not catalytic_eval(series, "u", 0).integer_coefficients(1, order)[k]
        for series in (sol.b_u, sol.c_u) for k in range(order)
    )
    checks.append(("B(z,0) = C(z,0) = 0", zero_at_zero, ""))
    part = sol.a_1 + sol.b_1 + sol.c_1 == sol.f_total
    checks.append(("partition identity A+B+C", part, ""))
    checks.append(("growth rate exactly 4", sol.growth.rate == 4, ""))
    return checks


def _check_class_e_suite(config: Config) -> list:
    order = min(config.order, 12)
    sol = class_e.solve(order)
    checks = [("pipeline cubic/Newton postconditions", True, "asserted during solve")]
    expected = [1, 2, 6, 22, 88, 367, 1571, 6861, 30468, 137229, 625573, 2881230][:order]
    checks.append(("sequence head", sol.sequence(order) == expected, ""))
    blocks = sol.blocks
    z = variable("z", order)
    u = variable("u", order)
    u_tree = blocks["U"]
    s_structural = rational_series(z, 1 - u * u_tree)
    checks.append(("S from its structural equation", s_structural == blocks["S"], ""))
    sp_structural = s_structural * rational_series(u * z, 1 - z)
    checks.append(("S_P from its structural equation", sp_structural == blocks["S_P"], ""))
    checks.append(("cubic residual is zero", sol.cubic_residual.is_zero(), ""))
    checks.append(("growth close to 5.1955", abs(sol.growth.rate - 5.1955) < 5e-5, ""))
    return checks


def _check_oracle_suite(config: Config) -> list:
    n_count = min(8, config.count_limit)
    n_hist = min(7, config.histogram_limit)
    f_sol = class_f.solve(max(n_count, 8))
    e_sol = class_e.solve(max(n_count, 8))
    report = oracle.cross_validate(f_sol, e_sol, n_count=n_count, n_bivariate=n_hist,
                                   count_limit=config.count_limit,
                                   histogram_limit=config.histogram_limit)
    return [(c.name, c.ok, c.detail) for c in report.checks]


SUITES = {
    "perm": _check_perm_suite,
    "series": _check_series_suite,
    "class-f": _check_class_f_suite,
    "class-e": _check_class_e_suite,
    "oracle": _check_oracle_suite,
}


def _cmd_verify(args, config: Config) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        for check_name, ok, detail in SUITES[name](config):
            rows.append({"suite": name, "check": check_name, "ok": bool(ok), "detail": detail})
    failures = [r for r in rows if not r["ok"]]
    text = "\n".join(
        f"{'PASS' if r['ok'] else 'FAIL'}  [{r['suite']}] {r['check']}"
        + (f"  ({r['detail']})" if r["detail"] and not r["ok"] else "")
        for r in rows
    )
    text += f"\n{len(rows) - len(failures)}/{len(rows)} checks passed"
    _emit({"schema": 1, "ok": not failures, "checks": rows}, text, config)
    return 1 if failures else 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permclass",
        description="Exact enumeration of Av(1234,2341) and Av(1243,2314)",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--order", type=int, default=DEFAULT_ORDER,
                        help="series truncation order (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="one coefficient, by any method")
    p.add_argument("--class", dest="cls", choices=("F", "E"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("series", "brute", "closed"), default="closed")

    p = sub.add_parser("series", help="coefficient dump for a class")
    p.add_argument("--class", dest="cls", choices=("F", "E"), required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--bivariate", action="store_true")
    p.add_argument("--intermediates", action="store_true")

    p = sub.add_parser("decompose", help="structural decomposition of one permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--class", dest="cls", choices=("F", "E"), default=None)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--count-limit", type=int, default=None)
    p.add_argument("--histogram-limit", type=int, default=None)

    p = sub.add_parser("growth", help="growth-rate report")
    p.add_argument("--class", dest="cls", choices=("F", "E"), required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("oeis", help="compare against an OEIS b-file")
    p.add_argument("--id", required=True)
    p.add_argument("--terms", type=int, default=12)
    p.add_argument("--offline", action="store_true")
    p.add_argument("--remote", dest="offline", action="store_false")
    p.set_defaults(offline=True)

    return parser


COMMANDS = {
    "count": _cmd_count,
    "series": _cmd_series,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "growth": _cmd_growth,
    "oeis": _cmd_oeis,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    config = Config(order=args.order, output=args.format)
    if getattr(args, "count_limit", None):
        config.count_limit = args.count_limit
    if getattr(args, "histogram_limit", None):
        config.histogram_limit = args.histogram_limit
    try:
        return COMMANDS[args.command](args, config)
    except (ResourceLimitError, oeis.OeisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
