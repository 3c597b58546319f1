"""Command line surface.

Exit codes: 0 success, 1 input error, 2 resource-budget error, 3 when
``verify`` finds a mismatch.  All numeric output is exact: rationals print
as ``a/b`` in lowest terms (integers without the ``/1``), and the JSON
format carries numerator and denominator as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Optional

from .errors import InputError, ResourceBudgetError
from .groups import build_group
from .heights import (alpha_splitter, beta_element, classify_layer, delta_iter,
                      height_profile, pk_relation_check, verify_wreath_identity)
from .parser import parse_group, parse_space, space_text
from .quadforms import (amenability_failure_report, count_null_square_two_forms,
                        decomposable_form_count)
from .rationals import binom_ext, vp
from .spaces import (em_space, height_cardinality, normal_form, p_adic_loop)


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1
    def error(self, message):
        raise InputError(message)


def _rat_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _emit(args, plain: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(plain)


# -- subcommand handlers -----------------------------------------------------------


def _cmd_card(args) -> int:
    space = parse_space(args.space)
    value = height_cardinality(space, args.prime, args.height)
    _emit(args, str(value), {
        "space": args.space,
        "prime": args.prime,
        "height": args.height,
        "cardinality": _rat_json(value),
    })
    return 0


def _cmd_loop(args) -> int:
    space = parse_space(args.space)
    for _ in range(args.iterations):
        space = p_adic_loop(space, args.prime)
    text = space_text(normal_form(space).to_expr())
    _emit(args, text, {
        "space": args.space,
        "prime": args.prime,
        "iterations": args.iterations,
        "loop": text,
    })
    return 0


def _cmd_profile(args) -> int:
    space = parse_space(args.space)
    prof = height_profile(space, args.prime, args.range)
    plain = "\n".join(f"{n}: {prof[n]}" for n in range(len(prof)))
    _emit(args, plain, {
        "space": args.space,
        "prime": args.prime,
        "values": [_rat_json(v) for v in prof.values],
    })
    return 0


def _cmd_delta(args) -> int:
    try:
        value = Fraction(args.value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {args.value!r}") from exc
    out = delta_iter(value, args.prime, args.iterations)
    _emit(args, str(out), {
        "value": args.value,
        "prime": args.prime,
        "iterations": args.iterations,
        "result": _rat_json(out),
    })
    return 0


def _cmd_beta(args) -> int:
    prof = beta_element(args.prime, args.k).profile(args.prime, args.range)
    classes = [classify_layer(prof, n).value for n in range(len(prof))]
    plain = "\n".join(f"{n}: {prof[n]} ({classes[n]})" for n in range(len(prof)))
    _emit(args, plain, {
        "prime": args.prime,
        "k": args.k,
        "values": [_rat_json(v) for v in prof.values],
        "classes": classes,
    })
    return 0


def _cmd_classify(args) -> int:
    space = parse_space(args.space)
    prof = height_profile(space, args.prime, args.range)
    classes = [classify_layer(prof, n).value for n in range(len(prof))]
    plain = "\n".join(f"{n}: {prof[n]} ({classes[n]})" for n in range(len(prof)))
    _emit(args, plain, {
        "space": args.space,
        "prime": args.prime,
        "values": [_rat_json(v) for v in prof.values],
        "classes": classes,
    })
    return 0


def _cmd_wreath(args) -> int:
    group = build_group(parse_group(args.group))
    report = verify_wreath_identity(group, args.prime, args.height)
    sign = "either" if report.sign is None and report.magnitudes_match else report.sign
    plain = (f"lhs {report.lhs}, rhs {report.rhs}, sign {sign}"
             if report.magnitudes_match
             else f"lhs {report.lhs}, rhs {report.rhs}, MISMATCH")
    _emit(args, plain, {
        "group": args.group,
        "prime": args.prime,
        "height": args.height,
        "lhs": _rat_json(report.lhs),
        "rhs": _rat_json(report.rhs),
        "sign": report.sign,
        "magnitudes_match": report.magnitudes_match,
    })
    return 0


def _cmd_counterexample(args) -> int:
    report = amenability_failure_report(args.prime)
    verdict = "multiplicativity holds" if report.multiplicative else "multiplicativity fails"
    _emit(args, f"lhs {report.lhs}, rhs {report.rhs}, {verdict}", {
        "prime": args.prime,
        "lhs": _rat_json(report.lhs),
        "rhs": _rat_json(report.rhs),
        "multiplicative": report.multiplicative,
    })
    return 0


def _cmd_table(args) -> int:
    p = args.prime
    rows = [[height_cardinality(em_space([p], k), p, n) for k in range(args.kmax + 1)]
            for n in range(args.nmax + 1)]
    if args.format == "json":
        print(json.dumps({
            "prime": p,
            "kmax": args.kmax,
            "nmax": args.nmax,
            "values": [[_rat_json(v) for v in row] for row in rows],
        }))
    else:
        header = "n\\k " + " ".join(f"{k:>8}" for k in range(args.kmax + 1))
        print(header)
        for n, row in enumerate(rows):
            print(f"{n:>3} " + " ".join(f"{str(v):>8}" for v in row))
    return 0


# -- the verification table ----------------------------------------------------------

def _check_em_grid() -> tuple[bool, str]:
    bad = 0
    for p in (2, 3, 5):
        for k in range(5):
            for n in range(6):
                got = height_cardinality(em_space([p], k), p, n, em_fast_path=False)
                if got != Fraction(p) ** binom_ext(n - 1, k):
                    bad += 1
    return bad == 0, f"90 EM values via loop recursion, {bad} mismatches"


def _check_symmetric3() -> tuple[bool, str]:
    value = height_cardinality(parse_space("B(S3)"), 2, 1)
    return value == Fraction(2, 3), f"|B(S3)| at p=2 height 1 is {value}"


def _check_coset_composition() -> tuple[bool, str]:
    s3 = height_cardinality(parse_space("B(S3)"), 2, 1)
    lhs = 3 * s3
    rhs = height_cardinality(parse_space("B(C2)"), 2, 1)
    ok = lhs == 2 and rhs == 1 and lhs != rhs
    return ok, f"3 * {s3} = {lhs} differs from |B(C2)| = {rhs}"


def _check_fiber_formula() -> tuple[bool, str]:
    ok = True
    for p in (3, 5, 7):
        report = amenability_failure_report(p)
        ok &= report.lhs == p ** 3 + p - 1 and not report.multiplicative
    return ok, "fiber value p^3 + p - 1 beats p^3 at p = 3, 5, 7"


def _check_form_kernel() -> tuple[bool, str]:
    r34 = count_null_square_two_forms(3, 4)
    ok = r34.kernel_count == 261 == decomposable_form_count(3, 4)
    for p in (3, 5):
        for n in (1, 2, 3):
            r = count_null_square_two_forms(p, n)
            ok &= r.kernel_count == r.total_forms
    return ok, f"kernel count at (3, 4) is {r34.kernel_count}"


def _check_wreath_grid() -> tuple[bool, str]:
    grid = [("C2", 2), ("C2 x C2", 2), ("S3", 2), ("C3", 3)]
    signs = set()
    ok = True
    d8_rhs = []
    for text, p in grid:
        group = build_group(parse_group(text))
        for n in (1, 2, 3):
            report = verify_wreath_identity(group, p, n)
            ok &= report.magnitudes_match
            if report.sign is not None:
                signs.add(report.sign)
            if text == "C2":
                d8_rhs.append(report.rhs)
    ok &= len(signs) == 1 and d8_rhs == [0, 1, 6]
    return ok, f"uniform sign {sorted(signs)}, D8 row rhs {[str(v) for v in d8_rhs]}"


def _check_splitting() -> tuple[bool, str]:
    ok = True
    for p in (2, 3):
        for k in range(4):
            prof = beta_element(p, k).profile(p, 6)
            ok &= vp(prof[k], p) > 0 or prof[k] == 0
            ok &= all(vp(prof[n], p) == 0 for n in range(k + 1, 7))
            alpha = alpha_splitter(p, k, 6)
            ok &= all(classify_layer(alpha, n).value in ("complete", "zero")
                      for n in range(k + 1))
            ok &= all(classify_layer(alpha, n).value == "divisible"
                      for n in range(k + 1, 7))
    return ok, "beta and alpha layer classes for p = 2, 3 and k <= 3"


def _check_pk_relations() -> tuple[bool, str]:
    ok = all(pk_relation_check(p, n, 6) for p in (2, 3, 5) for n in range(4))
    return ok, "p_(k) = p_(n)^((-1)^(k-n)) for n <= 3, k <= 6"


_VERIFY_TABLE: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("em-grid", _check_em_grid),
    ("symmetric-3", _check_symmetric3),
    ("coset-composition", _check_coset_composition),
    ("cup-square-fiber", _check_fiber_formula),
    ("null-form-kernel", _check_form_kernel),
    ("wreath-identity", _check_wreath_grid),
    ("splitting-elements", _check_splitting),
    ("height-relations", _check_pk_relations),
]


def _cmd_verify(args) -> int:
    failures = 0
    results = []
    for label, check in _VERIFY_TABLE:
        ok, detail = check()
        failures += not ok
        results.append({"check": label, "pass": ok, "detail": detail})
        if args.format != "json":
            print(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    if args.format == "json":
        print(json.dumps({"results": results, "failures": failures}))
    return 3 if failures else 0


# -- wiring ------------------------------------------------------------------------


def build_arg_parser() -> _ArgumentParser:
    top = _ArgumentParser(prog="pifinite",
                          description="exact cardinality calculator for pi-finite spaces")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str):
        cmd = sub.add_parser(name, help=help_text)
        cmd.set_defaults(func=handler)
        cmd.add_argument("--format", choices=("plain", "json"), default="plain")
        return cmd

    cmd = add("card", _cmd_card, "height-n cardinality of a space")
    cmd.add_argument("--space", required=True)
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--height", type=int, required=True)

    cmd = add("loop", _cmd_loop, "p-adic free loop space, in normal form")
    cmd.add_argument("--space", required=True)
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--iterations", type=int, default=1)

    cmd = add("profile", _cmd_profile, "cardinality profile over heights 0..N")
    cmd.add_argument("--space", required=True)
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--range", type=int, required=True)

    cmd = add("delta", _cmd_delta, "iterated p-derivation of a rational")
    cmd.add_argument("value")
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--iterations", type=int, default=1)

    cmd = add("beta", _cmd_beta, "layer-k splitting element profile")
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--k", type=int, required=True)
    cmd.add_argument("--range", type=int, default=6)

    cmd = add("classify", _cmd_classify, "divisible/complete/zero per layer")
    cmd.add_argument("--space", required=True)
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--range", type=int, required=True)

    cmd = add("wreath", _cmd_wreath, "wreath-product identity report for a group")
    cmd.add_argument("group")
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--height", type=int, required=True)

    cmd = add("counterexample", _cmd_counterexample,
              "height-4 multiplicativity failure for the cup-square fiber")
    cmd.add_argument("--prime", type=int, required=True)

    add("verify", _cmd_verify, "re-check the reference number table")

    cmd = add("table", _cmd_table, "grid of EM-space cardinalities")
    cmd.add_argument("--prime", type=int, required=True)
    cmd.add_argument("--kmax", type=int, default=4)
    cmd.add_argument("--nmax", type=int, default=5)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceBudgetError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
