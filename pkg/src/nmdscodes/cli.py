"""Command-line front end for the code-construction pipeline.

Exit codes: 0 success, 2 hypothesis violation (bad parameters for the
construction), 3 enumeration budget refusal, 4 certification mismatch
(two independent computations disagreed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import budget as _budget
from .code_analysis import (
    certify_two_design,
    lambda_closed_form,
    lambda_dual_closed_form,
    macwilliams_transform,
    min_weight_count_formula,
    min_weight_supports,
    nmds_weight_distribution,
    pin_min_distance,
    weight_distribution_bruteforce,
    zero_sum_witness_positions,
)
from .code_builder import build_code, classify_mds_nmds, make_divisor, nmds_structural_check
from .elliptic_curve import Curve
from .errors import BudgetError, CertificationError, HypothesisError
from .finite_field import quadratic_extension
from .param_search import (
    build_table_row,
    find_curve,
    search_parameters,
    triple_conditions,
    verify_curve,
    _field_for,
)
from .subset_designs import (
    AbelianGroup,
    brute_force_counts,
    count_subsets,
    count_subsets_nonzero,
    design_parameters,
    verify_design,
)

CATALOG_ROWS = ((7, 3), (13, 3), (31, 5), (43, 7), (157, 13), (307, 17),
                (3541, 59), (4423, 67), (5113, 71))


def _parse_ext_poly(text: str, p: int) -> tuple[int, ...]:
    """Extension modulus from 'c0,c1,c2' (constant coefficient first)."""
    try:
        coeffs = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise HypothesisError(f"cannot parse extension polynomial {text!r}") from None
    if len(coeffs) != 3:
        raise HypothesisError(
            f"extension polynomial needs 3 coefficients (constant first), got {text!r}"
        )
    return coeffs


def _parse_group(text: str) -> AbelianGroup:
    try:
        return AbelianGroup.parse(text)
    except ValueError as exc:
        raise HypothesisError(f"bad group spec {text!r}: {exc}") from None


def _curve_context(args: argparse.Namespace):
    """Find-or-verify the curve, then build divisor, points, and code."""
    q, p, k = args.q, args.p, args.k
    triple_conditions(q, p)
    if k % p or not 0 < 2 * k < p * p:
        raise HypothesisError(
            f"k must be divisible by p with 0 < k < p^2/2; got k={k}, p={p}"
        )
    if getattr(args, "b", None) is not None:
        cert = verify_curve(Curve.from_coefficients(_field_for(q), 0, args.b), p)
    else:
        cert = find_curve(q, p, budget=args.budget)
    modulus = None
    ext_text = getattr(args, "ext_poly", None)
    if ext_text is not None:
        modulus = _parse_ext_poly(ext_text, cert.curve.field.p)
    try:
        ext = quadratic_extension(cert.curve.field, modulus)
    except ValueError as exc:
        raise HypothesisError(f"bad extension modulus: {exc}") from None
    divisor = make_divisor(cert.curve, ext, k)
    points = cert.curve.points()
    code = build_code(cert.curve, divisor, points)
    return cert, ext, divisor, points, code


# ----------------------------------------------------------------------
# Handlers.  Each returns the list of output lines.


def _cmd_search_params(args: argparse.Namespace) -> list[str]:
    triples = search_parameters(args.p_max, require_positive_t=not args.all_t)
    if args.json:
        return [json.dumps(t.to_json()) for t in triples]
    lines = [f"{'q':>9} {'p':>5} {'t':>5}  code"]
    for t in triples:
        lines.append(f"{t.q:>9} {t.p:>5} {t.t:>5}  {t.code_parameters()}")
    lines.append(f"{len(triples)} triple(s)")
    return lines


def _cmd_find_curve(args: argparse.Namespace) -> list[str]:
    cert = find_curve(args.q, args.p, budget=args.budget)
    if args.json:
        return [json.dumps(cert.to_json())]
    return [
        f"curve: {cert.curve.encode()}",
        f"group: {cert.group.encode()}",
        f"points: {cert.point_count}",
        f"p-torsion: {'verified' if cert.all_p_torsion else 'NOT verified'}",
    ]


def _cmd_build(args: argparse.Namespace) -> list[str]:
    cert, ext, divisor, points, code = _curve_context(args)
    verdict = classify_mds_nmds(cert.curve, divisor, points)
    dmin = pin_min_distance(
        code, zero_sum_witness_positions(cert.curve, divisor, points)
    )
    if args.json:
        record = {
            "q": args.q,
            "p": args.p,
            "k": args.k,
            "curve": cert.curve.encode(),
            "group": cert.group.encode(),
            "ext_modulus": ",".join(str(c) for c in ext.ext.modulus),
            "xQ": divisor.x_base.encode(),
            "n": code.n,
            "dim": code.k_dim,
            "dmin": dmin,
            "classification": verdict,
            "generator_matrix": code.gen_rows_int(),
        }
        return [json.dumps(record)]
    return [
        f"code: [{code.n},{code.k_dim},{dmin}] over F_{cert.curve.field.order}",
        f"curve: {cert.curve.encode()}",
        f"group: {cert.group.encode()}",
        f"extension modulus (constant first): "
        + ",".join(str(c) for c in ext.ext.modulus),
        f"divisor: k={args.k} at xQ={divisor.x_base.encode()} (trace-zero pair)",
        f"classification: {verdict}",
        "generator matrix:",
        code.text_grid(),
    ]


def _cmd_weights(args: argparse.Namespace) -> list[str]:
    q, p, k = args.q, args.p, args.k
    triple_conditions(q, p)
    if k % p or not 0 < 2 * k < p * p:
        raise HypothesisError(
            f"k must be divisible by p with 0 < k < p^2/2; got k={k}, p={p}"
        )
    n, dim = p * p, 2 * k
    method = args.method
    if method == "auto":
        method = "brute" if q**dim <= _budget.AUTO_SWEEP_MESSAGES else "formula"
    a_min_formula = min_weight_count_formula(p, q, k)
    group = AbelianGroup((p, p))
    a_min_subsets = (q - 1) * count_subsets(group, dim, group.zero())
    if a_min_formula != a_min_subsets:
        raise CertificationError(
            f"A_min formula {a_min_formula} != (q-1) x subset count {a_min_subsets}"
        )
    if method == "brute":
        cert, ext, divisor, points, code = _curve_context(args)
        dist = weight_distribution_bruteforce(code, budget=args.budget)
        dual = macwilliams_transform(dist, q, dim)
        if dist.counts[n - dim] != a_min_formula:
            raise CertificationError(
                f"measured A_min {dist.counts[n - dim]} != formula {a_min_formula}"
            )
    else:
        dist, dual = nmds_weight_distribution(n, dim, q, a_min_formula)
    if args.json:
        record = {
            "q": q,
            "p": p,
            "k": k,
            "n": n,
            "dim": dim,
            "method": method,
            "a_min": a_min_formula,
            "primal": list(dist.counts),
            "dual": list(dual.counts),
        }
        return [json.dumps(record)]
    return [
        f"code: [{n},{dim},{n - dim}] over F_{q}",
        f"method: {method}",
        f"A_min cross-check: formula {a_min_formula} == (q-1) x subset count"
        f" {a_min_subsets}",
        f"primal: {dist.enumerator()}",
        f"dual:   {dual.enumerator()}",
    ]


def _cmd_verify_design(args: argparse.Namespace) -> list[str]:
    cert, ext, divisor, points, code = _curve_context(args)
    q, p, k, t = args.q, args.p, args.k, args.t
    family = min_weight_supports(
        cert.curve, divisor, points=points, budget=args.budget, threads=args.threads
    )
    n = code.n
    if args.dual:
        blocks = tuple(
            tuple(i for i in range(n) if i not in set(b)) for b in family.blocks
        )
        from .subset_designs import DesignInstance

        instance = DesignInstance(v=n, block_size=2 * k, blocks=blocks)
        closed_two = lambda_dual_closed_form(p, k)
    else:
        instance = family.design_instance()
        closed_two = lambda_closed_form(p, k)
    report = verify_design(instance, t, budget=args.budget)
    closed: int | None
    if t == 2:
        closed = closed_two
    elif t < 2:
        params = design_parameters(n, instance.block_size, 2, closed_two)
        lam_t = params.lambdas[t]
        closed = int(lam_t) if lam_t.denominator == 1 else None
    else:
        closed = None
    match = report.is_design and closed is not None and report.lam == closed
    if report.is_design and closed is not None and report.lam != closed:
        raise CertificationError(
            f"measured lambda {report.lam} != closed form {closed}"
        )
    if args.json:
        record = dict(report.to_json())
        record["lambda_closed_form"] = closed
        record["match"] = match
        return [json.dumps(record)]
    label = f"{t}-({report.v},{instance.block_size},{report.lam})" if report.is_design else "not a design"
    return [
        f"block family: {'dual ' if args.dual else ''}minimum-weight supports,"
        f" {len(instance.blocks)} blocks of size {instance.block_size}",
        f"design: {label}",
        f"simple: {'yes' if report.simple else 'no'}",
        f"lambda measured: {report.lam if report.is_design else '-'}",
        f"lambda closed-form: {closed if closed is not None else 'n/a'}",
        f"verdict: {'design, matches closed form' if match else ('design' if report.is_design else 'not a design')}",
    ]


def _cmd_verify_nmds(args: argparse.Namespace) -> list[str]:
    cert, ext, divisor, points, code = _curve_context(args)
    verdict = classify_mds_nmds(cert.curve, divisor, points)
    structural = nmds_structural_check(code, budget=args.budget)
    dmin = pin_min_distance(
        code, zero_sum_witness_positions(cert.curve, divisor, points)
    )
    if verdict == "NMDS" and not structural:
        raise CertificationError(
            "subset-sum classification says NMDS but the column-rank conditions fail"
        )
    if args.json:
        record = {
            "q": args.q,
            "p": args.p,
            "k": args.k,
            "n": code.n,
            "dim": code.k_dim,
            "dmin": dmin,
            "classification": verdict,
            "structural_check": structural,
        }
        return [json.dumps(record)]
    return [
        f"code: [{code.n},{code.k_dim},{dmin}] over F_{cert.curve.field.order}",
        f"classification: {verdict}",
        f"minimum distance: {dmin} (vanishing-codeword witness)",
        f"structural column check: {'pass' if structural else 'fail'}",
    ]


def _cmd_subset_count(args: argparse.Namespace) -> list[str]:
    group = _parse_group(args.group)
    try:
        coords = tuple(int(c) for c in args.x.split(","))
        x = group.element(coords)
    except ValueError as exc:
        raise HypothesisError(f"bad element {args.x!r} for group {args.group}: {exc}") from None
    counter = count_subsets_nonzero if args.nonzero else count_subsets
    value = counter(group, args.k, x)
    lines = [f"count: {value}"]
    record = {
        "group": group.encode(),
        "k": args.k,
        "x": args.x,
        "nonzero": bool(args.nonzero),
        "count": value,
    }
    if args.oracle:
        oracle = brute_force_counts(
            group, args.k, x, exclude_zero=args.nonzero, budget=args.budget
        )
        if oracle != value:
            raise CertificationError(
                f"closed form {value} != enumeration oracle {oracle}"
            )
        lines.append(f"oracle: {oracle} (match)")
        record["oracle"] = oracle
    if args.json:
        return [json.dumps(record)]
    return lines


def _cmd_table3(args: argparse.Namespace) -> list[str]:
    wanted = None
    if args.rows:
        wanted = {int(s) for s in args.rows.split(",")}
    rows = []
    for q, p in CATALOG_ROWS:
        if wanted is not None and q not in wanted:
            continue
        rows.append(build_table_row(q, p, budget=args.budget, threads=args.threads))
    if args.json:
        return [json.dumps(r) for r in rows]
    lines = [
        f"{'q':>5} {'curve':<22} {'group':<7} {'ext':<12} {'xQ':<4}"
        f" {'code':<16} {'lambda':>8}  mode"
    ]
    for r in rows:
        code = f"[{r['n']},{r['dim']},{r['dmin']}]"
        lines.append(
            f"{r['q']:>5} {r['curve']:<22} {r['group']:<7} {r['ext_modulus']:<12}"
            f" {r['xQ']:<4} {code:<16} {r['design']['lambda']:>8}  {r['design']['mode']}"
        )
    return lines


def _cmd_table4(args: argparse.Namespace) -> list[str]:
    triples = search_parameters(args.p_max, require_positive_t=True)
    if args.json:
        return [json.dumps(t.to_json()) for t in triples]
    lines = [f"{'q':>9} {'p':>5} {'t':>5}  code"]
    for t in triples:
        lines.append(f"{t.q:>9} {t.p:>5} {t.t:>5}  {t.code_parameters()}")
    lines.append(f"{len(triples)} triple(s)")
    return lines


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub.add_argument("--output", help="write output to this file instead of stdout")
    sub.add_argument(
        "--budget",
        type=int,
        default=None,
        help="override the enumeration budget for this invocation",
    )
    sub.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker processes for sharded subset enumeration",
    )


def _add_code_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--q", type=int, required=True, help="field size (prime power)")
    sub.add_argument("--p", type=int, required=True, help="odd prime with p^2 points")
    sub.add_argument("--k", type=int, required=True, help="divisor multiplier, p | k")
    sub.add_argument("--b", type=int, default=None, help="use y^2 = x^3 + b directly")
    sub.add_argument(
        "--ext-poly",
        default=None,
        help="quadratic extension modulus as c0,c1,c2 (constant first, monic)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nmdscodes",
        description="Near-MDS elliptic-curve codes of length p^2 and their designs",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("search-params", help="admissible (q, p, t) triples")
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--all-t", action="store_true", help="include t < 1")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_search_params)

    fc = subs.add_parser("find-curve", help="first curve with p^2 rational points")
    fc.add_argument("--q", type=int, required=True)
    fc.add_argument("--p", type=int, required=True)
    _add_common(fc)
    fc.set_defaults(handler=_cmd_find_curve)

    bd = subs.add_parser("build", help="construct the code and print its matrix")
    _add_code_args(bd)
    _add_common(bd)
    bd.set_defaults(handler=_cmd_build)

    wt = subs.add_parser("weights", help="weight distribution of code and dual")
    _add_code_args(wt)
    wt.add_argument(
        "--method",
        choices=("auto", "brute", "formula"),
        default="auto",
        help="brute sweeps all messages; formula uses the distribution recurrences",
    )
    _add_common(wt)
    wt.set_defaults(handler=_cmd_weights)

    vd = subs.add_parser("verify-design", help="certify minimum-weight support designs")
    _add_code_args(vd)
    vd.add_argument("--t", type=int, default=2, help="design strength to verify")
    vd.add_argument(
        "--dual", action="store_true", help="check the complements (dual supports)"
    )
    _add_common(vd)
    vd.set_defaults(handler=_cmd_verify_design)

    vn = subs.add_parser("verify-nmds", help="classify MDS/NMDS and check structure")
    _add_code_args(vn)
    _add_common(vn)
    vn.set_defaults(handler=_cmd_verify_nmds)

    sc = subs.add_parser("subset-count", help="k-subsets of a group summing to x")
    sc.add_argument("--group", required=True, help="e.g. 3x3 or 9")
    sc.add_argument("--k", type=int, required=True)
    sc.add_argument("--x", required=True, help="target element, e.g. 0,0")
    sc.add_argument("--nonzero", action="store_true", help="exclude the zero element")
    sc.add_argument(
        "--oracle", action="store_true", help="cross-check by literal enumeration"
    )
    _add_common(sc)
    sc.set_defaults(handler=_cmd_subset_count)

    t3 = subs.add_parser("table3", help="catalog of concrete constructions")
    t3.add_argument("--rows", default=None, help="comma-separated q values to include")
    _add_common(t3)
    t3.set_defaults(handler=_cmd_table3)

    t4 = subs.add_parser("table4", help="triples with length exceeding q+1")
    t4.add_argument("--p-max", type=int, default=2000)
    _add_common(t4)
    t4.set_defaults(handler=_cmd_table4)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        lines = args.handler(args)
    except HypothesisError as exc:
        print(f"error: hypothesis violated: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error: enumeration budget exceeded: {exc}", file=sys.stderr)
        return 3
    except CertificationError as exc:
        print(f"error: certification mismatch: {exc}", file=sys.stderr)
        return 4
    text = "\n".join(lines) + "\n" if lines else ""
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
