"""ffnr command line: range, plot, curve, canon, field-info and verify."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import curve, render, verify
from .canonical import canonicalize
from .errors import FFNRError
from .field import FieldSpec, make_field, prime_power
from .linalg import Mat2

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _field(args) -> FieldSpec:
    return make_field(args.p, args.k, args.alpha)


def _matrix(args, F: FieldSpec) -> Mat2:
    if args.matrix is None:
        if args.zeta is None:
            raise UsageError("--matrix (or --zeta) is required")
        return Mat2.of(F, [[1, args.zeta], [0, 0]])
    try:
        rows = json.loads(args.matrix)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--matrix is not valid JSON: {exc}") from exc
    if not (isinstance(rows, list) and len(rows) == 2 and all(isinstance(r, list) and len(r) == 2 for r in rows)):
        raise UsageError("--matrix must be a 2x2 nested list")
    return Mat2.of(F, rows)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _title(F: FieldSpec, A: Mat2) -> str:
    return f"q={F.q} alpha={F.format(F.alpha)} A={render._matrix_json(A)}"


def cmd_range(args) -> int:
    F = _field(args)
    data = render.plot_data(_matrix(args, F))
    fmt = args.format or "json"
    text = {
        "json": render.to_json,
        "csv": render.to_csv,
        "ascii": render.to_ascii,
        "svg": lambda d: render.to_svg(d, _title(F, d.matrix)),
    }[fmt](data)
    _emit(text, args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    if args.format in ("json", "csv"):
        raise UsageError("plot supports --format ascii or svg")
    F = _field(args)
    data = render.plot_data(_matrix(args, F))
    if (args.format or "ascii") == "svg":
        text = render.to_svg(data, _title(F, data.matrix))
    else:
        text = render.to_ascii(data)
    _emit(text, args.out)
    return EXIT_OK


def cmd_curve(args) -> int:
    F = _field(args)
    A = _matrix(args, F)
    form = curve.base_form(A)
    nonsingular = curve.is_nonsingular(form)
    pts = curve.affine_dual_points(A)
    out = {
        "q": F.q,
        "alpha": F.format(F.alpha),
        "matrix": render._matrix_json(A),
        "base_form": form.to_json()["gram"],
        "nonsingular": nonsingular,
        "count": len(pts),
        "points": [{"re": F.format(z.re), "im": F.format(z.im)} for z in sorted(pts)],
    }
    if nonsingular:
        dual = form.adjugate()
        out["dual_form"] = dual.to_json()["gram"]
        out["conic"] = curve.classify_conic(dual).kind.value
    if args.zeta is not None:
        zeta = F.parse2(args.zeta)
        fam = curve.scaling_family(zeta, F)
        out["scaling_family"] = [
            {"m": F.format(m), "size": len(fam.members[m])} for m in fam.m_values
        ]
    _emit(json.dumps(out, sort_keys=True, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_canon(args) -> int:
    F = _field(args)
    A = _matrix(args, F)
    dec = canonicalize(A)
    _emit(json.dumps(dec.to_json(), sort_keys=True, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_field_info(args) -> int:
    F = _field(args)
    squares = sorted({F.mul(x, x) for x in F.elements()} - {0})
    out = {
        "p": F.p,
        "k": F.k,
        "q": F.q,
        "modulus": list(F.modulus),
        "alpha": F.format(F.alpha),
        "nonzero_squares": len(squares),
        "nonsquares": F.q - 1 - len(squares),
        "squares": [F.format(s) for s in squares],
    }
    _emit(json.dumps(out, sort_keys=True, indent=1) + "\n", args.out)
    return EXIT_OK


def parse_fields(text: str) -> list[int]:
    qs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            q = int(part)
        except ValueError as exc:
            raise UsageError(f"field size {part!r} is not an integer") from exc
        if q % 2 == 0 or prime_power(q) is None:
            raise UsageError(f"q={q} is not an odd prime power")
        qs.append(q)
    return qs


def cmd_verify(args) -> int:
    qs = parse_fields(args.fields)
    report = verify.sweep(qs, classes=args.classes, seed=args.seed, samples=args.samples)
    _emit(report.dumps(), args.out)
    for check_id, s in report.summary().items():
        status = "ok" if not s["failed"] else "FAIL"
        print(f"{status:4} {check_id}: {s['passed']} passed, {s['failed']} failed", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    field_flags = argparse.ArgumentParser(add_help=False)
    field_flags.add_argument("--p", type=int, required=True, help="odd prime")
    field_flags.add_argument("--k", type=int, default=1, help="extension degree, q = p^k")
    field_flags.add_argument("--alpha", help="nonsquare of F_q defining beta^2 = alpha")
    field_flags.add_argument("--out", help="write output to FILE instead of stdout")

    matrix_flags = argparse.ArgumentParser(add_help=False)
    matrix_flags.add_argument("--matrix", help="JSON 2x2 list; entries are ints or strings like \"4+5B\"")
    matrix_flags.add_argument("--zeta", help="element a+b*B; without --matrix selects [[1, zeta], [0, 0]]")

    parser = argparse.ArgumentParser(prog="ffnr", description="Numerical ranges over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("range", parents=[field_flags, matrix_flags], help="W(A) with densities")
    p.add_argument("--format", choices=["json", "csv", "ascii", "svg"])
    p.set_defaults(func=cmd_range)

    p = sub.add_parser(
        "plot", parents=[field_flags, matrix_flags],
        help="grid plot: '.' empty, digit/letter scaling index, '*' no family, 'o' curve, 'E' eigenvalue",
    )
    p.add_argument("--format", choices=["json", "csv", "ascii", "svg"])
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("curve", parents=[field_flags, matrix_flags], help="base form and boundary generating curve")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("canon", parents=[field_flags, matrix_flags], help="canonical class and decomposition")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("field-info", parents=[field_flags], help="field tower summary")
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("verify", help="run the theorem sweep")
    p.add_argument("--fields", default="3,5,7", help="comma-separated odd prime powers")
    p.add_argument("--classes", choices=["all", "sampled"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES, help="random lemma samples per field")
    p.add_argument("--out", help="write the JSON report to FILE")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except FFNRError as exc:
        print(f"ffnr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
