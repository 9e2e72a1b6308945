"""Command line surface for the library.

Subcommands load a polytope from a JSON facet file and emit deterministic
reports: JSON for verification and operator checks, CSV for measures, TSV for
asymptotics tables and heatmap weights.  Exit codes: 0 success, 1 verification
mismatch, 2 invalid input, 3 precondition violation.  Identical invocations
produce byte-identical output files; wall-clock timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import brion, jackson, lattice, measures
from .errors import ConvergenceError, InvalidInputError, PreconditionError


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _exponent_key(u):
    return json.dumps(list(u))


def _coeff_json(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else str(c)
    return int(c)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got %r" % text) from None
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got %d" % value)
    return value


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list") from None


def cmd_validate(args):
    P = lattice.Polytope.from_file(args.polytope)
    report = lattice.validate(P)
    data = report.to_dict()
    data["content_hash"] = P.content_hash()
    data["facet_count"] = P.facet_count
    data["dim"] = P.dim
    _write_text(args.output, _json_text(data))
    return 0


def cmd_verify(args):
    P = lattice.Polytope.from_file(args.polytope)
    report = brion.verify_identity(
        P,
        order=args.order,
        trials=args.trials,
        seed=args.seed,
        finite_form=args.theorem1,
    )
    data = report.to_dict()
    # timing to stderr so output files stay byte-identical across runs
    elapsed = data.pop("elapsed_ms")
    print("elapsed_ms: %.3f" % elapsed, file=sys.stderr)
    _write_text(args.output, _json_text(data))
    return 0 if report.equal else 1


def cmd_rs(args):
    P = lattice.Polytope.from_file(args.polytope)
    lattice.validate(P)
    poly = brion.rs_polynomial(P)
    data = {
        _exponent_key(u): [int(c) for c in poly.terms[u].coeffs]
        for u in sorted(poly.terms)
    }
    _write_text(args.output, _json_text(data))
    return 0


def cmd_lhs(args):
    P = lattice.Polytope.from_file(args.polytope)
    lattice.validate(P)
    series_poly = brion.lhs_series(P, args.order)
    data = {
        _exponent_key(u): [_coeff_json(c) for c in series_poly.terms[u].coeffs]
        for u in sorted(series_poly.terms)
    }
    _write_text(args.output, _json_text(data))
    return 0


def cmd_measure(args):
    P = lattice.Polytope.from_file(args.polytope)
    Q = lattice.dilate(P, args.dilate) if args.dilate != 1 else P
    lattice.validate(Q)
    measure = measures.mu_measure(Q)
    n = Q.dim
    lines = [",".join(["u_%d" % (j + 1) for j in range(n)] + ["weight_num", "weight_den", "weight_float"])]
    for u in measure.support():
        w = measure.atoms[u]
        lines.append(
            ",".join([str(x) for x in u] + [str(w.numerator), str(w.denominator), repr(float(w))])
        )
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_asymptotics(args):
    P = lattice.Polytope.from_file(args.polytope)
    lattice.validate(P)
    ks = args.k
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])) or ks[0] < 1:
        raise InvalidInputError("--k needs an ascending list of positive integers")
    report = measures.convergence_report(P, ks, tol=args.tol)
    model = report["model"]
    lines = []
    lines.append("# minimizer\t%s" % ",".join(repr(x) for x in model.minimizer))
    lines.append(
        "# precision\t%s" % ";".join(",".join(repr(x) for x in row) for row in model.precision)
    )
    lines.append(
        "# covariance\t%s" % ";".join(",".join(repr(x) for x in row) for row in model.covariance)
    )
    lines.append(
        "# support_basis\t%s"
        % ";".join(",".join(str(x) for x in row) for row in model.support_basis)
    )
    lines.append("# active_set\t%s" % ",".join(str(i) for i in model.active_set))
    lines.append("k\tpoints\tmean_scaled\tcov_scaled\tmean_err\tcov_err\tcov_rel_err")
    for row in report["rows"]:
        lines.append(
            "\t".join(
                [
                    str(row["k"]),
                    str(row["points"]),
                    ",".join(repr(x) for x in row["mean_scaled"]),
                    ";".join(",".join(repr(x) for x in r) for r in row["cov_scaled"]),
                    repr(row["mean_err"]),
                    repr(row["cov_err"]),
                    repr(row["cov_rel_err"]),
                ]
            )
        )
    _write_text(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_heatmap(args):
    P = lattice.Polytope.from_file(args.polytope)
    lattice.validate(P)
    if P.dim != 2:
        raise PreconditionError("heatmap needs a 2-dimensional polytope")
    lattice.require_radially_symmetric(P)
    Q = lattice.dilate(P, args.dilate) if args.dilate != 1 else P
    q_tokens = [tok for tok in args.q.split(",") if tok]
    if not q_tokens:
        raise InvalidInputError("--q needs at least one value")
    written = []
    for tok in q_tokens:
        try:
            q = float(tok)
        except ValueError:
            raise InvalidInputError("bad q value %r" % tok) from None
        table = measures.log_weight_table(Q, q)
        path = "%s_q%s.tsv" % (args.output, tok)
        lines = ["\t".join(["u_%d" % (j + 1) for j in range(Q.dim)] + ["weight"])]
        for point, w in table:
            lines.append("\t".join([str(x) for x in point] + [repr(w)]))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        written.append(path)
    for path in written:
        print(path)
    return 0


def cmd_jackson(args):
    P = lattice.Polytope.from_file(args.polytope)
    if args.ladder is not None:
        pair = args.ladder
        if len(pair) != 2:
            raise InvalidInputError("--ladder needs n,k")
        n, k = pair
        if n < 1 or k < 0:
            raise InvalidInputError("--ladder needs n >= 1 and k >= 0")
        report = jackson.verify_ladder(n, k)
        report["failures"] = [list(f) for f in report["failures"]]
        _write_text(args.output, _json_text(report))
        return 0 if report["all_ok"] else 1
    axis = args.axis
    if axis < 1 or axis > P.dim:
        raise InvalidInputError("--axis must lie in 1..%d" % P.dim)
    D = jackson.FirstOrthantDivisor.from_polytope(P)
    result = jackson.verify_derivative_identity(D, axis - 1)
    result["axis"] = axis
    _write_text(args.output, _json_text(result))
    return 0 if result["holds"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qbrion",
        description="q-weighted lattice point enumeration on smooth polytopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural report: smoothness, symmetry, counts")
    p.add_argument("polytope", help="polytope facet JSON file")
    p.add_argument("--output", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", help="randomized exact check of the corner decomposition")
    p.add_argument("polytope")
    p.add_argument("--order", type=_positive_int, default=12, help="truncation order K")
    p.add_argument("--trials", type=_positive_int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--theorem1",
        action="store_true",
        help="also multiply both sides into the finite form and cross-check the "
        "symmetric-weight polynomial (needs normals summing to zero)",
    )
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rs", help="symmetric-weight polynomial as JSON")
    p.add_argument("polytope")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_rs)

    p = sub.add_parser("lhs", help="truncated weight series per lattice point as JSON")
    p.add_argument("polytope")
    p.add_argument("--order", type=_positive_int, default=12)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_lhs)

    p = sub.add_parser("measure", help="multinomial limit measure as CSV")
    p.add_argument("polytope")
    p.add_argument("--dilate", type=_positive_int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("asymptotics", help="Gaussian model and scaled-moment errors as TSV")
    p.add_argument("polytope")
    p.add_argument("--k", type=_int_list, default=[25, 100, 400], help="ascending dilations")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("heatmap", help="normalized q-weight tables, one TSV per q")
    p.add_argument("polytope")
    p.add_argument("--dilate", type=_positive_int, default=1)
    p.add_argument("--q", default="0.2,0.6,0.9", help="comma-separated q values in (0,1)")
    p.add_argument("--output", default="heatmap", help="output base path")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("jackson", help="derivative recursion or ladder identity checks")
    p.add_argument("polytope")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--axis", type=int, help="1-based axis for the derivative identity")
    group.add_argument("--ladder", type=_int_list, help="n,k for the ladder report")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_jackson)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (PreconditionError, ConvergenceError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
