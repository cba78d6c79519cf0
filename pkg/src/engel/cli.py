"""Command-line front end: ``engel <subcommand> [options]``.

Big integers cross the boundary as decimal strings.  Exit status is 0 on
success, 1 on a domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, constructions, core, experiments, growth
from .errors import EngelError

FORMATS = ("json", "csv")


class _Table:
    """Adapter giving ad-hoc tabular results the ``emit`` interface."""

    def __init__(self, header, rows, meta=None):
        self.csv_header = header
        self._rows = rows
        self._meta = meta or {}

    def rows(self):
        return self._rows

    def to_dict(self):
        return {**self._meta, "rows": [list(r) for r in self._rows]}


def _json_out(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=experiments._json_default) + "\n"


def _digits_result(digits, finite=None):
    text = json.dumps([str(d) for d in digits]) + "\n"
    table = _Table(("n", "digit"), [(i, str(d)) for i, d in enumerate(digits, 1)],
                   {} if finite is None else {"finite": finite})
    return text, table


def _ratio_arg(args) -> Fraction:
    return Fraction(int(args.num), int(args.den))


def _digits_arg(text: str) -> list[int]:
    return core.digits_from_json(text)


def _sequence(args) -> core.DigitSeq:
    """Resolve the common sequence-source options."""
    chosen = [x is not None for x in (args.digits, args.alpha, args.rational)]
    if sum(chosen) != 1:
        raise _UsageError("give exactly one of --digits, --alpha, --rational")
    if args.digits is not None:
        return core.DigitSeq.known_prefix(_digits_arg(args.digits))
    if args.alpha is not None:
        return constructions.digits_for_lambda(args.alpha)
    return core.expand_rational(core.as_ratio(args.rational))


class _UsageError(Exception):
    pass


# --- subcommand handlers: each returns (json_text, csv_table_or_None) ------------

def cmd_expand(args):
    x = _ratio_arg(args)
    seq = core.expand(x, args.max_n) if args.max_n else core.expand_rational(x)
    return _digits_result(seq.prefix(seq.materialized), seq.finite)


def cmd_reconstruct(args):
    digits = _digits_arg(args.digits)
    x = core.reconstruct(digits, args.n or len(digits))
    return _json_out(core.ratio_to_dict(x)), None


def _cylinder_dict(c: core.CylinderInterval) -> dict:
    return {"digits": [str(d) for d in c.digits], "left": core.ratio_to_dict(c.left),
            "right": core.ratio_to_dict(c.right), "length": core.ratio_to_dict(c.length)}


def cmd_cylinder(args):
    return _json_out(_cylinder_dict(core.cylinder(_digits_arg(args.digits), args.n))), None


def cmd_locate(args):
    return _json_out(_cylinder_dict(core.locate(_ratio_arg(args), args.n))), None


def cmd_admissible(args):
    return _json_out({"admissible": core.is_admissible(_digits_arg(args.digits))}), None


def cmd_construct(args):
    modes = [m for m in ("alpha", "window", "tidy", "perturb", "approx")
             if getattr(args, m)]
    if len(modes) != 1:
        raise _UsageError("give exactly one of --alpha, --window, --tidy, --perturb, --approx")
    mode = modes[0]
    if mode == "alpha":
        return _digits_result(constructions.digits_for_lambda(args.alpha).prefix(args.n))
    if mode == "window":
        phi = growth.from_spec(args.window)
        return _digits_result(constructions.window_member_digits(phi, args.n).prefix(args.n))
    if mode == "tidy":
        phi = growth.from_spec(args.tidy)
        A = args.A if args.A is not None else constructions.exponent_A(phi, args.n + args.tidy_window)
        ts = constructions.tidy_sequence(phi, max(A, 1.0), args.epsilon, args.n, args.tidy_window)
        table = _Table(("j", "logT", "achiever"),
                       [(j, ts.log_T(j), ts.t(j)) for j in range(1, ts.horizon + 1)],
                       {"A": ts.A, "epsilon": ts.epsilon})
        return ts.to_json() + "\n", table
    base = constructions.digits_for_lambda(args.base_alpha)
    if mode == "perturb":
        bits = [int(b) for b in args.perturb if b in "01"]
        seq = constructions.perturbed_digits(base, bits)
        return _digits_result(seq.prefix(args.n))
    # approx
    if args.approx.strip().startswith("["):
        seq = constructions.approximant_rational(_digits_arg(args.approx), base, args.m)
    else:
        y = constructions.digits_for_lambda(args.approx)
        seq = constructions.approximant_irrational(y, base, args.m)
    return _digits_result(seq.prefix(args.n))


def _opts(args) -> dict:
    return {"window_fraction": args.window_fraction, "burn_in": args.burn_in}


def cmd_lambda_hat(args):
    est = analysis.lambda_hat(_sequence(args), args.N, curve=args.curve, **_opts(args))
    d = est.to_dict()
    d["options"] = {"N": args.N, **_opts(args)}
    table = None
    if est.per_n_curve is not None:
        table = _Table(("n", "ratio"), [(int(n), r) for n, r in est.per_n_curve], d)
    return _json_out(d), table


def cmd_d_hat(args):
    v = analysis.d_exponent_hat(_sequence(args), args.N, **_opts(args))
    return _json_out({"value": v, "options": {"N": args.N, **_opts(args)}}), None


def cmd_series(args):
    v = analysis.series_partial(_sequence(args), args.s, args.N)
    return _json_out({"value": v, "s": args.s, "N": args.N}), None


def cmd_dim_level(args):
    fn = analysis.dim_lambda_level if args.kind == "lambda" else analysis.dim_D_level
    return _json_out(fn(args.alpha).to_dict()), None


def cmd_dim_fast(args):
    return _json_out(analysis.dim_fast_growth(growth.from_spec(args.phi), args.N).to_dict()), None


def cmd_dim_window(args):
    return _json_out(analysis.dim_window(growth.from_spec(args.phi), args.N).to_dict()), None


def cmd_dim_phi(args):
    return _json_out(analysis.dim_phi(growth.from_spec(args.phi), args.N).to_dict()), None


def cmd_xi(args):
    phi = growth.from_spec(args.phi)
    return _json_out({"value": analysis.xi_estimate(phi, args.N), "N": args.N}), None


def cmd_count(args):
    if args.brute:
        v = analysis.enumerate_monotone(args.n, args.M)
    else:
        v = analysis.count_monotone(args.n, args.M)
    return _json_out({"value": str(v), "n": args.n, "M": args.M}), None


def cmd_mc_slln(args):
    cfg = experiments.McConfig(args.trials, args.bits, args.seed, tuple(args.n))
    res = experiments.mc_slln(cfg, workers=args.workers)
    return experiments.to_json(res), res


def cmd_cover_beta(args):
    res = experiments.cover_sum_beta(args.beta, args.epsilon, args.start, args.max)
    return experiments.to_json(res), res


def cmd_cover_pq(args):
    res = experiments.cover_sum_pq(args.p, args.q, args.epsilon, args.start, args.max)
    return experiments.to_json(res), res


def cmd_ekj(args):
    res = experiments.ekj_breakdown(args.alpha, args.k)
    return experiments.to_json(res), res


# --- parser -------------------------------------------------------------------

def _add_ratio(p):
    p.add_argument("--num", required=True, help="numerator (decimal)")
    p.add_argument("--den", required=True, help="denominator (decimal)")


def _add_seq(p):
    g = p.add_argument_group("sequence source (exactly one)")
    g.add_argument("--digits", help='JSON array of decimal strings, e.g. \'["2","3"]\'')
    g.add_argument("--alpha", help="use the prescribed-exponent construction")
    g.add_argument("--rational", help="use the expansion of p/q")
    p.add_argument("--N", type=int, required=True, help="prefix length")


def _add_est_opts(p):
    p.add_argument("--window-fraction", type=float, default=0.5)
    p.add_argument("--burn-in", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engel", description="Engel series expansions and growth exponents.")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    def add(name, handler, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(handler=handler)
        # also accept the global flags after the subcommand
        p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
        p.add_argument("--out", default=argparse.SUPPRESS)
        return p

    p = add("expand", cmd_expand, "Engel digits of num/den")
    _add_ratio(p)
    p.add_argument("--max-n", type=int, default=None)

    p = add("reconstruct", cmd_reconstruct, "exact value of a digit prefix")
    p.add_argument("--digits", required=True)
    p.add_argument("--n", type=int, default=None)

    p = add("cylinder", cmd_cylinder, "cylinder interval of an admissible prefix")
    p.add_argument("--digits", required=True)
    p.add_argument("--n", type=int, default=None)

    p = add("locate", cmd_locate, "order-n cylinder containing num/den")
    _add_ratio(p)
    p.add_argument("--n", type=int, required=True)

    p = add("admissible", cmd_admissible, "check the admissibility conditions")
    p.add_argument("--digits", required=True)

    p = add("construct", cmd_construct, "explicit digit-sequence constructions")
    p.add_argument("--alpha", help="prescribed exponent of convergence (number or inf)")
    p.add_argument("--window", help="growth-function JSON t for window-set digits")
    p.add_argument("--tidy", help="growth-function JSON phi for a tidy sequence")
    p.add_argument("--perturb", help="bit string applied at the bump indices of the base")
    p.add_argument("--approx", help="y as a JSON digit array (rational) or an alpha (irrational)")
    p.add_argument("--base-alpha", default="1", help="exponent of the base sequence")
    p.add_argument("--m", type=int, default=1, help="approximant depth")
    p.add_argument("--n", type=int, default=20, help="digits (or horizon J) to output")
    p.add_argument("--A", type=float, default=None, help="tidy: growth constant")
    p.add_argument("--epsilon", type=float, default=1.0, help="tidy: epsilon")
    p.add_argument("--tidy-window", type=int, default=constructions.TIDY_WINDOW)

    p = add("lambda-hat", cmd_lambda_hat, "tail-window estimate of the exponent of convergence")
    _add_seq(p)
    _add_est_opts(p)
    p.add_argument("--curve", action="store_true", help="include the per-n ratio table")

    p = add("d-hat", cmd_d_hat, "tail-window estimate of liminf log d_n / log n")
    _add_seq(p)
    _add_est_opts(p)

    p = add("series", cmd_series, "partial sum of d_n^-s")
    _add_seq(p)
    p.add_argument("--s", type=float, required=True)

    p = add("dim-level", cmd_dim_level, "dimension of lambda- or D-level sets")
    p.add_argument("--kind", choices=("lambda", "D"), required=True)
    p.add_argument("--alpha", required=True)

    for name, handler, help_ in (
            ("dim-fast", cmd_dim_fast, "dimension of {d_n >= phi(n) eventually}"),
            ("dim-window", cmd_dim_window, "dimension of the window set E({t_n})"),
            ("dim-phi", cmd_dim_phi, "dimension 1/A of the liminf log d_n / phi(n) = 1 set"),
            ("xi", cmd_xi, "tail-window estimate of xi for phi")):
        p = add(name, handler, help_)
        p.add_argument("--phi", required=True,
                       help='growth-function JSON, e.g. \'{"rule": "power", "a": 2}\'')
        p.add_argument("--N", type=int, required=True)

    p = add("count", cmd_count, "number of non-decreasing digit strings in [2, M]^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="enumerate instead of the formula")

    p = add("mc-slln", cmd_mc_slln, "Monte-Carlo average of log d_n(x) / n")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--bits", type=int, default=2**14)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, nargs="+", default=[1, 10, 25, 50])
    p.add_argument("--workers", type=int, default=1)

    p = add("cover-beta", cmd_cover_beta, "cover sums for {D(x) <= beta}")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--max", type=int, default=400)

    p = add("cover-pq", cmd_cover_pq, "cover sums for {p <= D(x) <= q}")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--max", type=int, default=400)

    p = add("ekj", cmd_ekj, "band-by-band dimension bounds")
    p.add_argument("--alpha", required=True)
    p.add_argument("--k", type=int, required=True)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, table = args.handler(args)
        if args.format == "csv":
            if table is None:
                raise _UsageError(f"{args.command} has no CSV form; use --format json")
            text = experiments.to_csv(table)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"engel: error: {exc}", file=sys.stderr)
        return 2
    except (EngelError, ValueError, ZeroDivisionError) as exc:
        print(f"engel: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"engel: error: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
