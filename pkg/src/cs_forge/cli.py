"""Command-line entry point: ``cs-forge`` or ``python -m cs_forge``.

Exit codes: 0 success, 1 usage error, 2 a proven inequality failed
numerically, 3 an iterative solver did not converge.
"""

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure, CSForgeError, ParseError, UnknownChecker
from .inequalities import check_generalized, check_tripartite, generalized_lhs, get_checker
from .linalg import trace_norm
from .multilinear import Permutation, matrix_view, product_tensor, realign, twirl
from .report import InequalityReport, format_real
from .search import GAUSSIAN, NONNEG, ScanConfig, emit_figure_data, run_scan
from .sos import sos_lhs, sos_rhs
from .vectors import Tolerance, inner

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_INTERNAL = 0, 1, 2, 3
SEED_ENV = "CS_FORGE_SEED"
MAX_PARTIES = 6


class UsageError(Exception):
    pass


# -- vector text formats ---------------------------------------------------------


def parse_vector(text, rational=False):
    """Parse ``"1,2.5,-3"``; entries become Fractions when ``rational``."""
    tokens = [t.strip() for t in text.split(",")]
    if not tokens or any(not t for t in tokens):
        raise ParseError(f"cannot parse vector {text!r}; expected comma-separated decimals")
    try:
        if rational:
            return [Fraction(t) for t in tokens]
        return np.array([float(t) for t in tokens])
    except ValueError as exc:
        raise ParseError(f"cannot parse vector {text!r}") from exc


def render_vector(v):
    """Inverse of :func:`parse_vector`, exact for floats."""
    return ",".join(format_real(x) for x in v)


def parse_matrix(text):
    """Rows separated by ``;``, entries by ``,``."""
    rows = [parse_vector(r) for r in text.split(";")]
    if len({r.size for r in rows}) != 1:
        raise ParseError(f"matrix rows in {text!r} have different lengths")
    return np.vstack(rows)


def parse_vector_lines(lines, rational=False):
    """Whitespace-separated decimals, one vector per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_vector(",".join(line.split()), rational))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return out


def render_vector_lines(vectors):
    return "".join(" ".join(format_real(x) for x in v) + "\n" for v in vectors)


def read_vector_file(path, rational=False):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_vector_lines(fh, rational)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# -- output ------------------------------------------------------------------------


def _emit_report(report, fmt, extra=None, out=None):
    out = out or sys.stdout
    extra = extra or {}
    if fmt == "text":
        out.write(report.to_text() + "\n")
        for key, value in extra.items():
            out.write(f"{key} {format_real(value)}\n")
    elif fmt == "csv":
        out.write(InequalityReport.csv_header())
        out.write(report.to_csv_row())
    else:
        doc = report.to_dict()
        doc.update(extra)
        out.write(json.dumps(doc) + "\n")


def _emit_record(record, fmt, out=None):
    """Flat key/value record (used for non-inequality outputs)."""
    out = out or sys.stdout
    if fmt == "structured":
        out.write(json.dumps(record) + "\n")
        return

    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return format_real(v)
        return "" if v is None else str(v)

    if fmt == "csv":
        out.write(",".join(record) + "\n")
        out.write(",".join(cell(v) for v in record.values()) + "\n")
    else:
        for key, value in record.items():
            out.write(f"{key} {cell(value)}\n")


# -- input plumbing ----------------------------------------------------------------

VECTOR_FLAGS = ("v", "w", "x", "y")
MATRIX_FLAGS = ("X", "Y", "P")
LIST_FLAGS = ("xs", "ys")


def _inline_given(args, names):
    return [n for n in names if getattr(args, n, None) is not None]


def _require(args, name, flag=None):
    value = getattr(args, name, None)
    if value is None:
        raise UsageError(f"missing --{flag or name}")
    return value


def _tolerance(args):
    return Tolerance(atol=args.atol, rtol=args.rtol)


def _vec(args, name):
    return parse_vector(_require(args, name))


def _vector_list(text):
    return [parse_vector(part) for part in text.split(";")]


def _party_vectors(args):
    return [parse_vector(getattr(args, f"v{j}")) for j in range(1, MAX_PARTIES + 1) if getattr(args, f"v{j}")]


def _file_split(vectors, sizes, what):
    if len(vectors) != sum(sizes):
        raise UsageError(f"{what} expects {sum(sizes)} vectors in the input file, got {len(vectors)}")
    out, start = [], 0
    for s in sizes:
        out.append(vectors[start:start + s])
        start += s
    return out


def _check_inputs(args, name):
    """Keyword arguments for checker ``name`` from inline flags or ``--input``."""
    inline = _inline_given(args, VECTOR_FLAGS + MATRIX_FLAGS + LIST_FLAGS)
    inline += [f"v{j}" for j in range(1, MAX_PARTIES + 1) if getattr(args, f"v{j}", None)]
    file_vectors = None
    if args.input is not None:
        if inline:
            raise UsageError(f"--input cannot be combined with inline --{inline[0]}")
        file_vectors = read_vector_file(args.input)

    def vectors(*names):
        if file_vectors is None:
            return [_vec(args, n) for n in names]
        return [group[0] for group in _file_split(file_vectors, [1] * len(names), name)]

    def matrices(*names):
        if file_vectors is None:
            return [parse_matrix(_require(args, n)) for n in names]
        side = len(file_vectors) // len(names)
        return [np.vstack(g) for g in _file_split(file_vectors, [side] * len(names), name)]

    if name in ("cs-original",):
        v, w = vectors("v", "w")
        return {"v": v, "w": w}
    if name == "conjecture":
        v, w = vectors("v", "w")
        return {"p": float(_require(args, "p")), "v": v, "w": w, "strict": not args.relaxed}
    if name in ("matrix-gen", "eig-gen", "svd-gen"):
        X, Y = matrices("X", "Y")
        return {"X": X, "Y": Y}
    if name == "fx-projection":
        x = float(_require(args, "exponent"))
        if file_vectors is None:
            v, w = vectors("v", "w")
            P = parse_matrix(_require(args, "P"))
        else:
            if len(file_vectors) < 2:
                raise UsageError("fx-projection expects v, w and the rows of P in the input file")
            v, w = file_vectors[0], file_vectors[1]
            P = np.vstack(file_vectors[2:]) if len(file_vectors) > 2 else None
            if P is None:
                raise UsageError("fx-projection expects the rows of P after v and w")
        return {"x": x, "v": v, "w": w, "P": P}
    if name == "fp-diag":
        x = float(_require(args, "exponent"))
        if file_vectors is None:
            xs, ys = _vector_list(_require(args, "xs")), _vector_list(_require(args, "ys"))
        else:
            if len(file_vectors) % 2:
                raise UsageError("fp-diag expects alternating x_j, y_j lines in the input file")
            xs, ys = file_vectors[0::2], file_vectors[1::2]
        return {"x": x, "xs": xs, "ys": ys}
    if name == "equal-tensors":
        x, y = vectors("x", "y")
        return {"p": float(_require(args, "p")), "x": x, "y": y}
    if name == "chain":
        v, w = vectors("v", "w")
        return {"v": v, "w": w, "k": int(_require(args, "k"))}
    if name == "generalized":
        vs = _party_vectors(args) if file_vectors is None else file_vectors
        if not vs:
            raise UsageError("generalized needs --v1 .. --vp or an input file")
        return {"vectors": vs, "sigma": Permutation.parse(_require(args, "sigma"), 2 * len(vs))}
    if name == "tripartite":
        v, w, x = vectors("v", "w", "x")
        return {"v": v, "w": w, "x": x}
    raise UsageError(f"no input mapping for checker {name!r}")


# -- subcommands ---------------------------------------------------------------------


def cmd_check(args):
    checker = get_checker(args.name)
    kwargs = _check_inputs(args, checker.name)
    result = checker.func(**kwargs, tol=_tolerance(args))
    reports = result if isinstance(result, tuple) else (result,)
    for i, report in enumerate(reports):
        if args.format == "csv" and i:
            sys.stdout.write(report.to_csv_row())
        else:
            _emit_report(report, args.format)
    if checker.proven and not all(r.holds for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


def _random_integer_pair(seed, n):
    rng = np.random.default_rng(seed)
    v = [int(a) for a in rng.integers(-10, 11, size=n)]
    w = [int(a) for a in rng.integers(-10, 11, size=n)]
    return v, w


def cmd_sos_verify(args):
    k = args.k
    if args.random:
        if args.v is not None or args.w is not None or args.input is not None:
            raise UsageError("--random cannot be combined with explicit vectors")
        if args.n is None:
            raise UsageError("--random needs --n")
        v, w = _random_integer_pair(args.seed, args.n)
        if not args.exact:
            v, w = np.array(v, dtype=float), np.array(w, dtype=float)
    elif args.input is not None:
        if args.v is not None or args.w is not None:
            raise UsageError("--input cannot be combined with inline --v/--w")
        vs = read_vector_file(args.input, rational=args.exact)
        if len(vs) != 2:
            raise UsageError(f"sos-verify expects 2 vectors in the input file, got {len(vs)}")
        v, w = vs
    else:
        v = parse_vector(_require(args, "v"), rational=args.exact)
        w = parse_vector(_require(args, "w"), rational=args.exact)
    if args.n is not None and (len(v) != args.n or len(w) != args.n):
        raise UsageError(f"--n {args.n} does not match the vector dimensions {len(v)}, {len(w)}")

    lhs = sos_lhs(v, w, k, exact=args.exact)
    rhs = sos_rhs(v, w, k, exact=args.exact)
    difference = lhs - rhs
    if args.exact:
        ok = difference == 0
        shown = {"lhs": str(lhs), "rhs": str(rhs), "difference": str(difference)}
    else:
        scale = max(abs(lhs), abs(rhs), 1.0)
        ok = abs(difference) <= args.atol + args.rtol * scale
        shown = {"lhs": float(lhs), "rhs": float(rhs), "difference": float(difference)}
    record = {"name": "sos-identity", "n": len(v), "k": k, **shown, "exact": args.exact, "holds": bool(ok)}
    _emit_record(record, args.format)
    return EXIT_OK if ok else EXIT_VIOLATION


def _p_range(args, default):
    if args.p is not None:
        lo, sep, hi = args.p.partition("..")
        if not sep:
            raise UsageError(f"--p expects a range like 2..10, got {args.p!r}")
        try:
            return float(lo), float(hi)
        except ValueError:
            raise UsageError(f"cannot parse --p {args.p!r}") from None
    return (default[0] if args.p_min is None else args.p_min, default[1] if args.p_max is None else args.p_max)


def _scan_config(args, default_range):
    grid = None
    if args.p_grid is not None:
        grid = tuple(parse_vector(args.p_grid))
    return ScanConfig(
        seed=args.seed,
        trials=args.trials,
        n=args.n,
        p_range=_p_range(args, default_range),
        p_grid=grid,
        vector_distribution=args.distribution,
    )


def _open_sink(path):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline="\n"), True
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_scan(args):
    cfg = _scan_config(args, (2.0, 10.0))
    result = run_scan(cfg, _tolerance(args))
    sink, close = _open_sink(args.output)
    try:
        if args.format == "csv":
            sink.write("p,diff\n")
            for p, d in zip(result.p, result.diff):
                sink.write(f"{format_real(p)},{format_real(d)}\n")
        else:
            s = result.summary.to_dict()
            s["argmin_v"] = render_vector(s["argmin_v"])
            s["argmin_w"] = render_vector(s["argmin_w"])
            record = {"trials": cfg.trials, "n": cfg.n, "seed": cfg.seed, **s}
            _emit_record(record, args.format, sink)
    finally:
        if close:
            sink.close()
    return EXIT_OK


def cmd_figure(args):
    cfg = _scan_config(args, (0.0, 5.0))
    sink, close = _open_sink(args.output)
    try:
        emit_figure_data(cfg, sink, include_envelope=args.envelope)
    finally:
        if close:
            sink.close()
    return EXIT_OK


def _tensor_vectors(args, parties, with_random=True):
    vs = _party_vectors(args)
    if args.input is not None:
        if vs:
            raise UsageError("--input cannot be combined with inline --v1 .. --v6")
        vs = read_vector_file(args.input)
    if not vs and with_random and args.random:
        if args.n is None or parties is None:
            raise UsageError("--random needs --n and --p")
        rng = np.random.default_rng(args.seed)
        vs = [rng.standard_normal(args.n) for _ in range(parties)]
    if not vs:
        raise UsageError("give vectors with --v1 .. --v6, --input or --random")
    if parties is not None and len(vs) != parties:
        raise UsageError(f"--p {parties} but {len(vs)} vectors were given")
    return vs


def cmd_tensor(args):
    tol = _tolerance(args)
    parties = int(args.p) if args.p is not None else None
    if args.demo == "tripartite":
        if args.input is not None:
            raise UsageError("tensor tripartite takes --v, --w, --x")
        report = check_tripartite(_vec(args, "v"), _vec(args, "w"), _vec(args, "x"), tol)
        extra = {k: report.details[k] for k in ("rank_one", "paired", "diagonal")}
        _emit_report(report, args.format, extra)
        return EXIT_OK if report.holds else EXIT_VIOLATION

    vs = _tensor_vectors(args, parties)
    sigma_text = args.sigma or "identity"
    sigma = Permutation.parse(sigma_text, 2 * len(vs))
    if args.demo == "generalized":
        report = check_generalized(vs, sigma, tol)
        _emit_report(report, args.format)
        return EXIT_OK if report.holds else EXIT_VIOLATION

    X = product_tensor(vs, vs)
    TX = twirl(X)
    if args.demo == "twirl":
        M, TM = matrix_view(X), matrix_view(TX)
        record = {
            "name": "twirl",
            "n": X.n,
            "p": X.p,
            "nonzero_before": int(np.count_nonzero(M)),
            "nonzero_after": int(np.count_nonzero(TM)),
            "trace_before": float(np.trace(M)),
            "trace_after": float(np.trace(TM)),
        }
    else:
        record = {
            "name": "realign",
            "n": X.n,
            "p": X.p,
            "sigma": str(sigma),
            "trace_norm_realigned": trace_norm(matrix_view(realign(X, sigma))),
            "trace_norm_realigned_twirl": generalized_lhs(vs, sigma),
            "norm_product": math.prod(inner(v, v) for v in vs),
        }
    _emit_record(record, args.format)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "structured"), default="text")
    common.add_argument("--atol", type=float, default=1e-12)
    common.add_argument("--rtol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    common.add_argument("--input", metavar="FILE", help="vectors, one per line, whitespace separated")

    parser = argparse.ArgumentParser(prog="cs-forge", description="Check generalized Cauchy-Schwarz inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="run a named checker")
    check.add_argument("name")
    for flag in VECTOR_FLAGS:
        check.add_argument(f"--{flag}", help="comma-separated vector")
    for flag in MATRIX_FLAGS:
        check.add_argument(f"--{flag}", help="matrix rows separated by ';'")
    check.add_argument("--xs", help="vectors separated by ';'")
    check.add_argument("--ys", help="vectors separated by ';'")
    check.add_argument("--p")
    check.add_argument("--k")
    check.add_argument("--exponent", help="the exponent x of f_x")
    check.add_argument("--sigma")
    check.add_argument("--relaxed", action="store_true", help="allow zero entries (conjecture)")
    for j in range(1, MAX_PARTIES + 1):
        check.add_argument(f"--v{j}")
    check.set_defaults(func=cmd_check)

    sos = sub.add_parser("sos-verify", parents=[common], help="verify the sum-of-squares identity")
    sos.add_argument("--n", type=int)
    sos.add_argument("--k", type=int, required=True)
    sos.add_argument("--v")
    sos.add_argument("--w")
    sos.add_argument("--random", action="store_true", help="random integer entries in [-10, 10]")
    sos.add_argument("--exact", action="store_true")
    sos.set_defaults(func=cmd_sos_verify)

    for name, func, help_text in (
        ("scan", cmd_scan, "conjecture scan summary"),
        ("figure", cmd_figure, "p,diff scatter data as CSV"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--trials", type=int, default=10_000)
        sp.add_argument("--p", help="range like 2..10")
        sp.add_argument("--p-min", type=float)
        sp.add_argument("--p-max", type=float)
        sp.add_argument("--p-grid", help="comma-separated fixed exponents, cycled")
        sp.add_argument("--distribution", choices=(NONNEG, GAUSSIAN), default=NONNEG)
        sp.add_argument("--output", metavar="FILE")
        if name == "figure":
            sp.add_argument("--envelope", action="store_true")
        sp.set_defaults(func=func)

    tensor = sub.add_parser("tensor", parents=[common], help="twirl / realignment demos")
    tensor.add_argument("demo", choices=("twirl", "realign", "generalized", "tripartite"))
    tensor.add_argument("--p", help="number of tensor factors")
    tensor.add_argument("--n", type=int)
    tensor.add_argument("--sigma", help="one-line permutation like 1,3,4,2, or 'identity'")
    tensor.add_argument("--random", action="store_true")
    for flag in ("v", "w", "x"):
        tensor.add_argument(f"--{flag}")
    for j in range(1, MAX_PARTIES + 1):
        tensor.add_argument(f"--v{j}")
    tensor.set_defaults(func=cmd_tensor)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage problems; our contract reserves 2 for violations
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except ConvergenceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, UnknownChecker, CSForgeError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
