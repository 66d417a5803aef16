"""Command-line surface: every operation behind reproducible subcommands.

Output is a line-delimited stream of JSON records with floats printed to
17 significant digits, written to stdout or --output.  Exit codes:
0 success, 2 usage error, 3 computational error (overflow, caps,
non-convergence).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import nehari, search, symbols
from .bohr_lift import factorize, label
from .errors import ComputationError
from .hankel import (
    DEFAULT_MAX_DIM,
    build_matrix,
    read_matrix_csv,
    write_matrix_csv,
)
from .integrals import norm_grid, norm_mc
from .spectra import schatten_norm, singular_values


def _format_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool) or isinstance(v, np.bool_):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "Infinity" if v > 0 else "-Infinity"
        if math.isnan(v):
            return "NaN"
        return format(v, ".17g")
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    if isinstance(v, dict):
        items = (f"{json.dumps(str(k))}: {_format_value(x)}" for k, x in v.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(v)!r}")


def _emit(records: list[dict], output: str | None) -> None:
    doc = "\n".join(_format_value(r) for r in records) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)


def _parse_complex_list(text: str) -> list[complex]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace("i", "j")
        if not tok:
            continue
        out.append(complex(tok))
    return out


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_p(text: str) -> float:
    v = float(text)
    if math.isnan(v) or v <= 0:
        raise argparse.ArgumentTypeError(f"p must be positive (or inf), got {text}")
    return v


def _add_symbol_flags(sub, prefix: str = "", what: str = "symbol") -> None:
    dash = f"--{prefix}-" if prefix else "--"
    grp = sub.add_argument_group(f"{what} input (choose one)")
    grp.add_argument(f"{dash}file", metavar="PATH", help=f"JSON records for the {what}")
    grp.add_argument(
        f"{dash}linear",
        metavar="C1,C2,...",
        help=f"{what} = C1*z1 + C2*z2 + ... (complex literals, e.g. 0.5,1+2i)",
    )
    grp.add_argument(
        f"{dash}normalized-linear",
        metavar="D",
        type=int,
        help=f"{what} = (z1+...+zD)/sqrt(D)",
    )


def _resolve_symbol(args, parser, prefix: str = "") -> symbols.Symbol:
    pre = f"{prefix}_" if prefix else ""
    file = getattr(args, f"{pre}file")
    lin = getattr(args, f"{pre}linear")
    norm = getattr(args, f"{pre}normalized_linear")
    given = [x for x in (file, lin, norm) if x is not None]
    if len(given) != 1:
        dash = f"--{prefix}-" if prefix else "--"
        parser.error(
            f"specify exactly one of {dash}file, {dash}linear, {dash}normalized-linear"
        )
    if file is not None:
        return symbols.read_symbol(file)
    if lin is not None:
        return symbols.linear(_parse_complex_list(lin))
    return symbols.normalized_linear(norm)


def _resolve_matrix(args, parser):
    if args.matrix_csv is not None:
        if args.file or args.linear or args.normalized_linear is not None:
            parser.error("--matrix-csv excludes the symbol flags")
        return read_matrix_csv(args.matrix_csv)
    phi = _resolve_symbol(args, parser)
    return build_matrix(phi, max_dim=args.max_dim)


def cmd_pzero(args, parser):
    return [{"p0": nehari.p_zero()}]


def cmd_lift(args, parser):
    if (args.n is None) == (args.exponents is None):
        parser.error("specify exactly one of --n, --exponents")
    if args.n is not None:
        return [{"n": args.n, "exponents": list(factorize(args.n))}]
    kappa = _parse_int_list(args.exponents)
    return [{"exponents": kappa, "n": label(kappa)}]


def cmd_matrix(args, parser):
    if not args.output:
        parser.error("matrix export requires --output for the CSV entries")
    phi = _resolve_symbol(args, parser)
    m = build_matrix(phi, max_dim=args.max_dim)
    labels_path = write_matrix_csv(m, args.output, args.labels_output)
    record = {
        "dim": m.dim,
        "symbol_terms": phi.num_terms,
        "entries_file": args.output,
        "labels_file": labels_path,
    }
    sys.stdout.write(_format_value(record) + "\n")
    return None  # document already written


def cmd_svd(args, parser):
    m = _resolve_matrix(args, parser)
    spec = singular_values(m)
    return [
        {
            "dim": len(spec.values),
            "singular_values": list(spec.values),
            "rank": spec.rank,
        }
    ]


def cmd_schatten(args, parser):
    m = _resolve_matrix(args, parser)
    spec = singular_values(m)
    return [{"p": args.p, "schatten": schatten_norm(spec, args.p)}]


def cmd_l1(args, parser):
    f = _resolve_symbol(args, parser)
    if args.method == "grid":
        est = norm_grid(f, args.q, args.tol)
    else:
        est = norm_mc(f, args.q, args.samples, args.seed, threads=args.threads)
    return [
        {
            "q": args.q,
            "method": est.method,
            "value": est.value,
            "stderr": est.stderr,
            "samples_or_nodes": est.samples_or_nodes,
            "seed": est.seed,
        }
    ]


def cmd_ratio(args, parser):
    f = _resolve_symbol(args, parser, "f")
    phi = _resolve_symbol(args, parser, "phi")
    rep = nehari.ratio(
        f,
        phi,
        args.p,
        args.method,
        tol=args.tol,
        samples=args.samples,
        seed=args.seed,
        threads=args.threads,
        max_dim=args.max_dim,
    )
    rec = rep.to_record()
    rec.update({"method": args.method, "seed": args.seed if args.method == "mc" else None})
    if rep.note:
        rec["note"] = rep.note
    return [rec]


def cmd_amplify(args, parser):
    f = _resolve_symbol(args, parser, "f")
    phi = _resolve_symbol(args, parser, "phi")
    big_f, big_phi = nehari.amplify(f, phi, args.m)
    inn = symbols.inner(big_f, big_phi)
    return [
        {
            "m": args.m,
            "shift_step": max(f.width, phi.width),
            "inner_re": inn.real,
            "inner_im": inn.imag,
            "F": symbols.to_records(big_f),
            "Phi": symbols.to_records(big_phi),
        }
    ]


def cmd_scan(args, parser):
    result = nehari.counterexample_scan(
        args.p,
        args.d_max,
        args.method,
        tol=args.tol,
        samples=args.samples,
        seed=args.seed,
        threads=args.threads,
    )
    records = [rep.to_record() for rep in result.reports]
    records.append(
        {
            "p": args.p,
            "d_max": args.d_max,
            "method": args.method,
            "seed": args.seed,
            "minimal_d": result.minimal_d,
        }
    )
    return records


def cmd_maximize(args, parser):
    result = search.maximize_ratio_linear(
        args.d,
        args.p,
        restarts=args.restarts,
        iters=args.iters,
        seed=args.seed,
        grid_tol=args.tol,
    )
    return [
        {
            "d": args.d,
            "p": args.p,
            "restarts": args.restarts,
            "iters": args.iters,
            "seed": args.seed,
            "best_ratio": result.best_ratio,
            "evaluations": result.evaluations,
            "winning_restart": result.restart,
            "a": [{"re": c.real, "im": c.imag} for c in result.a],
            "b": [{"re": c.real, "im": c.imag} for c in result.b],
        }
    ]


def cmd_verify_thm1(args, parser):
    rep = nehari.verify_uniform_linear(
        args.d,
        args.p,
        args.method,
        tol=args.tol,
        samples=args.samples,
        seed=args.seed,
        threads=args.threads,
    )
    rec = rep.to_record()
    rec.update({"method": args.method, "seed": args.seed if args.method == "mc" else None})
    return [rec]


def cmd_verify_thm2(args, parser):
    a = _parse_complex_list(args.a)
    b = _parse_complex_list(args.b)
    rep = nehari.verify_linear_bound(a, b, args.p, tol=args.tol)
    return [rep.to_record()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multhankel",
        description="Multiplicative Hankel forms on the polytorus: "
        "matrices, Schatten norms, polytorus L^q norms, and the Nehari-ratio machinery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(s, *, stochastic=False, quad=False, matrix_cap=False):
        s.add_argument("--output", metavar="PATH", help="write the document here instead of stdout")
        if quad:
            s.add_argument("--tol", type=float, default=1e-6, help="grid quadrature relative tolerance")
        if stochastic:
            s.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo sample count")
            s.add_argument("--seed", type=int, default=0, help="base seed (echoed in output)")
            s.add_argument("--threads", type=int, default=1, help="worker threads; 1 = sequential")
        if matrix_cap:
            s.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="matrix dimension cap")

    s = sub.add_parser("pzero", help="critical exponent")
    common(s)
    s.set_defaults(fn=cmd_pzero)

    s = sub.add_parser("lift", help="integer <-> exponent vector")
    s.add_argument("--n", type=int, help="integer to factorize")
    s.add_argument("--exponents", metavar="E1,E2,...", help="exponent vector to label")
    common(s)
    s.set_defaults(fn=cmd_lift)

    s = sub.add_parser("matrix", help="export the Hankel matrix of a symbol (CSV + labels)")
    _add_symbol_flags(s)
    s.add_argument("--output", metavar="PATH", help="CSV file for the matrix entries (required)")
    s.add_argument("--labels-output", metavar="PATH", help="label file (default: OUTPUT.labels)")
    s.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="matrix dimension cap")
    s.set_defaults(fn=cmd_matrix)

    s = sub.add_parser("svd", help="singular values of a symbol's matrix or an imported CSV")
    _add_symbol_flags(s)
    s.add_argument("--matrix-csv", metavar="PATH", help="import entries from a matrix CSV export")
    common(s, matrix_cap=True)
    s.set_defaults(fn=cmd_svd)

    s = sub.add_parser("schatten", help="Schatten p-norm of a symbol's matrix or an imported CSV")
    _add_symbol_flags(s)
    s.add_argument("--matrix-csv", metavar="PATH")
    s.add_argument("--p", type=_parse_p, required=True, help="exponent in (0, inf]")
    common(s, matrix_cap=True)
    s.set_defaults(fn=cmd_schatten)

    s = sub.add_parser("l1", help="L^q norm of a symbol on the polytorus")
    _add_symbol_flags(s)
    s.add_argument("--q", type=float, default=1.0)
    s.add_argument("--method", choices=("grid", "mc"), default="grid")
    common(s, stochastic=True, quad=True)
    s.set_defaults(fn=cmd_l1)

    s = sub.add_parser("ratio", help="Nehari ratio of a test symbol against a form symbol")
    _add_symbol_flags(s, "f", "test symbol f")
    _add_symbol_flags(s, "phi", "form symbol phi")
    s.add_argument("--p", type=_parse_p, required=True)
    s.add_argument("--method", choices=("grid", "mc"), default="grid")
    common(s, stochastic=True, quad=True, matrix_cap=True)
    s.set_defaults(fn=cmd_ratio)

    s = sub.add_parser("amplify", help="m-fold disjoint-variable amplification of a pair")
    _add_symbol_flags(s, "f", "test symbol f")
    _add_symbol_flags(s, "phi", "form symbol phi")
    s.add_argument("--m", type=int, default=2, help="number of shifted copies")
    common(s)
    s.set_defaults(fn=cmd_amplify)

    s = sub.add_parser("scan", help="smallest width whose guarded ratio exceeds one")
    s.add_argument("--p", type=_parse_p, required=True)
    s.add_argument("--d-max", type=int, required=True)
    s.add_argument("--method", choices=("grid", "mc"), default="mc")
    common(s, stochastic=True, quad=True)
    s.set_defaults(fn=cmd_scan)

    s = sub.add_parser("maximize", help="simplex search for the largest ratio over linear symbols")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--p", type=_parse_p, required=True)
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--iters", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-6, help="grid quadrature tolerance for the objective")
    s.add_argument("--output", metavar="PATH")
    s.set_defaults(fn=cmd_maximize)

    s = sub.add_parser(
        "verify-thm1",
        help="uniform linear symbol: bordered spectrum {1,1,0,...}, Schatten 2^(1/p), ratio",
    )
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--p", type=_parse_p, required=True)
    s.add_argument("--method", choices=("grid", "mc"), default="grid")
    common(s, stochastic=True, quad=True)
    s.set_defaults(fn=cmd_verify_thm1)

    s = sub.add_parser(
        "verify-thm2",
        help="linear pair at p <= p0: check |<f,phi>| <= ||H_phi||_Sp * ||f||_1 term by term",
    )
    s.add_argument("--a", required=True, metavar="C1,C2,...", help="coefficients of phi")
    s.add_argument("--b", required=True, metavar="C1,C2,...", help="coefficients of f")
    s.add_argument("--p", type=_parse_p, required=True)
    common(s, quad=True)
    s.set_defaults(fn=cmd_verify_thm2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records = args.fn(args, parser)
    except ComputationError as exc:
        sys.stderr.write(
            _format_value({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return 3
    except ValueError as exc:  # bad parameter values are usage errors
        sys.stderr.write(f"{parser.prog}: error: {exc}\n")
        return 2
    if records is not None:
        _emit(records, args.output)
    return 0


def entrypoint() -> None:
    sys.exit(main())
