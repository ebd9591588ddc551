"""Command-line front end.

Subcommands:

* ``eval``      evaluate any library function at a point or on a grid
* ``verify``    run identity checks; exit 0 iff everything passes
* ``entropy``   emit an entropy/variance table for an operator family
* ``registry``  export the identity registry table

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage error.  Diagnostics go to standard error; output is deterministic
(two runs with identical arguments are byte-identical).  Floats print
with 17 significant digits, exact rationals as ``p/q`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bspline, entropy, identities, specfun
from .errors import HeunopsError
from .exactalg import Poly


def _fmt_float(v: float) -> str:
    return format(float(v), ".17g")


def _fmt_value(v, exact: bool) -> str:
    if exact:
        return str(v)
    return _fmt_float(v)


def _parse_kv(pairs: list[str]) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for chunk in pairs:
        for item in chunk.split(","):
            if not item:
                continue
            if "=" not in item:
                raise HeunopsError(f"expected key=value, got {item!r}")
            key, _, raw = item.partition("=")
            out[key.strip()] = raw.strip()
    return out


def _frac(params: dict, key: str) -> Fraction:
    if key not in params:
        raise HeunopsError(f"missing parameter {key}=...")
    try:
        return Fraction(params[key])
    except (ValueError, ZeroDivisionError) as exc:
        raise HeunopsError(f"cannot parse {key}={params[key]!r} as a rational") from exc


def _int(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is not None:
            return default
        raise HeunopsError(f"missing parameter {key}=...")
    f = Fraction(params[key])
    if f.denominator != 1:
        raise HeunopsError(f"{key} must be an integer")
    return int(f)


def _parse_grid(spec: str) -> list[Fraction]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise HeunopsError("grid must be a:b:count")
    a, b = Fraction(parts[0]), Fraction(parts[1])
    count = int(parts[2])
    if count < 1 or (count == 1 and a != b):
        raise HeunopsError("grid count must be >= 1 (and a == b when count == 1)")
    if count == 1:
        return [a]
    step = (b - a) / (count - 1)
    return [a + step * i for i in range(count)]


def _parse_sigma(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "const":
        return bspline.ConstantSigma(Fraction(rest))
    if kind == "quad":
        c, _, d = rest.partition(":")
        return bspline.QuadraticSigma(Fraction(c), Fraction(d))
    if kind == "table":
        xs, values = [], []
        with open(rest, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#"):
                    continue
                xs.append(Fraction(row[0]))
                values.append(Fraction(row[1]))
        return bspline.TableSigma(tuple(xs), tuple(values))
    raise HeunopsError(f"unknown sigma spec {spec!r} (use const:c, quad:c:d, table:file.csv)")


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

EVAL_FUNCTIONS = ("hl", "hc", "2f1", "legendre", "F", "G", "U", "J", "K",
                  "bspline", "c_n", "kn_deriv_zero")
_EXACT_CAPABLE = {"hl", "hc", "2f1", "legendre", "F", "U", "bspline", "c_n", "kn_deriv_zero"}


def _eval_one(name: str, params: dict, x, exact: bool):
    """Evaluate one function at one point; returns (value, value_is_exact)."""
    if name == "hl":
        hp = specfun.HeunParams(_frac(params, "a"), _frac(params, "q"),
                                _frac(params, "alpha"), _frac(params, "beta"),
                                _frac(params, "gamma"), _frac(params, "delta"))
        if exact:
            return specfun.heun_poly(hp)(x), True
        return specfun.heun_local(hp, x, tol=1e-15).value, False
    if name == "hc":
        cp = specfun.ConfluentHeunParams(_frac(params, "p"), _frac(params, "gamma"),
                                         _frac(params, "delta"), _frac(params, "alpha"),
                                         _frac(params, "sigma"))
        if exact:
            return specfun.confluent_heun_poly(cp)(x), True
        return specfun.confluent_heun(cp, x, tol=1e-15).value, False
    if name == "2f1":
        a, b, c = _frac(params, "a"), _frac(params, "b"), _frac(params, "c")
        if exact:
            return specfun.hyp2f1_poly(a, b, c)(x), True
        return specfun.hyp2f1(a, b, c, x, tol=1e-15).value, False
    if name == "legendre":
        n = _int(params, "n")
        return (specfun.legendre_p(n, x), True) if exact else (float(specfun.legendre_p(n, float(x))), False)
    if name in ("F", "U"):
        n = _int(params, "n")
        v = specfun.kernel_sum(name, n, x if exact else float(x))
        return v, exact
    if name in ("G", "J"):
        n = _int(params, "n")
        return specfun.kernel_sum(name, n, float(x)), False
    if name == "K":
        n = _int(params, "n")
        j = _int(params, "j", default=0)
        return specfun.szasz_K(n, j, float(x)), False
    if name == "bspline":
        knots = [Fraction(tok) for tok in str(params.get("knots", "")).split(";") if tok]
        if not knots:
            raise HeunopsError("bspline needs knots=k0;k1;...")
        v = bspline.bspline_density(knots)(x if exact else float(x))
        return v, exact
    if name == "c_n":
        v = bspline.c_constant(_int(params, "n"))
        return (v, True) if exact else (float(v), False)
    if name == "kn_deriv_zero":
        v = specfun.kn_deriv_zero(_int(params, "n"), _int(params, "j"))
        return (v, True) if exact else (float(v), False)
    raise HeunopsError(f"unknown function {name!r}")


def _cmd_eval(args) -> int:
    params = _parse_kv(args.params)
    exact = args.exact
    if exact and args.function not in _EXACT_CAPABLE:
        raise HeunopsError(f"--exact is not available for {args.function}")
    needs_x = args.function not in ("c_n", "kn_deriv_zero")
    if args.grid:
        xs = _parse_grid(args.grid)
    elif needs_x:
        xs = [_frac(params, "x")]
    else:
        xs = [None]
    rows = []
    for x in xs:
        value, is_exact = _eval_one(args.function, params, x, exact)
        rows.append((x, value, is_exact))
    if args.json:
        doc = {
            "command": "eval",
            "params": {"function": args.function, **{k: str(v) for k, v in sorted(params.items())},
                       "exact": exact},
            "rows": [
                {**({"x": str(x) if r_exact else _fmt_float(x)} if x is not None else {}),
                 "value": _fmt_value(v, r_exact)}
                for x, v, r_exact in rows
            ],
        }
        print(json.dumps(doc, indent=2))
    elif args.grid:
        print("x,value")
        for x, v, r_exact in rows:
            xs_str = str(x) if r_exact else _fmt_float(x)
            print(f"{xs_str},{_fmt_value(v, r_exact)}")
    else:
        print(_fmt_value(rows[0][1], rows[0][2]))
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    if not args.all and not args.id:
        raise HeunopsError("choose --all or --id IDENTITY")
    if args.all:
        reports = identities.verify_all()
    else:
        entry = identities.REGISTRY[identities._resolve_id(args.id)]
        params = _parse_kv(args.params) if args.params else None
        modes = [args.mode] if args.mode else list(entry.modes)
        if params:
            reports = [identities.verify(args.id, params, m, args.tol) for m in modes]
        else:
            reports = [
                identities.verify(args.id, ps, m, args.tol)
                for m in modes
                for ps in entry.default_params
            ]
    all_pass = all(r.passed for r in reports)
    if args.json:
        doc = {
            "command": "verify",
            "params": {"id": args.id or "all", "mode": args.mode or "default"},
            "rows": [r.to_dict() for r in reports],
            "pass": all_pass,
        }
        print(json.dumps(doc, indent=2))
    else:
        for r in reports:
            ps = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.id.value:<9} {r.mode.kind:<7} {ps:<24} {status}  "
                  f"max_err={_fmt_float(r.max_abs_err)} points={r.points_checked}")
        n_fail = sum(not r.passed for r in reports)
        print(f"{len(reports) - n_fail}/{len(reports)} checks passed")
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------


def _cmd_entropy(args) -> int:
    xs = _parse_grid(args.grid)
    if args.op == "bspline":
        sigma = _parse_sigma(args.sigma or "const:1")
        op = entropy.BSplineOp(args.n, sigma)
    else:
        op = entropy.KantorovichOp(args.n, args.k if args.k is not None else 2)
    points = entropy.entropy_profile(op, xs)
    variance = [p.variance for p in points]
    renyi = [p.renyi for p in points]
    tsallis = [p.tsallis for p in points]
    sync = {
        "variance~renyi": entropy.synchronicity_check(variance, renyi).passed,
        "variance~tsallis": entropy.synchronicity_check(variance, tsallis).passed,
        "renyi~tsallis": entropy.synchronicity_check(renyi, tsallis).passed,
    }
    if args.json:
        doc = {
            "command": "entropy",
            "params": {"op": args.op, "n": args.n, "k": args.k,
                       "sigma": args.sigma, "grid": args.grid},
            "rows": [
                {
                    "x": _fmt_float(p.x),
                    "squared_kernel_integral": _fmt_float(p.squared_kernel_integral),
                    "renyi": _fmt_float(p.renyi),
                    "tsallis": _fmt_float(p.tsallis),
                    "variance": _fmt_float(p.variance),
                }
                for p in points
            ],
            "pass": all(sync.values()),
            "synchronicity": sync,
        }
        print(json.dumps(doc, indent=2))
    else:
        print("x,squared_kernel_integral,renyi,tsallis,variance")
        for p in points:
            print(",".join(_fmt_float(v) for v in
                           (p.x, p.squared_kernel_integral, p.renyi, p.tsallis, p.variance)))
        summary = " ".join(f"{k}={'pass' if v else 'fail'}" for k, v in sync.items())
        print(f"# synchronicity {summary}")
    return 0


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def _cmd_registry(args) -> int:
    rows = identities.registry_table()
    if args.json:
        print(json.dumps({"command": "registry", "rows": rows}, indent=2))
    else:
        for row in rows:
            modes = "/".join(row["modes"])
            print(f"{row['id']:<9} {row['equation']:<12} {modes:<18} "
                  f"{len(row['default_params']):>3} param sets  {row['description']}")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heunops",
                                 description="special functions, operator entropies and "
                                             "machine-checked identities")
    sub = ap.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function")
    p_eval.add_argument("function", choices=EVAL_FUNCTIONS)
    p_eval.add_argument("params", nargs="*", help="key=value parameters (rationals as p/q)")
    p_eval.add_argument("--exact", action="store_true", help="exact rational output")
    p_eval.add_argument("--grid", help="evaluate on grid a:b:count instead of a single x")
    p_eval.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="run identity checks")
    p_verify.add_argument("--id", help="identity id, e.g. I39")
    p_verify.add_argument("--all", action="store_true", help="run the full default suite")
    p_verify.add_argument("--params", action="append", help="key=value[,key=value...]")
    p_verify.add_argument("--mode", choices=("exact", "ode", "numeric"))
    p_verify.add_argument("--tol", type=float, help="override numeric tolerance")
    p_verify.add_argument("--json", action="store_true")

    p_entropy = sub.add_parser("entropy", help="entropy/variance table")
    p_entropy.add_argument("--op", choices=("bspline", "kantorovich"), required=True)
    p_entropy.add_argument("--n", type=int, required=True)
    p_entropy.add_argument("--k", type=int, help="Kantorovich order (default 2)")
    p_entropy.add_argument("--sigma", help="const:c, quad:c:d or table:file.csv")
    p_entropy.add_argument("--grid", required=True, help="a:b:count, endpoints included")
    p_entropy.add_argument("--csv", action="store_true", help="CSV output (the default)")
    p_entropy.add_argument("--json", action="store_true")

    p_registry = sub.add_parser("registry", help="identity registry table")
    p_registry.add_argument("--json", action="store_true")

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "eval": _cmd_eval,
        "verify": _cmd_verify,
        "entropy": _cmd_entropy,
        "registry": _cmd_registry,
    }
    try:
        return handlers[args.command](args)
    except HeunopsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
