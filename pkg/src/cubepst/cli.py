"""Command line interface.

Exit status: 0 on success, 2 when ``pst-verify`` finds no state transfer,
1 on any error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction

from . import constructions
from .codeprofile import classify
from .fileformats import (
    ParseError,
    complex_entry,
    dumps,
    format_connection_set,
    parse,
    vector_entry,
)
from .gf2core import ConnectionSet, bits_to_int, int_to_bits
from .pstanalysis import detect_pst, min_period
from .search import Constraint, enumerate_census
from .walkengine import RationalPi, amplitude_entry, default_tol, spectrum

TOL_ENV = "CUBEPST_TOL"

BIT_ORDER_NOTE = (
    "Bit strings: the leftmost character is coordinate 1 (row 1 of M), "
    "which is the least significant bit of the vertex index."
)


class UsageError(ValueError):
    pass


def _tolerance(args, dim: int) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"{TOL_ENV}={env!r} is not a number") from None
    return default_tol(dim)


def _load(path: str, args) -> ConnectionSet:
    """Read a connection set from a file, '-' for stdin, or '@name' for a built-in graph."""
    if path.startswith("@"):
        try:
            return constructions.named(path[1:]).connection_set
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    if path == "-":
        return parse(sys.stdin, args.format, args.keep_order)
    with open(path, encoding="utf-8") as fh:
        return parse(fh, args.format, args.keep_order)


def _target(text: str, dim: int) -> int:
    if len(text) != dim:
        raise UsageError(f"target must be a {dim}-character bit string")
    u = bits_to_int(text)
    if u == 0:
        raise UsageError("target must be nonzero")
    return u


def _time(text: str) -> RationalPi:
    try:
        return RationalPi.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_report(C: ConnectionSet, tol: float) -> dict:
    prof = classify(C)
    verdict = detect_pst(C, tol=tol)
    period = min_period(C, tol=tol)
    return {
        "input": {"d": C.dim, "m": C.m, "valency": C.m},
        "profile": {
            "divisor": prof.divisor,
            "row_gcd": prof.row_gcd,
            "center": vector_entry(prof.center, C.dim),
            "sigma": vector_entry(prof.sigma, C.dim),
            "even": prof.even,
            "doubly_even": prof.doubly_even,
            "self_orthogonal": prof.self_orthogonal,
            "spanning": prof.spanning,
        },
        "spectrum": [[lam, mult] for lam, mult in spectrum(C).entries],
        "pst": {
            "occurs": verdict.occurs,
            "target": vector_entry(verdict.target, C.dim),
            "time": str(verdict.time),
            "phase": complex_entry(verdict.phase),
            "certified_by": verdict.certified_by.value,
        },
        "period": {"period": str(period.period), "alpha": complex_entry(period.alpha)},
        "tolerances": {"tol": tol},
    }


def _print_report(report: dict, out) -> None:
    prof = report["profile"]
    pst = report["pst"]
    print(f"d = {report['input']['d']}, valency m = {report['input']['m']}", file=out)
    print(f"divisor D = {prof['divisor']}, row gcd = {prof['row_gcd']}", file=out)
    print(f"center = {prof['center']['bits']}, sigma = {prof['sigma']['bits']}", file=out)
    flags = [k for k in ("even", "doubly_even", "self_orthogonal", "spanning") if prof[k]]
    print(f"flags: {', '.join(flags) or 'none'}", file=out)
    print("spectrum: " + ", ".join(f"{lam}^{mult}" for lam, mult in report["spectrum"]), file=out)
    if pst["occurs"]:
        ph = pst["phase"]
        phase = f", phase {ph['re']:+.12f}{ph['im']:+.12f}i" if ph else ""
        print(f"PST: 0 -> {pst['target']['bits']} at {pst['time']}{phase} [{pst['certified_by']}]", file=out)
    else:
        print(f"PST: none (only possible time would be {pst['time']}) [{pst['certified_by']}]", file=out)
    al = report["period"]["alpha"]
    print(f"minimum period {report['period']['period']}, alpha = {al['re']:+.12f}{al['im']:+.12f}i", file=out)


def cmd_analyze(args, out) -> int:
    C = _load(args.input, args)
    report = build_report(C, _tolerance(args, C.dim))
    if args.json:
        print(dumps(report), file=out)
    else:
        _print_report(report, out)
    return 0


def cmd_pst_verify(args, out) -> int:
    C = _load(args.input, args)
    t = _time(args.time)
    u = _target(args.target, C.dim)
    tol = _tolerance(args, C.dim)
    amp = amplitude_entry(C, t, 0, u)
    ok = abs(amp) >= 1 - tol
    if args.json:
        print(dumps({
            "time": str(t),
            "target": vector_entry(u, C.dim),
            "amplitude": complex_entry(amp),
            "modulus": abs(amp),
            "pst": ok,
            "tol": tol,
        }), file=out)
    else:
        verdict = "PST" if ok else "no PST"
        print(f"|H({t})_(0,{args.target})| = {abs(amp):.17g}: {verdict}", file=out)
    return 0 if ok else 2


def cmd_period(args, out) -> int:
    C = _load(args.input, args)
    info = min_period(C, tol=_tolerance(args, C.dim))
    if args.json:
        print(dumps({"period": str(info.period), "alpha": complex_entry(info.alpha)}), file=out)
    else:
        print(f"minimum period {info.period}, alpha = {info.alpha.real:+.12f}{info.alpha.imag:+.12f}i", file=out)
    return 0


def cmd_spectrum(args, out) -> int:
    C = _load(args.input, args)
    spec = spectrum(C)
    if args.json:
        print(dumps({"m": spec.m, "spectrum": [list(e) for e in spec.entries]}), file=out)
    else:
        for lam, mult in spec.entries:
            print(f"{lam} {mult}", file=out)
    return 0


def _emit_set(C: ConnectionSet, args, out) -> int:
    if args.json:
        print(dumps({
            "d": C.dim,
            "m": C.m,
            "elements": [int_to_bits(c, C.dim) for c in C.elements],
        }), file=out)
    else:
        out.write(format_connection_set(C, args.format))
    return 0


def cmd_construct_target(args, out) -> int:
    C = _load(args.input, args)
    return _emit_set(constructions.pst_to_target(C, _target(args.target, C.dim)), args, out)


def cmd_complement(args, out) -> int:
    return _emit_set(constructions.complement(_load(args.input, args)), args, out)


def cmd_product(args, out) -> int:
    return _emit_set(constructions.direct_sum(_load(args.first, args), _load(args.second, args)), args, out)


def cmd_power(args, out) -> int:
    return _emit_set(constructions.power(_load(args.input, args), args.k), args, out)


def cmd_census(args, out) -> int:
    try:
        constraint = Constraint.parse(args.constraint)
    except ValueError:
        raise UsageError(f"unknown constraint {args.constraint!r}") from None
    result = enumerate_census(
        args.dim,
        constraint,
        checkpoint=args.checkpoint,
        workers=args.workers,
        time_budget=args.time_budget,
        include_nonspanning_orbits=args.nonspanning,
    )
    if args.json:
        print(dumps({
            "dim": result.dim,
            "constraint": result.constraint.value,
            "orbits": [
                {
                    "valency": r.m,
                    "orbit_size": size,
                    "elements": [int_to_bits(c, r.dim) for c in r.elements],
                }
                for r, size in zip(result.orbit_reps, result.orbit_sizes)
            ],
            "complement_pairing": [list(p) for p in result.complement_pairing],
            "raw_survivors": result.raw_survivors,
            "diagnostics": {k: v for k, v in result.diagnostics.items() if k != "seconds"},
        }), file=out)
        return 0
    print(f"{result.n_orbits} orbits ({result.constraint.value}, dim {result.dim}, "
          f"{result.raw_survivors} spanning sets)", file=out)
    for k, (r, size) in enumerate(zip(result.orbit_reps, result.orbit_sizes)):
        elems = " ".join(int_to_bits(c, r.dim) for c in r.elements)
        print(f"[{k}] valency {r.m}, orbit size {size}: {elems}", file=out)
    print("complement pairs: " + (", ".join(f"{i}-{j}" for i, j in result.complement_pairing) or "none"), file=out)
    for key, value in result.diagnostics.items():
        print(f"{key}: {value}", file=out)
    return 0


def cmd_amplitude_curve(args, out) -> int:
    C = _load(args.input, args)
    u = _target(args.target, C.dim)
    span = _time(args.span).fraction
    if span <= 0:
        raise UsageError("span must be positive")
    if args.q < 1:
        raise UsageError("q must be positive")
    step = Fraction(1, 64 * args.q)
    n = int(span / step)
    print("t_over_pi,t,modulus", file=out)
    for k in range(n + 1):
        frac = k * step
        amp = amplitude_entry(C, RationalPi.from_fraction(frac), 0, u)
        print(f"{frac},{float(RationalPi.from_fraction(frac)):.17g},{abs(amp):.17g}", file=out)
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("matrix", "set"), default="matrix",
                        help="input/output format (default: matrix)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=None,
                        help=f"numeric tolerance (default: ${TOL_ENV}, else 1e-9 for d<=12, 1e-8 above)")
    common.add_argument("--keep-order", action="store_true",
                        help="keep input element order instead of sorting")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="cubepst",
        description="Perfect state transfer on cubelike graphs through their binary codes. "
                    "Inputs are files, '-' for stdin, or @example / @cube<d> / @simplex<d> / @k2. "
                    + BIT_ORDER_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inputs=("input",)):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        for inp in inputs:
            p.add_argument(inp)
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "full report: code profile, spectrum, PST verdict, period")
    p = add("pst-verify", cmd_pst_verify, "check |H(t)_{0,u}| = 1 numerically (exit 2 if not)")
    p.add_argument("--time", required=True, help="time as p/q, meaning p*pi/q")
    p.add_argument("--target", required=True, help="target vertex as a bit string")
    add("period", cmd_period, "minimum period pi/D and the phase alpha")
    add("spectrum", cmd_spectrum, "eigenvalues with multiplicities")
    p = add("construct-target", cmd_construct_target,
            "change at most two elements so PST 0 -> target happens at pi/2")
    p.add_argument("--target", required=True, help="target vertex as a bit string")
    add("complement", cmd_complement, "connection set of the complement graph")
    add("product", cmd_product, "direct sum (Cartesian product of graphs)", inputs=("first", "second"))
    p = add("power", cmd_power, "k-fold direct sum with itself")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("census", parents=[common], help="GL(d,2) orbit census of self-orthogonal codes")
    p.add_argument("--dim", type=int, default=5)
    p.add_argument("--constraint", default="even-so", help="even-so or doubly-even")
    p.add_argument("--checkpoint", default=None, help="resumable scan checkpoint file")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--time-budget", type=float, default=None, help="seconds before checkpoint-and-stop")
    p.add_argument("--nonspanning", action="store_true", help="also count orbits of non-spanning sets")
    p.set_defaults(func=cmd_census)

    p = add("amplitude-curve", cmd_amplitude_curve, "CSV of |H(t)_{0,u}| sampled at 64q points per pi")
    p.add_argument("--target", required=True, help="target vertex as a bit string")
    p.add_argument("--q", type=int, default=1, help="sampling denominator (64q points per pi)")
    p.add_argument("--span", default="1", help="total time as p/q (times pi), default 1")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (ParseError, UsageError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
