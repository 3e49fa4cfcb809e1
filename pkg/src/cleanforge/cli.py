"""Command-line front door.

Subcommands map one-to-one onto library operations: ``decompose``,
``charpoly``, ``factor``, ``hensel``, ``pireg``, ``verify`` and
``witness``.  Results go to stdout, diagnostics to stderr.  JSON output
uses sorted keys and encodes every ring element as its canonical string,
so fixed inputs and seeds produce byte-identical bytes.  Exit codes:
0 success, 1 property failure or refused witness, 2 usage or bound error.

Matrices are passed as JSON arrays of arrays of element strings,
polynomials in the textual syntax of the poly module (constant-first
arrays in JSON output).  The ``CLEANFORGE_WORK_BOUND`` environment
variable overrides the enumeration work bound.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CleanforgeError, ParseError, PreconditionViolated, WitnessDegenerate
from .hensel import hensel_lift, local_factorization
from .matclean import (
    Mat,
    charpoly,
    mat_pow,
    pi_regular_witness,
    poly_eval_matrix,
    poly_reduce_via_matrix,
    strongly_clean_decompose,
    verify_decomposition,
)
from .oracle import (
    brute_factor,
    check_lemma_polyreduc,
    check_pi_regular,
    check_t5_condition,
    check_theorem_local_instance,
    nonclean_witness_quadratic,
)
from .poly import Poly, format_poly, parse_poly, parse_residue_poly, poly_to_strings
from .rings import parse_ring_spec


def _parse_matrix(spec, text: str) -> Mat:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix is not valid JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("matrix must be a JSON array of rows")
    return Mat.from_strings(spec, [[str(v) for v in row] for row in data])


def _mat_lines(label: str, M: Mat) -> list[str]:
    return [f"{label}:"] + ["  " + "  ".join(str(x) for x in row) for row in M.rows]


def _cmd_decompose(args) -> tuple[int, dict, list[str]]:
    spec = parse_ring_spec(args.ring)
    A = _parse_matrix(spec, args.matrix)
    dec = strongly_clean_decompose(A)
    verified = bool(verify_decomposition(A, dec.E, dec.U))
    payload = {
        "ring": spec.name(),
        "case": dec.case,
        "E": dec.E.to_strings(),
        "U": dec.U.to_strings(),
        "verified": verified,
    }
    if dec.case == "split":
        g, h, u, v = dec.certificate
        payload["certificate"] = {
            "g": poly_to_strings(g),
            "h": poly_to_strings(h),
            "u": poly_to_strings(u),
            "v": poly_to_strings(v),
        }
    elif dec.case == "crt":
        payload["components"] = [
            {"ring": part.E.spec.name(), "case": part.case} for part in dec.certificate
        ]
    text = [f"ring: {spec.name()}", f"case: {dec.case}"]
    text += _mat_lines("E", dec.E) + _mat_lines("U", dec.U)
    text.append(f"verified: {verified}")
    return (0 if verified else 1), payload, text


def _cmd_charpoly(args) -> tuple[int, dict, list[str]]:
    spec = parse_ring_spec(args.ring)
    A = _parse_matrix(spec, args.matrix)
    f = charpoly(A)
    verified = poly_eval_matrix(f, A).is_zero()
    payload = {
        "ring": spec.name(),
        "charpoly": poly_to_strings(f),
        "verified": verified,
    }
    text = [f"ring: {spec.name()}", f"charpoly: {format_poly(f)}", f"verified: {verified}"]
    return (0 if verified else 1), payload, text


def _cmd_factor(args) -> tuple[int, dict, list[str]]:
    spec = parse_ring_spec(args.ring)
    f = parse_poly(spec, args.poly)
    payload: dict = {"ring": spec.name(), "f": poly_to_strings(f)}
    text = [f"ring: {spec.name()}", f"f: {format_poly(f)}"]
    if args.brute and args.a is not None:
        raise PreconditionViolated("choose one of --a and --brute")
    if args.brute:
        got = brute_factor(f)
        if got is None:
            payload.update(reducible=False, verified=True)
            text.append("no proper monic divisor")
            return 0, payload, text
        g, h = got
        verified = g * h == f
        payload.update(
            reducible=True,
            g=poly_to_strings(g),
            h=poly_to_strings(h),
            verified=verified,
        )
        text += [f"g: {format_poly(g)}", f"h: {format_poly(h)}", f"verified: {verified}"]
        return (0 if verified else 1), payload, text
    if args.a is not None:
        a = spec.parse_element(args.a)
        g, h = poly_reduce_via_matrix(f, a)
        verified = g * h == f
        payload.update(
            a=str(a), g=poly_to_strings(g), h=poly_to_strings(h), verified=verified
        )
        text += [
            f"a: {a}",
            f"g: {format_poly(g)}",
            f"h: {format_poly(h)}",
            f"verified: {verified}",
        ]
        return (0 if verified else 1), payload, text
    fac = local_factorization(f)
    prod = Poly.one(spec)
    for piece in fac.factors:
        prod = prod * piece
    verified = prod == f
    payload.update(
        factors=[poly_to_strings(piece) for piece in fac.factors], verified=verified
    )
    text.append("factors: " + " * ".join(f"({format_poly(piece)})" for piece in fac.factors))
    text.append(f"verified: {verified}")
    return (0 if verified else 1), payload, text


def _cmd_hensel(args) -> tuple[int, dict, list[str]]:
    spec = parse_ring_spec(args.ring)
    f = parse_poly(spec, args.poly)
    p = spec.residue_char()
    gbar = parse_residue_poly(p, args.gbar)
    hbar = parse_residue_poly(p, args.hbar)
    res = hensel_lift(f, gbar, hbar)
    verified = (
        res.g * res.h == f and res.u * res.g + res.v * res.h == Poly.one(spec)
    )
    payload = {
        "ring": spec.name(),
        "f": poly_to_strings(f),
        "g": poly_to_strings(res.g),
        "h": poly_to_strings(res.h),
        "u": poly_to_strings(res.u),
        "v": poly_to_strings(res.v),
        "verified": verified,
    }
    text = [
        f"ring: {spec.name()}",
        f"g: {format_poly(res.g)}",
        f"h: {format_poly(res.h)}",
        f"u: {format_poly(res.u)}",
        f"v: {format_poly(res.v)}",
        f"verified: {verified}",
    ]
    return (0 if verified else 1), payload, text


def _cmd_pireg(args) -> tuple[int, dict, list[str]]:
    spec = parse_ring_spec(args.ring)
    A = _parse_matrix(spec, args.matrix)
    w = pi_regular_witness(A)
    verified = mat_pow(A, w.q) == mat_pow(A, w.q + 1) * w.s
    payload = {
        "ring": spec.name(),
        "q": w.q,
        "period": w.period,
        "s": w.s.to_strings(),
        "verified": verified,
    }
    text = [f"ring: {spec.name()}", f"q: {w.q}", f"period: {w.period}"]
    text += _mat_lines("s", w.s)
    text.append(f"verified: {verified}")
    return (0 if verified else 1), payload, text


def _cmd_verify(args) -> tuple[int, dict, list[str]]:
    spec = parse_ring_spec(args.ring)
    mode = "sample" if args.sample is not None else "exhaustive"
    count = args.sample if args.sample is not None else 0
    if args.suite == "local":
        report = check_theorem_local_instance(
            spec, args.n, mode, count, args.seed, args.engine
        )
    elif args.suite == "t5":
        report = check_t5_condition(spec, range(2, args.n + 1))
    elif args.suite == "lemma":
        report = check_lemma_polyreduc(spec, args.n)
    else:
        report = check_pi_regular(spec, args.n, mode, count, args.seed, args.engine)
    print(report.summary(), file=sys.stderr)
    text = [report.summary()]
    for failure in report.failures:
        text.append(f"  failure: {failure}")
    return (0 if report.ok else 1), report.to_json_dict(), text


def _cmd_witness(args) -> tuple[int, dict, list[str]]:
    w = nonclean_witness_quadratic(args.p)
    payload = w.to_json_dict()
    checks = w.checks
    payload["verified"] = bool(
        checks["f0_in_max_ideal"]
        and checks["f1_in_max_ideal"]
        and not checks["discriminant_is_square"]
    )
    text = [
        f"ring: {w.f.spec.name()}",
        f"f: {format_poly(w.f)}",
        f"discriminant: {checks['discriminant']} (not a square)",
        "f(0) and f(1) lie in the maximal ideal",
        "conclusion: 2x2 matrices over this ring are not all strongly clean",
    ]
    return 0, payload, text


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default="json",
        help="output format (default json)",
    )
    parser = argparse.ArgumentParser(
        prog="cleanforge",
        description="Exact strongly clean matrix decompositions over finite local rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ring_kw = {"required": True, "help": "ring spec, e.g. Z/4, Z/12, F2[t]/t^2, Zloc(5)"}
    matrix_kw = {"required": True, "help": 'matrix as JSON rows, e.g. [["0","2"],["1","1"]]'}

    p = sub.add_parser("decompose", parents=[common], help="strongly clean decomposition A = E + U")
    p.add_argument("--ring", **ring_kw)
    p.add_argument("--matrix", **matrix_kw)
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial, division-free")
    p.add_argument("--ring", **ring_kw)
    p.add_argument("--matrix", **matrix_kw)
    p.set_defaults(handler=_cmd_charpoly)

    p = sub.add_parser("factor", parents=[common], help="factor a monic polynomial")
    p.add_argument("--ring", **ring_kw)
    p.add_argument("--poly", required=True, help="monic polynomial, e.g. X^2+3*X+2")
    p.add_argument("--a", help="unit point: factor via the companion construction")
    p.add_argument("--brute", action="store_true", help="trial division over all monic divisors")
    p.set_defaults(handler=_cmd_factor)

    p = sub.add_parser("hensel", parents=[common], help="lift a coprime residue factorization")
    p.add_argument("--ring", **ring_kw)
    p.add_argument("--poly", required=True, help="monic polynomial over the ring")
    p.add_argument("--gbar", required=True, help="monic residue factor mod p")
    p.add_argument("--hbar", required=True, help="monic residue cofactor mod p")
    p.set_defaults(handler=_cmd_hensel)

    p = sub.add_parser("pireg", parents=[common], help="power witness A^q = A^(q+1) s")
    p.add_argument("--ring", **ring_kw)
    p.add_argument("--matrix", **matrix_kw)
    p.set_defaults(handler=_cmd_pireg)

    p = sub.add_parser("verify", parents=[common], help="run a property sweep")
    p.add_argument("--suite", choices=("local", "t5", "lemma", "pireg"), required=True)
    p.add_argument("--ring", **ring_kw)
    p.add_argument(
        "--n",
        type=int,
        default=2,
        help="matrix dimension (local, pireg), degree (lemma) or max degree (t5)",
    )
    p.add_argument("--sample", type=int, help="sample this many matrices instead of all")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    p.add_argument(
        "--engine",
        choices=("auto", "generic", "kernel"),
        default="auto",
        help="sweep implementation (default auto)",
    )
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("witness", parents=[common], help="non-clean witness over Zloc(p)")
    p.add_argument("--p", type=int, required=True, help="prime for the localization")
    p.set_defaults(handler=_cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, text = args.handler(args)
    except CleanforgeError as exc:
        error = {"error": {"code": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(error, sort_keys=True), file=sys.stderr)
        return 1 if isinstance(exc, WitnessDegenerate) else 2
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
