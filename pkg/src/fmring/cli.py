"""Command-line front end: JSON files in, JSON on stdout, verdicts as exit codes.

Exit codes: 0 success or affirmative answer, 1 well-formed negative answer
(invalid system, not isomorphic), 2 usage/parse/guard error, 3 unknown
verdict or inconclusive oracle.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra, isomorphism
from .errors import FmringError, GuardError, PreconditionError, SchemaError, StructuralError
from .matrices import FormalMatrix, twisted_multiply
from .multipliers import MultiplierSystem, classify, principal_matrix, validate_identities
from .patterns import (
    PrincipalPattern,
    canonical_form,
    check_triple_condition,
    enumerate_patterns,
    realize01,
    realize_s1,
)
from .rings import RingSpec

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3

_VERDICT_EXIT = {
    isomorphism.ISOMORPHIC: EXIT_OK,
    isomorphism.NOT_ISOMORPHIC: EXIT_NEGATIVE,
    isomorphism.UNKNOWN: EXIT_UNKNOWN,
    algebra.ISOMORPHIC: EXIT_OK,
    algebra.NOT_ISOMORPHIC: EXIT_NEGATIVE,
    algebra.INCONCLUSIVE: EXIT_UNKNOWN,
}


class UsageError(FmringError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None


def _parse(path, cls):
    try:
        return cls.from_json(_load(path))
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except StructuralError as exc:
        raise UsageError(f"{path}: $: {exc}") from None


def _violation_doc(violations):
    return {"valid": False, "violations": [v.to_json() for v in violations]}


def cmd_validate(args):
    sigma = _parse(args.system, MultiplierSystem)
    violations = validate_identities(sigma)
    if violations:
        return EXIT_NEGATIVE, _violation_doc(violations)
    c = classify(sigma)
    return EXIT_OK, {
        "valid": True,
        "violations": [],
        "principal_matrix": [list(r) for r in principal_matrix(sigma)],
        "is01": c.is01,
        "isK0": c.isK0,
    }


def _valid_system(path):
    sigma = _parse(path, MultiplierSystem)
    violations = validate_identities(sigma)
    return sigma, violations


def cmd_mul(args):
    a = _parse(args.a, FormalMatrix)
    b = _parse(args.b, FormalMatrix)
    sigma, violations = _valid_system(args.system)
    if violations:
        return EXIT_NEGATIVE, _violation_doc(violations)
    return EXIT_OK, twisted_multiply(a, b, sigma).to_json()


def _pattern(path):
    """Parse a pattern; returns (pattern, None) or (None, triple violations)."""
    try:
        n, ring, zero, t = PrincipalPattern.raw_from_json(_load(path))
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None
    try:
        bad = check_triple_condition(t)
    except StructuralError as exc:
        raise UsageError(f"{path}: $.t: {exc}") from None
    if bad:
        return None, bad
    try:
        return PrincipalPattern(n, ring, zero, t), None
    except (StructuralError, PreconditionError) as exc:
        raise UsageError(f"{path}: $: {exc}") from None


def _triples_doc(bad):
    return {"valid": False, "violations": [{"kind": "triple", "index": list(v)} for v in bad]}


def cmd_canon(args):
    pattern, bad = _pattern(args.pattern)
    if bad:
        return EXIT_NEGATIVE, _triples_doc(bad)
    return EXIT_OK, canonical_form(pattern).to_json()


def cmd_realize(args):
    pattern, bad = _pattern(args.pattern)
    if bad:
        return EXIT_NEGATIVE, _triples_doc(bad)
    if args.s is not None and args.s != pattern.zero_symbol:
        raise UsageError(f"--s {args.s} does not match the pattern's zero symbol {pattern.zero_symbol}")
    sigma = realize01(pattern) if pattern.is01 else realize_s1(pattern)
    return EXIT_OK, sigma.to_json()


def cmd_iso(args):
    s1, v1 = _valid_system(args.sys1)
    s2, v2 = _valid_system(args.sys2)
    if v1 or v2:
        return EXIT_NEGATIVE, _violation_doc(v1 or v2)
    if args.s is None:
        verdict = isomorphism.decide_iso_01(s1, s2)
    else:
        verdict = isomorphism.decide_iso_s1(s1, s2, args.s)
    return _VERDICT_EXIT[verdict.status], verdict.to_json()


def cmd_quotient_iso(args):
    ring = _parse(args.ring, RingSpec)
    p1, bad1 = _pattern(args.p1)
    p2, bad2 = _pattern(args.p2)
    if bad1 or bad2:
        return EXIT_NEGATIVE, _triples_doc(bad1 or bad2)
    verdict = isomorphism.decide_quotient_iso(p1, p2, ring)
    return _VERDICT_EXIT[verdict.status], verdict.to_json()


def cmd_radical(args):
    sigma, violations = _valid_system(args.system)
    if violations:
        return EXIT_NEGATIVE, _violation_doc(violations)
    alg = algebra.from_formal_ring(sigma)
    rad = algebra.radical(alg)
    return EXIT_OK, {
        "p": alg.p,
        "dim": alg.dim,
        "radical_dim": rad.dim,
        "quotient_dim": alg.dim - rad.dim,
        "basis": rad.to_json(),
    }


def cmd_enumerate(args, out):
    ring = _parse(args.ring, RingSpec) if args.ring else RingSpec.integers()
    patterns = enumerate_patterns(args.n, args.zero_symbol, ring)
    if args.emit_all:
        for pattern in patterns:
            out.write(json.dumps(pattern.to_json()) + "\n")
        return EXIT_OK, None
    count, classes = 0, set()
    for pattern in patterns:
        count += 1
        classes.add(canonical_form(pattern).block_sizes)
    return EXIT_OK, {"patterns": count, "canonical_classes": len(classes)}


def cmd_oracle(args):
    a = _parse(args.alg1, algebra.FiniteAlgebra)
    b = _parse(args.alg2, algebra.FiniteAlgebra)
    result = algebra.isomorphic(a, b)
    return _VERDICT_EXIT[result.status], result.to_json()


def build_parser():
    parser = _Parser(prog="fmring", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", help="write the JSON result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check the multiplier identities")
    p.add_argument("system")

    p = sub.add_parser("mul", help="twisted product of two matrices")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--system", required=True)

    p = sub.add_parser("canon", help="canonical form of a principal pattern")
    p.add_argument("pattern")

    p = sub.add_parser("realize", help="multiplier system with the given principal pattern")
    p.add_argument("pattern")
    p.add_argument("--s", type=int)

    p = sub.add_parser("iso", help="isomorphism verdict for two multiplier systems")
    p.add_argument("sys1")
    p.add_argument("sys2")
    p.add_argument("--s", type=int)

    p = sub.add_parser("quotient-iso", help="verdict for the quotients by the prime radical")
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--ring", required=True)

    p = sub.add_parser("radical", help="radical of M(n, F_p, sigma)")
    p.add_argument("system")

    p = sub.add_parser("enumerate", help="all valid principal patterns of order n")
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count-only", action="store_true")
    mode.add_argument("--emit-all", action="store_true")
    p.add_argument("--zero-symbol", type=int, default=0)
    p.add_argument("--ring")

    p = sub.add_parser("oracle", help="brute-force isomorphism test of two algebras")
    p.add_argument("alg1")
    p.add_argument("alg2")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = stdout
    try:
        args = build_parser().parse_args(argv)
        if args.output:
            try:
                out = open(args.output, "w")
            except OSError as exc:
                raise UsageError(f"{args.output}: cannot write: {exc.strerror}") from None
        if args.command == "enumerate":
            code, doc = cmd_enumerate(args, out)
        else:
            handler = globals()["cmd_" + args.command.replace("-", "_")]
            code, doc = handler(args)
    except (UsageError, SchemaError, StructuralError, PreconditionError) as exc:
        code, doc = EXIT_USAGE, {"error": str(exc)}
        print(f"fmring: error: {exc}", file=stderr)
    except GuardError as exc:
        code, doc = EXIT_USAGE, {"error": f"guard exceeded: {exc}"}
        print(f"fmring: guard exceeded: {exc}", file=stderr)
    if doc is not None:
        out.write(json.dumps(doc) + "\n")
    if out is not stdout:
        out.close()
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
