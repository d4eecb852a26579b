"""Command-line front end: decide / construct / verify / classify / oracle /
necessary over JSON job files.

Exit codes: 0 = a result was rendered (including decision "no" and failed
verification reports), 2 = malformed input or violated precondition,
3 = unsupported case or non-split quadratic, 4 = internal check failure.
"""

from __future__ import annotations

import argparse
import sys

from . import oracle, serialize
from .errors import (BadParams, BudgetExceeded, DecisionNo, InternalCheckFailed,
                     MalformedInput, NotSplitError, QuadsumError, UnsupportedCase)
from .field import GF
from .sums import (classify_and_reduce, construct, decide,
                   check_necessary_combination, verify_certificate)

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4


def _emit(payload, output_path=None):
    text = serialize.dumps(payload) + "\n"
    sys.stdout.write(text)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(code: int, message: str) -> int:
    sys.stderr.write(message + "\n")
    return code


def _load_job(path: str):
    return serialize.jobspec_from_json(serialize.load_json(path))


def cmd_decide(args) -> int:
    _, matrix, params = _load_job(args.input)
    cls, reduced = classify_and_reduce(matrix, params)
    if cls.case != "III":
        _emit({"decision": "unsupported_case",
               "classification": serialize.classification_to_json(cls)},
              args.output)
        return _fail(EXIT_UNSUPPORTED, f"unsupported_case {cls.case}")
    decision = decide(reduced)
    payload = serialize.decision_to_json(decision)
    payload["classification"] = serialize.classification_to_json(cls)
    _emit(payload, args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    field, matrix, params = _load_job(args.input)
    try:
        cert = construct(matrix, params)
    except DecisionNo as exc:
        payload = serialize.decision_to_json(exc.decision)
        _emit(payload, args.output)
        return EXIT_OK
    payload = serialize.certificate_to_json(cert)
    # re-verify through the serialized form before reporting success
    reloaded = serialize.certificate_from_json(field, payload)
    if not verify_certificate(matrix, reloaded).ok:
        return _fail(EXIT_INTERNAL, "serialized certificate failed re-verification")
    _emit(payload, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    field, matrix, _ = _load_job(args.input)
    cert = serialize.certificate_from_json(field, serialize.load_json(args.cert))
    report = verify_certificate(matrix, cert)
    _emit(serialize.verification_to_json(report), args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    _, matrix, params = _load_job(args.input)
    cls, _ = classify_and_reduce(matrix, params)
    _emit(serialize.classification_to_json(cls), args.output)
    return EXIT_OK


def _parse_oracle_field(text: str):
    text = text.strip().lower()
    if text.startswith("gf"):
        text = text[2:].strip("()")
    try:
        return GF(int(text))
    except ValueError as exc:
        raise MalformedInput(f"bad oracle field {text!r}; use e.g. gf2") from exc


def cmd_oracle(args) -> int:
    field = _parse_oracle_field(args.field)
    report = oracle.exhaustive_compare(field, args.n, budget=args.budget)
    _emit(oracle.comparison_to_json(report), args.output)
    return EXIT_OK


def cmd_necessary(args) -> int:
    field, matrix, _ = _load_job(args.input)
    report = check_necessary_combination(matrix, field.parse(args.alpha),
                                         field.parse(args.beta))
    _emit(serialize.necessary_to_json(report), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadsum",
        description="Decide and certify sums of two split-quadratic matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def job_cmd(name, func, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--input", required=True, help="job JSON file")
        cmd.add_argument("--output", help="also write the JSON result here")
        cmd.set_defaults(func=func)
        return cmd

    job_cmd("decide", cmd_decide, "yes/no decision with diagnostics")
    job_cmd("construct", cmd_construct, "build and verify a certificate")
    verify = job_cmd("verify", cmd_verify, "check a certificate against a matrix")
    verify.add_argument("--cert", required=True, help="certificate JSON file")
    job_cmd("classify", cmd_classify, "case classification only")
    necessary = job_cmd("necessary", cmd_necessary,
                        "necessary condition for alpha*P + beta*Q")
    necessary.add_argument("--alpha", required=True)
    necessary.add_argument("--beta", required=True)

    orc = sub.add_parser("oracle", help="exhaustive decide-vs-enumeration comparison")
    orc.add_argument("--field", required=True, help="finite field, e.g. gf2")
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    orc.add_argument("--output", help="also write the JSON result here")
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, BadParams, BudgetExceeded) as exc:
        return _fail(EXIT_MALFORMED, f"malformed input: {exc}")
    except UnsupportedCase as exc:
        return _fail(EXIT_UNSUPPORTED, f"unsupported_case {exc.classification.case}")
    except NotSplitError as exc:
        return _fail(EXIT_UNSUPPORTED, f"not split: {exc}")
    except InternalCheckFailed as exc:
        return _fail(EXIT_INTERNAL, f"internal check failed: {exc}")
    except QuadsumError as exc:
        return _fail(EXIT_MALFORMED, f"error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
