import argparse
import hashlib
import json
import logging
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Optional, Sequence, Tuple

from .analyzer import AnalysisOptions, LogDiv
from .functions import (
    InconclusiveError, ImplicationViolation, DivisorInput,
    classify, corpus_divisors, export_complex, implication_table, implication_violations, structure_functions,
    check_integrability, load_ilc, format_poly)

logger = logging.getLogger(__name__)

SCHEMA = "logdiv-report/1"

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INCONCLUSIVE = 2

DIVISOR_COMMANDS = ("classify", "logder", "theta", "rees-kernel", "bfunction", "spencer-verify", "ilc-check")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises ValueError instead of exiting on bad input."""

    def error(self, message):
        raise ValueError(message)


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ValueError(f"Expected comma-separated integers, got '{text}'.")


def _name_list(text: str) -> Tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("expression", nargs="?", help="Divisor equation, e.g. 'x^2 - y^3'.")
    p.add_argument("--file", help="Read the divisor equation from a file instead.")
    p.add_argument("--vars", type=_name_list, default=None, help="Comma-separated variable names (e.g. x,y,z).")
    p.add_argument("--weights", type=_int_list, default=None, help="Comma-separated weights for graded truncations.")
    p.add_argument("--trunc-weight", type=int, default=6, help="Spencer weight bound W (default: 6).")
    p.add_argument("--trunc-order", type=int, default=3, help="Spencer total-order bound N (default: 3).")
    p.add_argument("--x-degree", type=int, default=2, help="Spencer x-degree bound M in filtration mode (default: 2).")
    p.add_argument("--degree-cap", type=int, default=12, help="Weyl Groebner degree cap (default: 12).")
    p.add_argument("--attempts", type=int, default=200, help="Saito basis search attempts (default: 200).")
    p.add_argument("--seed", type=int, default=0, help="Saito basis search seed (default: 0).")
    p.add_argument("--deadline", type=float, default=None, help="Time budget in seconds.")
    p.add_argument("--json", dest="json_out", default=None, help="Write the JSON report to this path ('-' for stdout).")
    p.add_argument("--timing", action="store_true", help="Add wall-clock timing outside the hashed body.")
    p.add_argument("--verbose", action="store_true", help="Log debug records to stderr.")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="logdiv", description="Free divisors, Bernstein-Sato polynomials and Spencer complexes.")
    subparsers = p.add_subparsers(dest="command", parser_class=_Parser)

    for name, text in (("classify", "Run every divisor test and report the flags"),
                       ("logder", "Logarithmic derivations and a Saito basis"),
                       ("theta", "Theta_{f,s} symbols and the Rees kernel check"),
                       ("rees-kernel", "Kernel of the Rees map"),
                       ("bfunction", "Bernstein-Sato polynomial with an operator certificate")):
        _add_common(subparsers.add_parser(name, help=text))

    spencer = subparsers.add_parser("spencer-verify", help="Exactness and specialization of the Spencer complex")
    _add_common(spencer)
    spencer.add_argument("--pair", default="theta", choices=["theta", "logarithmic"], help="Lie pair (default: theta).")
    spencer.add_argument("--mode", default=None, choices=["graded", "filtration"], help="Truncation mode.")
    spencer.add_argument("--twist", type=int, default=0, help="Coefficients O(mD) (default: 0).")
    spencer.add_argument("--ilc", default=None, help="JSON file with a connection {rank, matrices}.")
    spencer.add_argument("--k", type=_int_list, default=None, help="Specialization values, e.g. 1,2,3.")
    spencer.add_argument("--no-specialize", action="store_true", help="Skip the specialization checks.")
    spencer.add_argument("--allow-evidence", action="store_true", help="Accept filtration-mode truncations.")
    spencer.add_argument("--export", default=None, help="Write the truncated matrices to this path.")

    ilc = subparsers.add_parser("ilc-check", help="Integrability of a connection over the Saito basis")
    _add_common(ilc)
    ilc.add_argument("--ilc", default=None, help="JSON file with a connection {rank, matrices}.")
    ilc.add_argument("--twist", type=int, default=0, help="Twist by O(mD) (default: 0).")

    corpus = subparsers.add_parser("corpus", help="Classify the built-in divisors and check the implications")
    corpus.add_argument("--json", dest="json_out", default=None, help="Write the JSON report to this path.")
    corpus.add_argument("--timing", action="store_true")
    corpus.add_argument("--verbose", action="store_true")

    batch = subparsers.add_parser("batch", help="Run one job per line of a file")
    batch.add_argument("path", help="File with one command line per job, e.g. 'classify x*y'.")
    batch.add_argument("--jobs", type=int, default=1, help="Parallel workers (default: 1).")
    batch.add_argument("--json", dest="json_out", default=None, help="Write the JSON report to this path.")
    batch.add_argument("--timing", action="store_true")
    batch.add_argument("--verbose", action="store_true")
    return p


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ValueError(f"Cannot read {path}: {exc.strerror}.")


def _expression(args) -> str:
    if args.file:
        return _read(args.file).strip()
    if not args.expression:
        raise ValueError("Give a divisor expression or --file PATH.")
    return args.expression


def _options(args) -> AnalysisOptions:
    return AnalysisOptions(attempts=args.attempts, seed=args.seed, degree_cap=args.degree_cap,
                           weight_bound=args.trunc_weight, order_bound=args.trunc_order,
                           x_degree_bound=args.x_degree, weights=args.weights, deadline_seconds=args.deadline)


def _input_echo(args, expression: str) -> Dict[str, object]:
    echo = {"expression": expression, "variables": list(args.vars) if args.vars else None}
    for key in ("weights", "trunc_weight", "trunc_order", "x_degree", "degree_cap", "pair", "mode", "twist", "k"):
        value = getattr(args, key, None)
        if value is not None:
            echo[key] = list(value) if isinstance(value, tuple) else value
    return echo


def _run_spencer(analysis: LogDiv, args):
    data = json.loads(_read(args.ilc)) if args.ilc else None
    analysis.connection(args.twist, data)
    analysis.spencer(args.pair, args.mode, args.allow_evidence)
    if args.export:
        with open(args.export, "w", encoding="utf-8") as handle:
            handle.write(export_complex(analysis._complex))
    if not args.no_specialize:
        analysis.specialize(args.k)


def _run_ilc_check(analysis: LogDiv, args):
    basis = analysis._require_basis()
    if args.ilc:
        draft = load_ilc(json.loads(_read(args.ilc)), basis)
        sf = structure_functions(basis)
        analysis._results["structure_functions"] = [[[format_poly(c) for c in cij] for cij in ci] for ci in sf.c]
        analysis._results["integrable"] = check_integrability(draft, sf)
        if analysis._results["integrable"]:
            analysis.connection(args.twist, json.loads(_read(args.ilc)))
    else:
        analysis.connection(args.twist)
        analysis._results["integrable"] = True


COMMANDS = {
    "classify": lambda a, args: a.classify(),
    "logder": lambda a, args: a.log_derivations().saito_basis(),
    "theta": lambda a, args: a.theta(),
    "rees-kernel": lambda a, args: a.rees_kernel(),
    "bfunction": lambda a, args: a.bfunction(),
    "spencer-verify": _run_spencer,
    "ilc-check": _run_ilc_check,
}


def run(args) -> Tuple[Dict[str, object], int]:
    """
    Dispatch one divisor job.

    Returns the report body and the exit code (0 ok, 2 inconclusive). Input
    errors propagate as ValueError.
    """
    expression = _expression(args)
    analysis = LogDiv(expression, args.vars, _options(args))
    status, code, message = "ok", EXIT_OK, None
    try:
        COMMANDS[args.command](analysis, args)
    except InconclusiveError as exc:
        status, code, message = "inconclusive", EXIT_INCONCLUSIVE, str(exc)
        logger.warning("%s %s: %s", args.command, expression, exc)
    body = {"command": args.command, "input": _input_echo(args, expression), "status": status,
            "result": analysis.to_report()}
    if message:
        body["message"] = message
    return body, code


def run_corpus(show_table: bool = True) -> Tuple[Dict[str, object], int]:
    """
    Classify the built-in divisors and count contradicted implications.

    Returns the report body and the exit code (0 without violations, 1 otherwise).
    """
    reports = []
    violations = []
    for name, expression, variables in corpus_divisors():
        report = classify(DivisorInput.parse(expression, variables), check=False)
        found = implication_violations(report)
        for message in found:
            logger.error("corpus %s: %s", name, message)
        violations.extend(found)
        reports.append((name, report))
    if show_table:
        print(implication_table([r for _, r in reports]))
    rows = [{"name": name, **report.to_dict()} for name, report in reports]
    body = {"command": "corpus", "status": "error" if violations else "ok",
            "violations": len(violations), "result": rows}
    if violations:
        body["message"] = "; ".join(violations)
    return body, EXIT_INPUT_ERROR if violations else EXIT_OK


def _run_line(line: str) -> Tuple[Dict[str, object], int]:
    try:
        args = build_parser().parse_args(shlex.split(line))
        if args.command not in DIVISOR_COMMANDS:
            raise ValueError(f"Batch lines must run a divisor command, got '{args.command}'.")
        return run(args)
    except (ValueError, ImplicationViolation) as exc:
        return {"command": line, "status": "error", "message": str(exc)}, EXIT_INPUT_ERROR


def run_batch(path: str, jobs: int) -> Tuple[Dict[str, object], int]:
    if jobs < 1:
        raise ValueError("--jobs must be at least 1.")
    lines = [line.strip() for line in _read(path).splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if jobs == 1:
        results = [_run_line(line) for line in lines]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_line, lines))
    codes = [code for _, code in results]
    code = EXIT_INPUT_ERROR if EXIT_INPUT_ERROR in codes else (EXIT_INCONCLUSIVE if EXIT_INCONCLUSIVE in codes else EXIT_OK)
    return {"command": "batch", "status": "ok" if code == EXIT_OK else "partial",
            "result": [body for body, _ in results]}, code


def canonical_json(body: Dict[str, object]) -> str:
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def make_report(body: Dict[str, object], seconds: Optional[float] = None) -> Dict[str, object]:
    """Wrap a body with the schema tag and its sha256; timing stays outside the hashed body."""
    from . import __version__
    report = {"schema": SCHEMA, "version": __version__, "body": body,
              "body_sha256": hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()}
    if seconds is not None:
        report["timing"] = {"seconds": round(seconds, 3)}
    return report


def _write(report: Dict[str, object], path: Optional[str]):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    elif path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _print_summary(body: Dict[str, object]):
    result = body.get("result")
    print(f"{body['command']}: {body['status']}")
    if body.get("message"):
        print(f"  {body['message']}")
    if not isinstance(result, dict):
        return
    for key in ("classification", "bfunction", "spencer"):
        if key not in result:
            continue
        section = result[key]
        if key == "classification":
            flags = ("free", "euler_homogeneous", "quasi_homogeneous", "koszul_free",
                     "linear_jacobian_type", "differential_linear_type", "theta_koszul_pair")
            for flag in flags:
                print(f"  {flag}: {section[flag]}")
        elif key == "bfunction":
            print(f"  b(s) = {section['polynomial']} ({section['kind']}), threshold {section['threshold']}")
        else:
            print(f"  spencer {section['pair']} [{section['mode']}]: exact={section['exact']} ({section['label']})")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the ``logdiv`` command. Returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except ValueError as exc:
        print(f"logdiv: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.command is None:
        print("logdiv: error: a command is required", file=sys.stderr)
        return EXIT_INPUT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        if args.command == "corpus":
            body, code = run_corpus(show_table=args.json_out != "-")
        elif args.command == "batch":
            body, code = run_batch(args.path, args.jobs)
        else:
            body, code = run(args)
    except (ValueError, ImplicationViolation) as exc:
        print(f"logdiv: error: {exc}", file=sys.stderr)
        _write(make_report({"command": args.command, "status": "error", "message": str(exc)}), args.json_out)
        return EXIT_INPUT_ERROR
    report = make_report(body, time.perf_counter() - start if args.timing else None)
    _write(report, args.json_out)
    if args.json_out != "-":
        _print_summary(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
