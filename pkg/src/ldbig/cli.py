"""Command-line frontend: a docker-compose linter over bigraph models.

Subcommands: validate, check-links, check-security, check-sorts, export.
Exit codes: 0 no findings, 1 findings, 2 input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .algebra import identity, tensor
from .analysis import check_links, check_security, parse_order_file
from .bigraph import validate as validate_bigraph
from .composefile import assemble, container_stub, environment_bigraph, \
    parse_compose
from .containers import default_signature
from .errors import ComposeSyntaxError, LdbError
from .interfaces import EMPTY_INTERFACE
from .report import Finding, Report, input_error, ok, violations
from .serialize import dumps, patterns_from_json, to_dot
from .sorting import check_sorting


def _use_color(stream) -> bool:
    mode = os.environ.get("LDBIG_COLOR", "auto")
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, code: str, stream) -> str:
    if _use_color(stream):
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _print_report(report: Report, as_json: bool):
    if as_json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
        return
    if report.status == "ok":
        print(_paint("ok", "32", sys.stdout) + ": no findings")
        return
    for f in report.findings:
        tag = _paint(f.severity, "31" if f.severity == "error" else "33",
                     sys.stdout)
        print(f"{tag} [{f.kind}] {f.message}")


def _load_model(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_compose(text)


def _sorted_findings(items):
    return sorted(items, key=lambda f: (f.kind, f.message))


def _cmd_validate(args) -> Report:
    model = _load_model(args.file)
    composite = assemble(model)
    problems = validate_bigraph(composite)
    return violations(_sorted_findings(
        Finding("invalid", "error", str(p),
                {"clause": p.clause, "subject": p.subject})
        for p in problems))


def _cmd_check_links(args) -> Report:
    composite = assemble(_load_model(args.file))
    return violations(_sorted_findings(
        Finding(v.kind, "warning", v.message, v.payload())
        for v in check_links(composite)))


def _cmd_check_security(args) -> Report:
    composite = assemble(_load_model(args.file))
    order = parse_order_file(Path(args.order).read_text(encoding="utf-8"))
    return violations(_sorted_findings(
        Finding(v.kind, "warning", v.message, v.payload())
        for v in check_security(composite, order)))


def _cmd_check_sorts(args) -> Report:
    composite = assemble(_load_model(args.file))
    patterns = patterns_from_json(Path(args.forbidden).read_text(encoding="utf-8"))
    result = check_sorting(composite, patterns)
    findings = []
    for name, occurrences in result.counterexamples:
        findings.append(Finding(
            "forbiddenShape", "warning",
            f"forbidden shape {name!r} occurs {len(occurrences)} time(s)",
            {"pattern": name,
             "occurrences": [{str(k): v for k, v in o.node_map}
                             for o in occurrences]}))
    return violations(_sorted_findings(findings))


def _cmd_export(args) -> Report:
    model = _load_model(args.file)
    if args.stage == "environment":
        b = environment_bigraph(model)
    elif args.stage == "stubs":
        stubs = [container_stub(name, model) for name in model.services]
        b = stubs[0] if stubs else identity(EMPTY_INTERFACE, default_signature())
        for stub in stubs[1:]:
            b = tensor(b, stub)
    else:
        b = assemble(model)
    text = dumps(b) if args.format == "json" else to_dot(b, title=args.stage)
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return ok()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldbig",
        description="Model docker-compose files as bigraphs and check them.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="docker-compose YAML file")
        p.add_argument("--json", action="store_true",
                       help="emit the report as JSON")

    p = sub.add_parser("validate", help="parse, assemble and validate")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check-links",
                       help="linked services must share a network")
    common(p)
    p.set_defaults(func=_cmd_check_links)

    p = sub.add_parser("check-security",
                       help="no information flow against the network order")
    common(p)
    p.add_argument("--order", required=True,
                   help="order file: one 'HIGH > LOW' per line")
    p.set_defaults(func=_cmd_check_security)

    p = sub.add_parser("check-sorts",
                       help="no forbidden shape occurs in the composite")
    common(p)
    p.add_argument("--forbidden", required=True,
                   help="JSON list of {name, bigraph} patterns")
    p.set_defaults(func=_cmd_check_sorts)

    p = sub.add_parser("export", help="emit a model stage as DOT or JSON")
    common(p)
    p.add_argument("--format", choices=("dot", "json"), required=True)
    p.add_argument("--stage", choices=("environment", "stubs", "composite"),
                   default="composite")
    p.add_argument("--output", "-o", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except ComposeSyntaxError as exc:
        where = f"{args.file}:{exc.line}" if exc.line else args.file
        report = input_error(f"{where}: {exc}", file=args.file, line=exc.line)
    except (LdbError, ValueError, KeyError) as exc:
        report = input_error(f"{args.file}: {exc}", file=args.file)
    except OSError as exc:
        report = input_error(str(exc))
    if args.command == "export" and report.status == "ok":
        return 0  # the exported document is the output
    _print_report(report, getattr(args, "json", False))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
