"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a comparison with the
known closed forms or strictness claims disagrees, 3 an internal
consistency check failed (containment or splitting).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

from . import __version__
from .checks import assertion_classification, closed_form_check
from .diagfile import parse_diagonal_file
from .graded import ParseError
from .homloop import CounitError
from .linalg import ContainmentError
from .loops import OrderTooLarge, has_property, implication_survey, parse_table, validate
from .moduli import ExtensionProblem
from .report import envelope, report_document, to_json, to_table

COMMANDS = ("report", "sweep", "closed-form-check", "assertion", "loops-survey", "loops-check")
OUTPUT_DIR_ENV = "HMODULI_OUTPUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("hmoduli")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    deg_x: tuple[int, ...] | None = None
    deg_y: int | None = None
    k: int | None = None
    k_max: int | None = None
    order: int | None = None
    diagonal_file: str | None = None
    table_file: str | None = None
    truncation: int | None = None
    output_format: str = "json"
    output_path: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.deg_x is not None:
            object.__setattr__(self, "deg_x", tuple(self.deg_x))
            if not self.deg_x or any(n < 1 for n in self.deg_x):
                raise UsageError("--deg-x values must be >= 1")
        if self.deg_y is not None and self.deg_y < 1:
            raise UsageError("--deg-y must be >= 1")
        if self.k is not None and self.k < 1:
            raise UsageError("--k must be >= 1")
        if self.k_max is not None and self.k_max < 2:
            raise UsageError("--k-max must be >= 2")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.output_format not in ("json", "table"):
            raise UsageError("--format must be json or table")

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise UsageError(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**data)


# building problems -------------------------------------------------------------


def _problem(deg_x: Sequence[int], deg_y: int | None, diagonal_file: str | None,
             truncation: int | None) -> ExtensionProblem:
    mu2 = parse_diagonal_file(diagonal_file) if diagonal_file else None
    degs = list(deg_x)
    return ExtensionProblem.eilenberg_maclane(degs if len(degs) > 1 else degs[0], deg_y or 1,
                                              truncation=truncation, mu2=mu2)


def _report_doc(deg_x, deg_y, diagonal_file, truncation) -> dict:
    return report_document(_problem(deg_x, deg_y, diagonal_file, truncation))


def _x_degrees(cfg: RunConfig) -> list[int]:
    """Degrees of x to check: --deg-x, or k * deg_y for --k, or k = 2..k_max."""
    if cfg.deg_y is None:
        raise UsageError(f"{cfg.command} needs --deg-y")
    if cfg.deg_x is not None:
        return list(cfg.deg_x)
    if cfg.k is not None:
        return [cfg.k * cfg.deg_y]
    if cfg.k_max is not None:
        return [k * cfg.deg_y for k in range(2, cfg.k_max + 1)]
    raise UsageError(f"{cfg.command} needs --deg-x, --k or --k-max")


def _map(fn, args: list[tuple], jobs: int) -> list:
    if jobs == 1 or len(args) < 2:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*args)))


# commands -----------------------------------------------------------------------


def _run_report(cfg: RunConfig):
    if cfg.deg_x is None:
        raise UsageError("report needs --deg-x")
    if cfg.deg_y is None and cfg.diagonal_file is None:
        raise UsageError("report needs --deg-y or --diagonal-file")
    doc = _report_doc(cfg.deg_x, cfg.deg_y, cfg.diagonal_file, cfg.truncation)
    return (EXIT_OK if doc["splitting_verified"] else EXIT_INTERNAL), doc, []


def _run_sweep(cfg: RunConfig):
    if cfg.deg_y is None or cfg.k_max is None:
        raise UsageError("sweep needs --deg-y and --k-max")
    ks = list(range(2, cfg.k_max + 1))
    args = [((k * cfg.deg_y,), cfg.deg_y, cfg.diagonal_file, cfg.truncation) for k in ks]
    reports = _map(_report_doc, args, cfg.jobs)
    doc = envelope("sweep", deg_y=cfg.deg_y, k_values=ks, reports=reports)
    ok = all(r["splitting_verified"] for r in reports)
    return (EXIT_OK if ok else EXIT_INTERNAL), doc, []


def _run_closed_form(cfg: RunConfig):
    if cfg.diagonal_file:
        raise UsageError("closed-form-check applies to the primitive diagonal only")
    degs = _x_degrees(cfg)
    results = _map(closed_form_check, [(n, cfg.deg_y) for n in degs], cfg.jobs)
    messages = []
    for r in results:
        for name, e in r["spaces"].items():
            bad = e["verdict"] == "mismatch" or e.get("oracle_verdict") == "mismatch"
            if bad:
                messages.append(f"deg x {r['deg_x']}, deg y {r['deg_y']}: V_{name} disagrees; "
                                f"computed {e['computed']}, expected {e['expected']}")
    doc = envelope("closed-form-check", results=results,
                   agrees=all(r["agrees"] for r in results))
    return (EXIT_OK if doc["agrees"] else EXIT_DISAGREE), doc, messages


def _run_assertion(cfg: RunConfig):
    if cfg.diagonal_file:
        raise UsageError("assertion applies to the primitive diagonal only")
    degs = _x_degrees(cfg)
    results = _map(assertion_classification, [(n, cfg.deg_y) for n in degs], cfg.jobs)
    messages = []
    for r in results:
        where = f"deg x {r['deg_x']}, deg y {r['deg_y']} (case {r['claimed_case']})"
        if r["computed_case"] != r["claimed_case"]:
            messages.append(f"{where}: computed case {r['computed_case']}")
        for c in r["claims"] + r["sketch_chain"]:
            if not c["holds"]:
                kind = "claim" if c in r["claims"] else "intermediate chain step"
                messages.append(f"{where}: {kind} {c['claim']} fails "
                                f"(dims {c['lhs_dim']}, {c['rhs_dim']}); "
                                f"lhs basis {c['lhs_basis']}, rhs basis {c['rhs_basis']}")
    agrees = all(r["agrees"] for r in results)
    clean = agrees and not any(r["sketch_discrepancies"] for r in results)
    doc = envelope("assertion", results=results, agrees=agrees)
    return (EXIT_OK if clean else EXIT_DISAGREE), doc, messages


def _run_survey(cfg: RunConfig):
    if cfg.order is None:
        raise UsageError("loops-survey needs --order")
    try:
        survey = implication_survey(cfg.order)
    except (OrderTooLarge, ValueError) as exc:
        raise UsageError(str(exc)) from None
    doc = envelope("loops-survey", survey=survey)
    broken = [k for k, v in survey["implications"].items() if v["counterexamples"]]
    messages = [f"implication {k} has counterexamples" for k in broken]
    return (EXIT_INTERNAL if broken else EXIT_OK), doc, messages


def _run_check(cfg: RunConfig):
    if cfg.table_file is None:
        raise UsageError("loops-check needs --table")
    try:
        t = parse_table(Path(cfg.table_file).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"{cfg.table_file}: {exc}") from None
    ok = validate(t)
    props = {tag: has_property(t, tag) for tag in ("inv", "pa", "mo", "sa")} if ok else {}
    doc = envelope("loops-check", table=[list(r) for r in t.table], valid=ok, properties=props)
    return (EXIT_OK if ok else EXIT_USAGE), doc, ([] if ok else ["not a normalized loop table"])


_RUNNERS = {
    "report": _run_report,
    "sweep": _run_sweep,
    "closed-form-check": _run_closed_form,
    "assertion": _run_assertion,
    "loops-survey": _run_survey,
    "loops-check": _run_check,
}


def run(cfg: RunConfig) -> tuple[int, dict | None, list[str]]:
    """Execute a configuration: (exit code, document, messages for stderr)."""
    try:
        return _RUNNERS[cfg.command](cfg)
    except UsageError as exc:
        return EXIT_USAGE, None, [str(exc)]
    except ParseError as exc:
        return EXIT_USAGE, None, [f"{cfg.diagonal_file}: {exc}"]
    except CounitError as exc:
        return EXIT_USAGE, None, [f"{cfg.diagonal_file}: {exc}"]
    except OSError as exc:
        return EXIT_USAGE, None, [str(exc)]
    except ContainmentError as exc:
        return EXIT_INTERNAL, None, [str(exc)]


# argument parsing -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hmoduli", description="Moduli of central H-extensions of rational H-spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", dest="output_format", choices=("json", "table"), default="json")
        sp.add_argument("--output", dest="output_path")
        sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("report", help="moduli subspaces for one problem")
    sp.add_argument("--deg-x", type=int, nargs="+", required=True)
    sp.add_argument("--deg-y", type=int)
    sp.add_argument("--diagonal-file")
    sp.add_argument("--truncation", type=int)
    common(sp)

    sp = sub.add_parser("sweep", help="reports for deg x = k * deg y, k = 2..k_max")
    sp.add_argument("--deg-y", type=int, required=True)
    sp.add_argument("--k-max", type=int, required=True)
    sp.add_argument("--diagonal-file")
    sp.add_argument("--truncation", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)

    for name, text in (("closed-form-check", "compare with the closed-form subspaces"),
                       ("assertion", "check the strict inclusions among S_inv, S_pa, S_mo")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--deg-y", type=int, required=True)
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--deg-x", type=int, nargs="+")
        g.add_argument("--k", type=int)
        g.add_argument("--k-max", type=int)
        sp.add_argument("--jobs", type=int, default=1)
        common(sp)

    sp = sub.add_parser("loops-survey", help="exhaustive loop property survey")
    sp.add_argument("--order", type=int, required=True)
    common(sp)

    sp = sub.add_parser("loops-check", help="properties of one Cayley table")
    sp.add_argument("--table", dest="table_file", required=True)
    common(sp)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    data = {k: v for k, v in vars(ns).items() if v is not None and k != "verbose"}
    return RunConfig.from_mapping(data)


def resolve_output(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"hmoduli: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, doc, messages = run(cfg)
    for m in messages:
        print(f"hmoduli: {m}", file=sys.stderr)
    if doc is not None:
        text = to_json(doc) if cfg.output_format == "json" else to_table(doc)
        if cfg.output_path:
            out = resolve_output(cfg.output_path)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
