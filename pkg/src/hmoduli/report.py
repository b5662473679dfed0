"""Deterministic report documents (JSON and aligned markdown tables).

Every document is a plain dict built in a fixed key order.  Rationals are
written with ``str(Fraction)`` ("3", "-1/2"), so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .graded import format_element
from .linalg import Subspace
from .moduli import SPACES, ExtensionProblem, ModuliReport, moduli_report

SCHEMA = "hmoduli/1"
QUOTIENT_KEYS = ("V", "inv", "pa", "sa", "mo")


def envelope(command: str, **body) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


def rational(x) -> str:
    return str(Fraction(x))


def subspace_doc(s: Subspace) -> dict:
    return {"dim": s.dim, "basis_rows": [[rational(x) for x in r] for r in s.rows()]}


def problem_doc(problem: ExtensionProblem) -> dict:
    nu = problem.mu2
    return {
        "x1_generators": [{"name": g.name, "degree": g.degree} for g in problem.generators],
        "x2_generators": [{"name": g.name, "degree": g.degree} for g in problem.x2.generators],
        "diagonal": {g.name: format_element(im)
                     for g, im in zip(problem.x2.generators, nu.underlying.images)},
        "primitive_diagonal": nu.is_primitive(),
        "truncation": problem.truncation,
    }


def moduli_doc(r: ModuliReport) -> dict:
    per = []
    for g in r.per_generator:
        per.append({
            "generator": g.name,
            "degree": g.degree,
            "ambient_basis": list(g.ambient_basis),
            "spaces": {name: subspace_doc(g.spaces[name]) for name in SPACES},
            "quotients": {name: g.quotients[name] for name in QUOTIENT_KEYS},
            "lattice": {a: {b: g.lattice[a][b] for b in SPACES} for a in SPACES},
            "case": g.case,
        })
    return {
        "problem": problem_doc(r.problem),
        "per_generator": per,
        "totals": {name: r.totals[name] for name in SPACES},
        "quotient_totals": {name: r.quotient_totals[name] for name in QUOTIENT_KEYS},
        "splitting_verified": r.splitting_verified,
    }


def report_document(problem: ExtensionProblem) -> dict:
    return envelope("report", **moduli_doc(moduli_report(problem)))


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# markdown tables ---------------------------------------------------------------


def markdown_table(header, rows) -> str:
    cells = [[str(c) for c in header]] + [[_cell(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    line = lambda r: "| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |"  # noqa: E731
    out = [line(cells[0]), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    out += [line(r) for r in cells[1:]]
    return "\n".join(out) + "\n"


def _cell(c) -> str:
    if isinstance(c, bool):
        return "yes" if c else "no"
    if c is None:
        return "-"
    if isinstance(c, list):
        return "; ".join(_cell(x) for x in c) if c else "{0}"
    return str(c)


def _basis_text(rows) -> str:
    if not rows:
        return "{0}"
    return " ".join("(" + ",".join(r) + ")" for r in rows)


def _moduli_table(doc: dict) -> str:
    parts = []
    p = doc["problem"]
    x2 = ", ".join(f"{g['name']}:{g['degree']}" for g in p["x2_generators"])
    for g in doc["per_generator"]:
        parts.append(f"### {g['generator']} (degree {g['degree']}), X_2 = [{x2}], case {g['case']}\n\n")
        parts.append(f"ambient basis: {', '.join(g['ambient_basis']) or '(empty)'}\n\n")
        rows = []
        for name in SPACES:
            s = g["spaces"][name]
            rows.append([name, s["dim"], g["quotients"].get(name), _basis_text(s["basis_rows"])])
        parts.append(markdown_table(["space", "dim", "quotient dim", "basis"], rows))
        parts.append("\n")
    rows = [[name, doc["totals"][name], doc["quotient_totals"].get(name)] for name in SPACES]
    parts.append("### totals\n\n")
    parts.append(markdown_table(["space", "dim", "quotient dim"], rows))
    parts.append(f"\nsplitting verified: {_cell(doc['splitting_verified'])}\n")
    return "".join(parts)


def _closed_form_table(doc: dict) -> str:
    rows = []
    for r in doc["results"]:
        for name, e in r["spaces"].items():
            rows.append([r["deg_x"], r["deg_y"], r["ratio"], name,
                         e["verdict"], e.get("oracle_verdict")])
    return markdown_table(["deg x", "deg y", "k", "space", "verdict", "oracle"], rows)


def _assertion_table(doc: dict) -> str:
    rows = []
    for r in doc["results"]:
        for c in r["claims"]:
            rows.append([r["deg_x"], r["deg_y"], r["ratio"], r["claimed_case"], c["claim"],
                         c["holds"], f"{c['lhs_dim']} / {c['rhs_dim']}"])
        for c in r["sketch_chain"]:
            rows.append([r["deg_x"], r["deg_y"], r["ratio"], "sketch", c["claim"],
                         c["holds"], f"{c['lhs_dim']} / {c['rhs_dim']}"])
    return markdown_table(["deg x", "deg y", "k", "case", "claim", "holds", "dims"], rows)


def _survey_table(doc: dict) -> str:
    s = doc["survey"]
    parts = [f"order {s['order']}: {s['tables']} normalized tables, {s['associative']} associative\n\n"]
    parts.append(markdown_table(["property", "tables"], list(s["property_counts"].items())))
    parts.append("\n")
    parts.append(markdown_table(["implication", "counterexamples"],
                                [[k, v["counterexamples"]] for k, v in s["implications"].items()]))
    parts.append("\n")
    parts.append(markdown_table(["non-implication", "witness"],
                                [[k, " / ".join(" ".join(map(str, r)) for r in t)]
                                 for k, t in s["witnesses"].items()]))
    return "".join(parts)


def _check_table(doc: dict) -> str:
    return markdown_table(["valid", "inv", "pa", "mo", "sa"],
                          [[doc["valid"]] + [doc["properties"].get(t) for t in ("inv", "pa", "mo", "sa")]])


def to_table(doc: dict) -> str:
    cmd = doc["command"]
    if cmd == "report":
        return _moduli_table(doc)
    if cmd == "sweep":
        return "\n".join(f"## k = {k}\n\n" + _moduli_table(r)
                         for k, r in zip(doc["k_values"], doc["reports"]))
    if cmd == "closed-form-check":
        return _closed_form_table(doc)
    if cmd == "assertion":
        return _assertion_table(doc)
    if cmd == "loops-survey":
        return _survey_table(doc)
    if cmd == "loops-check":
        return _check_table(doc)
    raise ValueError(f"no table layout for {cmd!r}")
