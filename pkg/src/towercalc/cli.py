"""Command-line front end for the scenario suite.

Subcommands:

* ``verify``  - evaluate a scenario (built-in or from a document file) and
  emit its report; exit 0 when every check passes, 1 when any fails.
* ``table``   - print the tabular checks of a scenario (pairing tables,
  recorded matrices, kernel combinations).
* ``cone``    - print the cone generators and certificates of a scenario.
* ``list``    - list the built-in scenarios.
* ``export``  - print a scenario document as canonical JSON.

``--n`` accepts an integer >= 3, ``symbolic``, or ``range:A..B`` (inclusive,
aggregating one report per value).  ``--format`` selects ``text`` or
``json``.  ``--output`` writes to a file instead of stdout; without it,
``verify`` also drops a copy of the report into ``$TOWERCALC_REPORT_DIR``
when that variable is set.  Usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .exactnum import ParamPoly
from .scenarios import (
    BadParameterError,
    PolicyError,
    SYMBOLIC,
    ScenarioError,
    ScenarioFileError,
    UnknownScenarioError,
    canonical_json,
    evaluate_doc,
    export_scenario,
    list_scenarios,
    load_scenario_file,
    scenario_doc,
)

REPORT_DIR_ENV = "TOWERCALC_REPORT_DIR"
_RANGE_RE = re.compile(r"^range:(\d+)\.\.(\d+)$")


class UsageError(Exception):
    pass


def _parse_n_spec(text: str) -> list:
    if text == SYMBOLIC:
        return [SYMBOLIC]
    match = _RANGE_RE.match(text)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo < 3:
            raise UsageError("n must be >= 3 (range starts at %d)" % lo)
        if hi < lo:
            raise UsageError("empty range %s" % text)
        return list(range(lo, hi + 1))
    try:
        n = int(text)
    except ValueError:
        raise UsageError(
            "invalid n %r: use an integer >= 3, %r, or range:A..B" % (text, SYMBOLIC)
        )
    if n < 3:
        raise UsageError("n must be >= 3 (got %d)" % n)
    return [n]


def _n_label(n) -> str:
    return n if n == SYMBOLIC else str(n)


def _emit(text: str, args, default_basename: str | None = None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return
    report_dir = os.environ.get(REPORT_DIR_ENV)
    if report_dir and default_basename:
        os.makedirs(report_dir, exist_ok=True)
        with open(
            os.path.join(report_dir, default_basename), "w", encoding="utf-8"
        ) as fh:
            fh.write(text)
    sys.stdout.write(text)


def _pretty(entry) -> str:
    """Compact text form of a serialized report value."""
    if isinstance(entry, str):
        return entry
    if isinstance(entry, dict) and all(k.isdigit() for k in entry):
        try:
            return str(ParamPoly.from_coeff_strings(entry))
        except (ValueError, ZeroDivisionError):
            pass
    return json.dumps(entry, sort_keys=True)


def _grid(row_labels, col_labels, entries) -> str:
    cells = [[""] + [str(c) for c in col_labels]]
    for label, row in zip(row_labels, entries):
        cells.append([str(label)] + [_pretty(e) for e in row])
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join(
        "  ".join(s.rjust(w) for s, w in zip(r, widths)).rstrip() for r in cells
    )


def _vector(coords) -> str:
    return "(%s)" % ", ".join(_pretty(c) for c in coords)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args) -> int:
    ns = _parse_n_spec(args.n)
    if args.scenario_file:
        doc = load_scenario_file(args.scenario_file)
    else:
        doc = scenario_doc(args.scenario)
    reports = [evaluate_doc(doc, n) for n in ns]
    if args.format == "json":
        if len(reports) == 1:
            text = reports[0].to_json_text()
        else:
            text = canonical_json([r.to_json_dict() for r in reports])
    else:
        text = "\n".join(r.render_text() for r in reports)
    basename = "%s.n%s.%s" % (
        doc["name"],
        "-".join(_n_label(n) for n in ns),
        "json" if args.format == "json" else "txt",
    )
    _emit(text, args, default_basename=basename)
    return 0 if all(r.passed for r in reports) else 1


def _tabular_blocks(doc, report):
    computed = {c.name: c.computed for c in report.checks}
    tables = []
    kernels = []
    maps_by_name = {m["name"]: m for m in doc.get("maps", ())}
    for entry in doc.get("expect", ()):
        kind = entry["check"]
        if kind == "pairing-table":
            tables.append(
                {
                    "check": entry["name"],
                    "rows": list(entry["curves"]),
                    "columns": list(entry["divisors"]),
                    "entries": computed[entry["name"]],
                }
            )
        elif kind == "map-matrix":
            m = maps_by_name[entry["map"]]
            tables.append(
                {
                    "check": entry["name"],
                    "rows": list(m["target"]),
                    "columns": list(m["source"]),
                    "entries": computed[entry["name"]],
                }
            )
        elif kind == "kernel-polynomials":
            kernels.append(
                {
                    "check": entry["name"],
                    "combinations": computed[entry["name"]],
                }
            )
    return tables, kernels


def _cmd_table(args) -> int:
    ns = _parse_n_spec(args.n)
    if len(ns) != 1:
        raise UsageError("table prints a single parameter value at a time")
    doc = scenario_doc(args.scenario)
    report = evaluate_doc(doc, ns[0])
    tables, kernels = _tabular_blocks(doc, report)
    if not tables and not kernels:
        raise UsageError("scenario %r has no tabular checks" % doc["name"])
    if args.format == "json":
        text = canonical_json(
            {"scenario": doc["name"], "tables": tables, "kernels": kernels}
        )
    else:
        blocks = ["scenario: %s" % doc["name"]]
        for t in tables:
            blocks.append(
                "table %s\n%s" % (t["check"], _grid(t["rows"], t["columns"], t["entries"]))
            )
        for k in kernels:
            blocks.append("kernel %s: %s" % (k["check"], ", ".join(k["combinations"])))
        text = "\n\n".join(blocks)
    _emit(text, args)
    return 0


def _cmd_cone(args) -> int:
    ns = _parse_n_spec(args.n)
    if len(ns) != 1:
        raise UsageError("cone prints a single parameter value at a time")
    doc = scenario_doc(args.scenario)
    report = evaluate_doc(doc, ns[0])
    computed = {c.name: c.computed for c in report.checks}
    cones = []
    certificates = []
    for entry in doc.get("expect", ()):
        if entry["check"] == "mori-chain":
            value = computed[entry["name"]]
            if "generators" in value:
                cones.append(dict(value, check=entry["name"]))
        elif entry["check"] == "extremal-certificate":
            certificates.append(dict(computed[entry["name"]], check=entry["name"]))
    if not cones and not certificates:
        raise UsageError("scenario %r has no cone checks" % doc["name"])
    if args.format == "json":
        text = canonical_json(
            {"scenario": doc["name"], "cones": cones, "certificates": certificates}
        )
    else:
        blocks = ["scenario: %s" % doc["name"]]
        for cone in cones:
            lines = ["cone %s" % cone["check"]]
            for name, vec in zip(cone["generator_names"], cone["generators"]):
                lines.append("  %s: %s" % (name, _vector(vec)))
            for step in cone["steps"]:
                conds = step["conditions"]
                if all(conds.values()):
                    lines.append("  step %s: all conditions hold" % step["space"])
                else:
                    failed = sorted(k for k, v in conds.items() if not v)
                    lines.append(
                        "  step %s: FAILED %s" % (step["space"], "; ".join(failed))
                    )
            blocks.append("\n".join(lines))
        for cert in certificates:
            line = "certificate %s: status %s" % (cert["check"], cert["status"])
            if cert.get("functional"):
                line += ", functional %s, height %s" % (
                    _vector(cert["functional"]),
                    cert["height"],
                )
            blocks.append(line)
        text = "\n\n".join(blocks)
    _emit(text, args)
    return 0


def _cmd_list(args) -> int:
    infos = list_scenarios()
    if args.format == "json":
        text = canonical_json(infos)
    else:
        width = max(len(i["name"]) for i in infos)
        lines = []
        for info in infos:
            marker = "  [numeric only]" if info["n_policy"] == "numeric-only" else ""
            lines.append(
                "%s  %s%s" % (info["name"].ljust(width), info["description"], marker)
            )
        text = "\n".join(lines)
    _emit(text, args)
    return 0


def _cmd_export(args) -> int:
    _emit(export_scenario(args.scenario), args)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="towercalc",
        description="exact verification of the resolution towers' numerical content",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_n(p):
        p.add_argument(
            "--n",
            default=SYMBOLIC,
            help="integer >= 3, 'symbolic', or 'range:A..B' (default: symbolic)",
        )

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    def add_output(p):
        p.add_argument("--output", help="write to this file instead of stdout")

    p_verify = sub.add_parser("verify", help="evaluate a scenario and emit its report")
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", help="built-in scenario name")
    group.add_argument("--scenario-file", help="path to a scenario document")
    add_n(p_verify)
    add_format(p_verify)
    add_output(p_verify)

    p_table = sub.add_parser("table", help="print a scenario's tabular checks")
    p_table.add_argument("--scenario", required=True)
    add_n(p_table)
    add_format(p_table)
    add_output(p_table)

    p_cone = sub.add_parser("cone", help="print a scenario's cone checks")
    p_cone.add_argument("--scenario", required=True)
    add_n(p_cone)
    add_format(p_cone)
    add_output(p_cone)

    p_list = sub.add_parser("list", help="list the built-in scenarios")
    add_format(p_list)
    add_output(p_list)

    p_export = sub.add_parser("export", help="print a scenario document")
    p_export.add_argument("--scenario", required=True)
    add_output(p_export)

    return parser


_DISPATCH = {
    "verify": _cmd_verify,
    "table": _cmd_table,
    "cone": _cmd_cone,
    "list": _cmd_list,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return _DISPATCH[args.command](args)
    except (
        UsageError,
        UnknownScenarioError,
        BadParameterError,
        PolicyError,
        ScenarioFileError,
        ScenarioError,
    ) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
