#!/usr/bin/env python3
"""Run every built-in scenario and print one result line per evaluation.

Symbolic evaluation is used wherever the scenario allows it; numeric-only
scenarios and the optional ``--sweep`` run over small integer parameters.
Exits nonzero if any check fails anywhere.
"""

import argparse
import sys

from towercalc import list_scenarios, run_scenario
from towercalc.scenarios import POLICY_NUMERIC, SYMBOLIC


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sweep",
        type=int,
        nargs="*",
        default=[3, 4, 5],
        metavar="N",
        help="integer parameter values to evaluate in addition to symbolic",
    )
    args = parser.parse_args(argv)

    failures = 0
    evaluations = 0
    for info in list_scenarios():
        name = info["name"]
        values = list(args.sweep)
        if info["n_policy"] != POLICY_NUMERIC:
            values = [SYMBOLIC] + values
        for n in values:
            report = run_scenario(name, n)
            evaluations += 1
            ok = sum(1 for c in report.checks if c.status == "PASS")
            status = "PASS" if report.passed else "FAIL"
            print(
                "%-28s n=%-9s %s (%d/%d checks)"
                % (name, n, status, ok, len(report.checks))
            )
            if not report.passed:
                failures += 1
                for check in report.checks:
                    if check.status != "PASS":
                        print("    FAIL %s" % check.name)
    print()
    print("%d evaluations, %d failed" % (evaluations, failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
