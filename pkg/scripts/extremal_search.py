#!/usr/bin/env python3
"""Search for a supporting functional certifying the section ray extremal.

Rebuilds the intersection table for each requested parameter value, runs
the exact certificate search, and prints the functional it finds together
with its values on the generating rays.
"""

import argparse
import sys

from towercalc import run_scenario
from towercalc.scenarios import SYMBOLIC


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--n",
        type=int,
        nargs="*",
        default=[3, 4, 5],
        metavar="N",
        help="integer parameter values to certify in addition to symbolic",
    )
    args = parser.parse_args(argv)

    exit_code = 0
    for n in [SYMBOLIC] + list(args.n):
        report = run_scenario("extremal-sigma-ray", n)
        cert = next(c for c in report.checks if c.name == "certificate")
        status = cert.computed["status"]
        print("n=%-9s status %s" % (n, status))
        print("  functional  (%s)" % ", ".join(cert.computed["functional"]))
        print("  height      %s" % cert.computed["height"])
        print("  ray values  (%s)" % ", ".join(cert.computed["values"]))
        if not report.passed or status != "certified":
            exit_code = 1
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
