#!/usr/bin/env python3
"""Run a full class report over every bundled scene and print a summary.

Useful as a quick end-to-end exercise of the whole pipeline: Groebner
Milnor numbers, class arithmetic, and all identity checks with both
product factor dimensions.
"""

import argparse
import sys
import time

from milnorcalc import build_report
from milnorcalc.corpus import CORPUS, load_corpus_scene


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--m",
        type=int,
        nargs="+",
        default=[1, 2],
        help="product factor dimensions to check (default: 1 2)",
    )
    args = parser.parse_args()

    failures = 0
    for name in sorted(CORPUS):
        start = time.perf_counter()
        scene, mu = load_corpus_scene(name)
        report = build_report(scene, mu, m_values=tuple(args.m))
        elapsed = time.perf_counter() - start
        bad = sorted(k for k, c in report.checks.items() if not c.passed)
        failures += len(bad)
        status = "ok" if not bad else "FAIL " + ",".join(bad)
        print(
            f"{name:28s} euler={report.euler:5d}  "
            f"milnor={str(report.milnor_class):16s} {elapsed:6.2f}s  {status}"
        )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
