"""Run the acceptance suites outside pytest and print every report.

Usage: python scripts/run_acceptance.py [suite name ...]
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

import acceptance_suites as S  # noqa: E402


def main(names):
    names = names or list(S.SUITES)
    unknown = [n for n in names if n not in S.SUITES]
    if unknown:
        sys.exit(f"unknown suites: {unknown}; choose from {list(S.SUITES)}")
    failed = []
    for name in names:
        start = time.perf_counter()
        rep = S.SUITES[name]()
        print(rep.text())
        print(f"({name}: {time.perf_counter() - start:.1f}s)\n")
        if not rep.passed:
            failed.append(name)
    print("ALL PASS" if not failed else f"FAILED: {', '.join(failed)}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
