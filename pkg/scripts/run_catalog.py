"""Run the example catalog and write one JSON report per example."""

import argparse
import json
from pathlib import Path

from sl2kit.catalog import expand_all, run_example


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reports", help="output directory")
    ap.add_argument("--no-ms", action="store_true", help="omit timings for byte-stable output")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in expand_all():
        rep = run_example(name)
        path = out / f"{name.replace('(', '_').replace(')', '')}.json"
        path.write_text(json.dumps(rep.to_json(include_ms=not args.no_ms), indent=2) + "\n")
        counts = ", ".join(f"{k}={v}" for k, v in sorted(rep.counts().items()))
        print(f"{name:20s} {counts}")


if __name__ == "__main__":
    main()
