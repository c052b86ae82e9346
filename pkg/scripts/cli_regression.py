"""Run every CLI command on every problem file and write the JSON reports to a directory.

    python scripts/cli_regression.py OUTDIR [--problems DIR] [--skip command:name ...]

Each report lands in OUTDIR/<name>.<command>.json; exit codes go to
OUTDIR/exit_codes.json.  Two runs with the same inputs must produce
byte-identical directories.
"""

from __future__ import annotations

import argparse
import io
import json
import time
from pathlib import Path

from rxbilip.cli import COMMANDS, execute

ROOT = Path(__file__).resolve().parents[1]


def run_matrix(outdir: Path, problems: Path, skip: frozenset[str] = frozenset(), verbose: bool = True) -> dict:
    outdir.mkdir(parents=True, exist_ok=True)
    codes = {}
    for path in sorted(problems.glob("*.ini")):
        for cmd in COMMANDS:
            key = f"{cmd}:{path.stem}"
            if key in skip:
                continue
            out = outdir / f"{path.stem}.{cmd}.json"
            t0 = time.perf_counter()
            code, _ = execute([cmd, str(path), "--out", str(out)], io.StringIO())
            codes[key] = code
            if verbose:
                print(f"{key:32s} exit {code}  {time.perf_counter() - t0:6.2f} s", flush=True)
    (outdir / "exit_codes.json").write_text(json.dumps(codes, indent=2, sort_keys=True) + "\n")
    return codes


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--problems", type=Path, default=ROOT / "problems")
    ap.add_argument("--skip", nargs="*", default=[], help="command:name pairs to leave out")
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args(argv)
    run_matrix(args.outdir, args.problems, frozenset(args.skip), not args.quiet)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
