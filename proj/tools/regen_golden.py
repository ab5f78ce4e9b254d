#!/usr/bin/env python3
"""Rewrite tests/golden/* from the built CLI.

usage: tools/regen_golden.py [path/to/coxhecke]
"""
import json
import pathlib
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
golden = root / "tests" / "golden"
binary = sys.argv[1] if len(sys.argv) > 1 else str(root / "build" / "coxhecke")

for entry in json.loads((golden / "manifest.json").read_text()):
    run = subprocess.run([binary, *entry["args"]], capture_output=True)
    if run.returncode != 0:
        sys.exit(f"{entry['name']}: exit {run.returncode}: {run.stderr.decode()}")
    (golden / entry["file"]).write_bytes(run.stdout)
    print(f"wrote {entry['file']}")
