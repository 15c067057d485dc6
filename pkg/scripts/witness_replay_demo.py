#!/usr/bin/env python3
"""Negative-verdict audit trail, end to end.

Builds the discriminating example whose finite image is nilpotent while the
group is not (a diagonal matrix of infinite multiplicative order together
with the coordinate swap), runs the test through the file interface, prints
the witness, and replays its claims with plain matrix arithmetic.
"""

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from nilmat.cli import parse_group_file, run_command
from nilmat.verify import verify_report


GROUP = {
    "field": {"kind": "Q"},
    "generators": [
        [["3", "0"], ["0", "1"]],
        [["0", "1"], ["1", "0"]],
    ],
}


def main():
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "group.json"
        path.write_text(json.dumps(GROUP))
        G = parse_group_file(path)
        report = run_command("is-nilpotent", G, group_file=path)
        print(f"verdict: nilpotent = {report['verdict']['nilpotent']}")
        cong = report["congruence"]
        print(f"reduction: p = {cong['p']}, image order = {report['image_order']}")
        w = report["witness"]
        print(f"witness: {w['kind']}")
        print(f"  {w['note']}")
        z = next(it for it in w["items"] if it["label"] == "z")
        print(f"  kernel element: {z['matrix']['rows']}")
        print(f"  as a word over the diagonalizable parts: {z['word']}")
        ok, checks = verify_report(report, G)
        print(f"independent verification: {'CONFIRMED' if ok else 'NOT CONFIRMED'}")
        for name, passed, detail in checks:
            print(f"  [{'ok' if passed else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))


if __name__ == "__main__":
    main()
