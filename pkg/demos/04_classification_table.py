"""Replay the classification of strongly stable automorphisms modulo inner ones for all eight varieties.

Run: python3 demos/04_classification_table.py   (about 20 seconds)
"""

from verbalops.autgroup import TABLE, theorem_report
from verbalops.relfree import VarietySpec

for name in TABLE:
    report = theorem_report(VarietySpec.parse(name))
    print(f"{name:18s} {report.lines()[-1]}")
    for check_name, ok, detail in report.checks:
        if not ok:
            print(f"    failed: {check_name}: {detail}")
