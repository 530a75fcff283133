"""Pilot run that pins the remnant-genericity threshold used by the acceptance suite.

Runs the n = m = 2, l = 1 remnant-density experiment at p = 10 and p = 100
with a pilot seed (different from the acceptance seed) and writes the
estimates plus the derived threshold to tests/data/pilot_remnant_density.json.

    python scripts/pilot_remnant_density.py
"""

import json
import math
from pathlib import Path

from twistconj.density import remnant_density_experiment

PILOT_SEED = 4_242
SAMPLES = 10_000
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "pilot_remnant_density.json"


def main():
    runs = {
        p: remnant_density_experiment(2, 2, 1, p, SAMPLES, PILOT_SEED).to_dict()
        for p in (10, 100)
    }
    top = runs[100]
    # four standard errors plus half a percent of slack, rounded down to 0.01;
    # a zero-variance pilot still leaves a margin
    margin = 4 * top["std_error"] + 0.005
    threshold = math.floor((top["estimate"] - margin) * 100) / 100
    doc = {
        "n": 2,
        "m": 2,
        "l": 1,
        "samples": SAMPLES,
        "pilot_seed": PILOT_SEED,
        "estimate_p10": runs[10]["estimate"],
        "std_error_p10": runs[10]["std_error"],
        "estimate_p100": top["estimate"],
        "std_error_p100": top["std_error"],
        "threshold_p100": threshold,
    }
    OUT.write_text(json.dumps(doc, indent=2) + "\n")
    print(json.dumps(doc, indent=2))


if __name__ == "__main__":
    main()
