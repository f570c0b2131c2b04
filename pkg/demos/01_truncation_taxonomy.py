#!/usr/bin/env python3
"""Five ways a windowed mean can behave.

The partial mean of a measure over [c - M, c + M] either settles as M grows
or it does not, and over all centers c exactly one of five patterns occurs.
This script scans one representative measure per pattern.
"""

import numpy as np

import meanlab as ml

MEASURES = [
    ("alternating dyadic comb", ml.comb_ex1()),
    ("symmetric dyadic comb", ml.comb_ex2()),
    ("standard Cauchy", ml.cauchy(0, 1)),
    ("two-sided power tail (a=1.5, b=1.8)", ml.power_tail(1.5, 1.8)),
    ("lopsided triadic comb", ml.comb_ex4()),
    ("negated triadic comb", ml.comb_ex4().negate()),
]

print("Sampling partial means s(c, M) along M = 1.1 * 1.5^k, k < 60,")
print("plus probe radii straddling every atom-crossing event.\n")

for name, measure in MEASURES:
    report = ml.classify_taxonomy(measure)
    print(f"{name}")
    for c, verdict in sorted(report.per_center.items()):
        extra = ""
        if verdict.kind == "converged":
            extra = f"value {verdict.value:+.3e}"
        elif verdict.oscillates and verdict.liminf_est is not None:
            extra = f"band [{verdict.liminf_est:.3g}, {verdict.limsup_est}]" \
                if verdict.limsup_est is not None else \
                f"dips to {verdict.liminf_est:.3g}"
        print(f"  c = {c:+.0f}: {verdict.kind:26s} {extra}")
    if report.case == "I":
        tag = "no center settles"
    elif report.case == "II":
        tag = f"only c* = {report.c_star} settles"
    elif report.case == "III_finite":
        tag = f"every center settles at {report.common_value:.2e}"
    elif report.case == "III_plus_inf":
        tag = "every center runs away to +infinity"
    elif report.case == "III_minus_inf":
        tag = "every center runs away to -infinity"
    elif report.case == "IV":
        tag = f"+infinity above c0 ~ {report.c_threshold}, no limit below"
    elif report.case == "V":
        tag = f"-infinity below c0 ~ {report.c_threshold}, no limit above"
    else:
        tag = report.case
    print(f"  => case {report.case}: {tag}\n")

print("A closer look at the alternating comb at c = 0: every atom contributes")
print("exactly +1 or -1 to the window moment, so the series never leaves {0, -1}:")
series = ml.limit_scan(ml.comb_ex1(), 0.0)
base = series.values[~series.is_probe]
print("  first 20 schedule values:", base[:20].tolist())
counts = {v: int(np.sum(series.values == v)) for v in (0.0, -1.0)}
print(f"  occurrences over the full scan: {counts}")
