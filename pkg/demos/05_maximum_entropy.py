#!/usr/bin/env python3
"""Maximum entropy on a finite state space via the exponential-family dual.

Constraining observable means picks out the exponential-family distribution
that is maximally noncommittal about everything else.
"""

import numpy as np

import meanlab as ml

faces = ml.FiniteObservable((1, 2, 3, 4, 5, 6))

print("Die with no constraints:")
sol = ml.maxent_solve(ml.MaxEntProblem(n=6, observables=(), targets=()))
print(f"  p = {np.round(sol.distribution.as_array(), 6).tolist()}")
print(f"  entropy = {sol.entropy:.6f} bits (log2 6 = {np.log2(6):.6f})\n")

print("Die constrained to mean 4.5 (loaded upward):")
sol = ml.maxent_solve(ml.MaxEntProblem(n=6, observables=(faces,), targets=(4.5,)))
print(f"  p = {np.round(sol.distribution.as_array(), 4).tolist()}")
print(f"  beta = {sol.betas[0]:+.6f}, entropy = {sol.entropy:.6f} bits, "
      f"solved in {sol.newton_steps} Newton steps")
print(f"  achieved mean = "
      f"{ml.expected_value(sol.distribution, faces):.12f}\n")

print("Adding a second-moment constraint E[X^2] = 22 narrows it further:")
squares = ml.FiniteObservable(tuple(i * i for i in range(1, 7)))
sol2 = ml.maxent_solve(ml.MaxEntProblem(n=6, observables=(faces, squares),
                                        targets=(4.5, 22.0)))
print(f"  p = {np.round(sol2.distribution.as_array(), 4).tolist()}")
print(f"  entropy = {sol2.entropy:.6f} bits (was {sol.entropy:.6f})\n")

print("Entropy ladder as the mean target slides across the attainable range:")
for target in (1.5, 2.5, 3.5, 4.5, 5.5):
    s = ml.maxent_solve(ml.MaxEntProblem(n=6, observables=(faces,),
                                         targets=(target,)))
    bar = "#" * int(round(s.entropy * 12))
    print(f"  mean {target:.1f}: H = {s.entropy:.4f} bits  {bar}")

print("\nTargets at or beyond the extreme faces are rejected, not approximated:")
for target in (6.0, 7.0):
    try:
        ml.maxent_solve(ml.MaxEntProblem(n=6, observables=(faces,),
                                         targets=(target,)))
    except ml.InfeasibleTargetError as exc:
        print(f"  target {target}: {exc}")
