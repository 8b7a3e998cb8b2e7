"""
Mass functions in five minutes
==============================

Two sources disagree a little about which of three objects a point sits
next to. We fuse them and read off a decision.
"""

from beliefhc import Frame, conjunctive_combine, dempster_combine, make_simple_mass, pignistic

frame = Frame(["x1", "x2", "x3"])

# source one is fairly sure about x1; source two leans towards x2
m1 = make_simple_mass(frame, {"x1": 0.6})
m2 = make_simple_mass(frame, {"x2": 0.5, "x3": 0.1})
print("m1:", m1.to_dict())
print("m2:", m2.to_dict())

# the unnormalized rule keeps the clash on the empty set
both = conjunctive_combine(m1, m2)
print(f"conflict m(empty) = {both.conflict:.3f}")

# Dempster's rule spreads it back over the survivors
fused = dempster_combine(m1, m2)
for subset, mass in fused.items():
    print(f"  m({sorted(subset) or '{}'}) = {mass:.4f}")

# pignistic probabilities split each mass evenly inside its set
p = pignistic(fused)
for e in frame.elements:
    print(f"BetP({e}) = {p[e]:.4f}")
print("decision:", max(frame.elements, key=lambda e: p[e]))
