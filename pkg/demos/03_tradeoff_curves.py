"""
Capacity, lifted bound and interpolation at (51, 50, 50)
========================================================

Three curves over gamma in [1, 50] with alpha = 1: the functional-repair
capacity, the exact-repair bound from lifting an MSR code, and the straight
line between the MBR and MSR points. Values are exact fractions.
"""

from pathlib import Path

from exactrepair import analytics as an

rows = an.tradeoff_curves(51)
for cap, bound, interp in rows[:5] + rows[-2:]:
    print(f"gamma={cap.gamma!s:>3}  capacity={cap.value!s:>8}  bound={bound.value!s:>8}  "
          f"line={interp.value}")

worst = min(range(1, 51), key=lambda i: an.bound_to_capacity_ratio(51, i))
print("worst ratio at gamma =", worst, ":", an.bound_to_capacity_ratio(51, worst))

# for large n the ratio at gamma = i*alpha tends to 2i^2 / (2i^2 + i - 1)
for i in (1, 2, 3, 10):
    print(i, an.large_n_ratio_limit(i), float(an.bound_to_capacity_ratio(10_000, i)))

out = Path("tradeoff_51.csv")
out.write_text(an.curves_csv(rows))
print("wrote", out)
