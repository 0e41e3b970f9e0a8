"""
Bound versus capacity as (n, k, d) grow together
================================================

Shift (n, k, d) to (n + M, k + M, d + M) and fix the bandwidth at the mix
s * gamma_MSR + (1 - s) * gamma_MBR. The lifted bound divided by the
functional-repair capacity approaches 1.
"""

from fractions import Fraction

from exactrepair import analytics as an

for n, k, d in [(3, 2, 2), (5, 3, 4), (6, 3, 3)]:
    for s in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        gaps = [float(1 - an.asymptotic_ratio(n, k, d, M, s).ratio) for M in (10**2, 10**3, 10**4, 10**5)]
        print((n, k, d), f"s={s}", " ".join(f"{g:.2e}" for g in gaps))

rep = an.asymptotic_ratio(3, 2, 2, 10**6, Fraction(1, 2))
for key, value in rep.scaled().items():
    print(f"{key:7s} {float(value):.6f}  -> {rep.limits()[key]}")
