"""Brute-force references kept independent of the closed forms under test."""
from fractions import Fraction


def capacity_scaled(n, i):
    """(n-1) * C_{n-1,n-1}(1, i) by direct summation, in integers."""
    m = n - 1
    return sum(min(m, (m - j) * i) for j in range(m))


def ratio_direct(n, i):
    bound = Fraction(n * i, 1 + i)
    return bound / Fraction(capacity_scaled(n, i), n - 1)


def capacity_brute(k, d, alpha, gamma):
    total = Fraction(0)
    for j in range(k):
        share = Fraction(d - j, d) * gamma
        total += alpha if alpha < share else share
    return total
