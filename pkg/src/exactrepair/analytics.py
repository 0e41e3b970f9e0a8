"""Exact-rational capacity curves and the lower bounds obtained by lifting.

Every curve value is a :class:`fractions.Fraction`; decimal strings are
produced only for output (CSV and JSON rendering).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable

Rational = Fraction

CAPACITY, EXACT_BOUND, INTERPOLATION = "capacity", "bound", "interpolation"


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_kd(k: int, d: int):
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")


def functional_capacity(k: int, d: int, alpha, gamma) -> Fraction:
    """sum_{j=0}^{k-1} min(alpha, (d-j)/d * gamma), evaluated term by term."""
    _check_kd(k, d)
    alpha, gamma = _q(alpha), _q(gamma)
    if alpha <= 0 or gamma <= 0:
        raise ValueError("alpha and gamma must be positive")
    return sum((min(alpha, Fraction(d - j, d) * gamma) for j in range(k)), Fraction(0))


def functional_capacity_closed(k: int, d: int, alpha, gamma) -> Fraction:
    """Same value as :func:`functional_capacity` in O(1).

    Term j saturates at alpha iff j <= d(1 - alpha/gamma); the rest form an
    arithmetic series.
    """
    _check_kd(k, d)
    alpha, gamma = _q(alpha), _q(gamma)
    if alpha <= 0 or gamma <= 0:
        raise ValueError("alpha and gamma must be positive")
    saturated = min(k, max(0, math.floor(d * (1 - alpha / gamma)) + 1))
    # sum_{j=saturated}^{k-1} (d - j)
    m = k - saturated
    tail = m * d - (saturated + k - 1) * m // 2 if m else 0
    return saturated * alpha + gamma * Fraction(tail, d)


def msr_point(k: int, d: int, B) -> tuple[Fraction, Fraction]:
    _check_kd(k, d)
    B = _q(B)
    return B / k, d * B / (k * (d - k + 1))


def mbr_point(k: int, d: int, B) -> tuple[Fraction, Fraction]:
    _check_kd(k, d)
    B = _q(B)
    a = 2 * d * B / (k * (2 * d - k + 1))
    return a, a


def exact_lower_bound(n: int, k: int, d: int, alpha, i: int) -> tuple[Fraction, Fraction]:
    """(gamma, file size) guaranteed for exact repair by lifting an MSR code.

    gamma = (d-k+i) alpha / (d-k+1) and the storable size is n i alpha / (n-k+i).
    """
    if not 1 <= k <= d < n:
        raise ValueError(f"need 1 <= k <= d < n, got ({n}, {k}, {d})")
    if not 1 <= i <= k:
        raise ValueError(f"i={i} outside [1, {k}]")
    alpha = _q(alpha)
    return Fraction(d - k + i, d - k + 1) * alpha, Fraction(n * i, n - k + i) * alpha


def lift_factor(n_base: int, lifts: int) -> Fraction:
    """Growth of B/alpha after ``lifts`` lifts of an n_base-node code."""
    return Fraction(n_base + lifts, n_base)


def bound_to_capacity_ratio(n: int, i: int) -> Fraction:
    """Lower bound over functional capacity for n = k+1 = d+1 at gamma = i*alpha.

    Uses the floor closed form: with T = floor((n-1)(1 - 1/i)),
    ratio = (n i/(1+i)) / (T + 1 + i (n-T-1)(n-T-2) / (2(n-1))).
    """
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= i <= n-1, got n={n}, i={i}")
    T = math.floor(Fraction((n - 1) * (i - 1), i))
    # second sum is empty once T reaches n-2; the product vanishes there anyway
    denom = T + 1 + Fraction(i, 2 * (n - 1)) * (n - T - 1) * (n - T - 2)
    return Fraction(n * i, 1 + i) / denom


def bound_to_capacity_ratio_direct(n: int, i: int) -> Fraction:
    _, bound = exact_lower_bound(n, n - 1, n - 1, 1, i)
    return bound / functional_capacity(n - 1, n - 1, 1, i)


def large_n_ratio_limit(i: int) -> Fraction:
    """Limit of :func:`bound_to_capacity_ratio` as n grows: 2i^2 / (2i^2 + i - 1)."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return Fraction(2 * i * i, 2 * i * i + i - 1)


def gamma_mix(k_M: int, d_M: int, alpha, s) -> Fraction:
    """s * gamma_MSR + (1-s) * gamma_MBR at fixed node size alpha."""
    _check_kd(k_M, d_M)
    s, alpha = _q(s), _q(alpha)
    if not 0 <= s <= 1:
        raise ValueError(f"s={s} outside [0, 1]")
    mixed = s * d_M * alpha / (d_M - k_M + 1) + (1 - s) * alpha
    i = 1 + s * (k_M - 1)
    if mixed != alpha * (d_M - k_M + i) / (d_M - k_M + 1):
        raise ArithmeticError("mixed gamma does not match the index form")
    return mixed


def interpolation_baseline(k: int, d: int, B_at_MBR, B_at_MSR, gamma) -> Fraction:
    """Straight line between the MBR and MSR points at a common node size.

    The node size is alpha = B_at_MSR / k, so the line runs from
    (gamma_MBR = alpha, B_at_MBR) to (gamma_MSR = d alpha / (d-k+1), B_at_MSR).
    """
    _check_kd(k, d)
    B_at_MBR, B_at_MSR, gamma = _q(B_at_MBR), _q(B_at_MSR), _q(gamma)
    alpha = B_at_MSR / k
    g_lo, g_hi = alpha, d * alpha / (d - k + 1)
    if not g_lo <= gamma <= g_hi:
        raise ValueError(f"gamma={gamma} outside [{g_lo}, {g_hi}]")
    if g_lo == g_hi:
        return B_at_MSR
    return B_at_MBR + (gamma - g_lo) / (g_hi - g_lo) * (B_at_MSR - B_at_MBR)


@dataclass(frozen=True)
class CapacityPoint:
    gamma: Fraction
    value: Fraction
    source: str

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("capacity values are non-negative")


def tradeoff_curves(n: int = 51, alpha=1) -> list[tuple[CapacityPoint, CapacityPoint, CapacityPoint]]:
    """Capacity, lifted bound and interpolation at integer gamma for n = k+1 = d+1.

    With d = k the bound's gamma for index i is exactly i*alpha, so rows run
    over gamma = i*alpha, i = 1..n-1.
    """
    k = d = n - 1
    alpha = _q(alpha)
    B_mbr = functional_capacity(k, d, alpha, alpha)
    B_msr = k * alpha
    rows = []
    for i in range(1, k + 1):
        gamma, bound = exact_lower_bound(n, k, d, alpha, i)
        rows.append((
            CapacityPoint(gamma, functional_capacity_closed(k, d, alpha, gamma), CAPACITY),
            CapacityPoint(gamma, bound, EXACT_BOUND),
            CapacityPoint(gamma, interpolation_baseline(k, d, B_mbr, B_msr, gamma), INTERPOLATION),
        ))
    return rows


def to_decimal_string(x: Fraction, digits: int = 20) -> str:
    """Render with ``digits`` significant digits, trailing zeros trimmed."""
    x = _q(x)
    if x.denominator == 1:
        return str(x.numerator)
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x.numerator) / Decimal(x.denominator)
        return format(value.normalize(), "f")


def curves_csv(rows: Iterable[tuple[CapacityPoint, CapacityPoint, CapacityPoint]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["gamma", "capacity", "bound", "interpolation"])
    for cap, bound, interp in rows:
        w.writerow([to_decimal_string(v) for v in (cap.gamma, cap.value, bound.value, interp.value)])
    return buf.getvalue()


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    k: int
    d: int
    M: int
    s: Fraction
    i: Fraction
    i_floor: int
    t: Fraction
    g: Fraction
    capacity: Fraction
    ratio: Fraction
    h1: Fraction
    h2: Fraction
    h3: Fraction
    h4: Fraction

    @property
    def h_ratio(self) -> Fraction:
        """h1 / (h2 (h3 + h4)): the ratio with i and t treated as integers."""
        return self.h1 / (self.h2 * (self.h3 + self.h4))

    def scaled(self) -> dict[str, Fraction]:
        M = self.M
        return {"h1/M^3": self.h1 / M**3, "h2/M": self.h2 / M,
                "h3/M^2": self.h3 / M**2, "h4/M^2": self.h4 / M**2}

    def limits(self) -> dict[str, Fraction]:
        gap = self.d - self.k + 1
        return {"h1/M^3": 2 * self.s * gap, "h2/M": self.s, "h3/M^2": Fraction(2 * gap), "h4/M^2": Fraction(0)}

    def to_dict(self) -> dict:
        out = {"n": self.n, "k": self.k, "d": self.d, "M": self.M}
        for name in ("s", "i", "t", "g", "capacity", "ratio", "h1", "h2", "h3", "h4", "h_ratio"):
            v = getattr(self, name)
            out[name] = str(v)
            out[name + "_decimal"] = to_decimal_string(v)
        out["i_floor"] = self.i_floor
        out["scaled"] = {key: to_decimal_string(v) for key, v in self.scaled().items()} if self.M else None
        out["limits"] = {key: str(v) for key, v in self.limits().items()}
        return out


def asymptotic_ratio(n: int, k: int, d: int, M: int, s, alpha=1) -> AsymptoticReport:
    """Lifted bound over functional capacity for (n+M, k+M, d+M) at mix ``s``.

    g uses the exact i = 1 + s(k_M - 1); the capacity is taken at the gamma
    of floor(i), treating i as an integer as in the limit argument.
    """
    if not 1 <= k <= d < n:
        raise ValueError(f"need 1 <= k <= d < n, got ({n}, {k}, {d})")
    if M < 0:
        raise ValueError("M must be non-negative")
    s, alpha = _q(s), _q(alpha)
    if not 0 < s <= 1:
        raise ValueError(f"s={s} outside (0, 1]")
    n_M, k_M, d_M = n + M, k + M, d + M
    gap = d - k + 1
    i = 1 + s * (k_M - 1)
    i_floor = math.floor(i)
    g = n_M * i * alpha / (n - k + i)
    gamma = Fraction(d - k + i_floor, gap) * alpha
    capacity = functional_capacity_closed(k_M, d_M, alpha, gamma)
    t = d_M * s * (k_M - 1) / (gap + s * (k_M - 1))
    h1 = 2 * n_M * (1 + s * (k_M - 1)) * d_M * gap
    h2 = n - k + 1 + s * (k_M - 1)
    h3 = 2 * (t + 1) * d_M * gap
    h4 = (k_M - t - 1) * (2 * d - k + M - t) * (gap + s * (k_M - 1))
    return AsymptoticReport(n, k, d, M, s, i, i_floor, t, g, capacity, g / capacity,
                            _q(h1), _q(h2), _q(h3), _q(h4))
