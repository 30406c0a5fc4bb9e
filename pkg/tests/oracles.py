"""Independent oracles used to freeze expected values in the test suite.

These deliberately do not share code with the package: fixed-term
Euler-Maclaurin with literal Bernoulli fractions, an asymptotic-series
rotation angle, direct series for the Bessel zero bracket, and plain
AGM for the elliptic quarter period. Keep them boring.
"""

from __future__ import annotations

import math
from fractions import Fraction

# B_2 .. B_30, literal values.
_B2K = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
    Fraction(854513, 138), Fraction(-236364091, 2730), Fraction(8553103, 6),
    Fraction(-23749461029, 870), Fraction(8615841276005, 14322),
]


def zeta_half_oracle(t: float, n_terms: int = 1000) -> complex:
    """zeta(1/2 + it) by Euler-Maclaurin with a fixed 10^3-term head."""
    s = complex(0.5, t)
    total = 0.0 + 0.0j
    for n in range(1, n_terms):
        total += complex(n) ** (-s)
    big_n = float(n_terms)
    n_ms = complex(big_n) ** (-s)
    total += n_ms * big_n / (s - 1.0) + 0.5 * n_ms
    rising = s
    pw = n_ms / big_n
    for k, b in enumerate(_B2K, start=1):
        term = float(b) / math.factorial(2 * k) * rising * pw
        total += term
        if abs(term) < 1e-20 * abs(total):
            break
        rising *= (s + (2 * k - 1)) * (s + 2 * k)
        pw /= big_n * big_n
    return total


def zeta_mod_sq_oracle(t: float) -> float:
    """|zeta(1/2 + it)|^2 from the fixed-term oracle."""
    return abs(zeta_half_oracle(t)) ** 2


def theta_asymptotic(t: float) -> float:
    """Rotation angle by its large-t series (valid t >~ 5)."""
    return (
        0.5 * t * math.log(t / (2.0 * math.pi))
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t ** 3)
        + 31.0 / (80640.0 * t ** 5)
    )


def hardy_z_oracle(t: float) -> float:
    """Signed Z(t) built from the oracle zeta and the asymptotic angle."""
    th = theta_asymptotic(t)
    return (complex(math.cos(th), math.sin(th)) * zeta_half_oracle(t)).real


def bisect_oracle(f, a: float, b: float, iters: int = 200) -> float:
    fa = f(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def j0_series_oracle(x: float) -> float:
    """J_0 by its plain ascending series (adequate for |x| < 6)."""
    term = 1.0
    acc = 1.0
    q = -0.25 * x * x
    for m in range(60):
        term *= q / ((m + 1.0) ** 2)
        acc += term
        if abs(term) < 1e-19:
            break
    return acc


def agm_k_oracle(k: float, iters: int = 8) -> float:
    """K(k) by eight fixed AGM steps."""
    a, b = 1.0, math.sqrt(1.0 - k * k)
    for _ in range(iters):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def simpson_refine_oracle(f, a: float, b: float, rel: float = 1e-11,
                          max_levels: int = 24) -> float:
    """Composite Simpson with interval doubling until two levels agree."""
    prev = None
    n = 16
    for _ in range(max_levels):
        h = (b - a) / n
        acc = f(a) + f(b)
        for i in range(1, n):
            acc += f(a + i * h) * (4.0 if i % 2 else 2.0)
        val = acc * h / 3.0
        if prev is not None and abs(val - prev) <= rel * max(abs(val), 1e-30):
            return val
        prev = val
        n *= 2
    return prev
