"""The five classical-function reproductions of the three-term identity
and the ten exact equations obtained by eliminating their common factor.

Each transmutation T1..T5 rebuilds the terms a_l = c_l^2 g_l as products
of function moduli pinned on level curves: the second-generation factor
(target c_l) always enters squared, the first-generation factor (target
the unsquared weight h_l) enters squared for l = 1, 2 and to the first
power for l = 3, mirroring g_1 = h_1^2, g_2 = h_2^2, g_3 = h_3. Printed
sources occasionally drop the square on the l = 3 second-generation
factor; the power rule above is forced by term equality b_l = a_l and is
applied uniformly (see the project notes on reconciled typos).

Crossbreeding two instances A, B with the same factor theta multiplies
the outer terms of one against the middle term of the other:
(A.b1 + A.b3) B.b2 = (B.b1 + B.b3) A.b2, exactly, since both sides
equal theta A.b2 B.b2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .critline import MotherInstance
from .errors import AccuracyError, ContractError, DomainError
from .levelset import LevelAssignment

TRANSMUTATION_IDS = ("T1", "T2", "T3", "T4", "T5")

# (first-generation slot, second-generation slot) per transmutation
TRANSMUTATION_SLOTS = {
    "T1": (3, 8),
    "T2": (4, 9),
    "T3": (5, 10),
    "T4": (6, 11),
    "T5": (7, 12),
}

# the ten unordered pairs, in the canonical listing order
CROSSBREED_PAIRS = (
    ("T1", "T2"), ("T1", "T3"), ("T1", "T4"), ("T1", "T5"),
    ("T2", "T3"), ("T2", "T4"), ("T2", "T5"),
    ("T3", "T4"), ("T3", "T5"), ("T4", "T5"),
)

TERM_EQUALITY_TOL = 1e-8


@dataclass(frozen=True)
class TransmutationInstance:
    """Three composite terms b_l reproducing a_l, with the shared factor."""

    id: str
    b: tuple[float, float, float]
    theta: float

    def __post_init__(self) -> None:
        if self.id not in TRANSMUTATION_IDS:
            raise DomainError(f"unknown transmutation id {self.id!r}")
        if not all(x > 0.0 and math.isfinite(x) for x in self.b):
            raise DomainError(f"terms must be positive finite, got {self.b}")

    @property
    def three_term_residual(self) -> float:
        """|b1 - theta b2 + b3| relative to the largest term."""
        return abs(self.b[0] - self.theta * self.b[1] + self.b[2]) / max(self.b)


@dataclass(frozen=True)
class MetaEquation:
    """One crossbred identity (a1+a3) b2 = (b1+b3) a2."""

    pair: tuple[str, str]
    lhs: float
    rhs: float
    residual: float

    @property
    def label(self) -> str:
        return f"{self.pair[0]}x{self.pair[1]}"


def make_transmutation(tid: str, inst: MotherInstance,
                       assign: LevelAssignment,
                       tol: float = TERM_EQUALITY_TOL) -> TransmutationInstance:
    """Assemble b_l from the assignment's certified points and certify
    term equality b_l = a_l and the three-term identity."""
    if tid not in TRANSMUTATION_SLOTS:
        raise DomainError(f"unknown transmutation id {tid!r}")
    n1, n2 = TRANSMUTATION_SLOTS[tid]
    b = []
    for l in (1, 2, 3):
        p1 = assign.point(n1, l)
        p2 = assign.point(n2, l)
        w1 = p1.spec.family.abs_value(p1.s.to_complex())
        w2 = p2.spec.family.abs_value(p2.s.to_complex())
        if l == 3:
            b_l = w1 * (w2 * w2)
        else:
            b_l = (w1 * w1) * (w2 * w2)
        a_l = inst.a[l - 1]
        if abs(b_l - a_l) > tol * a_l:
            raise AccuracyError(
                f"transmutation {tid}, term l={l}: |b - a| = "
                f"{abs(b_l - a_l):.3e} exceeds {tol:.1e} * {a_l:.6g}"
            )
        b.append(b_l)
    out = TransmutationInstance(id=tid, b=tuple(b), theta=inst.theta)
    if out.three_term_residual > tol:
        raise AccuracyError(
            f"transmutation {tid}: three-term residual {out.three_term_residual:.3e}"
        )
    return out


def crossbreed(a: TransmutationInstance, b: TransmutationInstance) -> MetaEquation:
    """Eliminate the common factor between two instances."""
    if a.theta != b.theta:
        raise ContractError(
            f"cannot crossbreed across different factors ({a.theta} vs {b.theta})"
        )
    lhs = (a.b[0] + a.b[2]) * b.b[1]
    rhs = (b.b[0] + b.b[2]) * a.b[1]
    residual = abs(lhs - rhs) / max(lhs, rhs)
    return MetaEquation(pair=(a.id, b.id), lhs=lhs, rhs=rhs, residual=residual)


def second_generation(inst: MotherInstance,
                      assign: LevelAssignment) -> list[MetaEquation]:
    """All ten crossbreeds of the five transmutations, in listing order."""
    instances = {
        tid: make_transmutation(tid, inst, assign) for tid in TRANSMUTATION_IDS
    }
    return [crossbreed(instances[x], instances[y]) for (x, y) in CROSSBREED_PAIRS]


def crossbreeding_property_residuals(count: int, seed: int = 123456789) -> np.ndarray:
    """Residuals of the generic elimination identity on random triples.

    Draws theta > 0 and positive middle terms, splits the outer sum
    randomly, and returns |(a1+a3) b2 - (b1+b3) a2| / max(lhs, rhs).
    """
    rng = np.random.RandomState(seed)
    theta = np.exp(rng.uniform(-3.0, 3.0, size=count))
    a2 = np.exp(rng.uniform(-6.0, 6.0, size=count))
    b2 = np.exp(rng.uniform(-6.0, 6.0, size=count))
    ua = rng.uniform(1e-6, 1.0 - 1e-6, size=count)
    ub = rng.uniform(1e-6, 1.0 - 1e-6, size=count)
    a1 = ua * theta * a2
    a3 = (1.0 - ua) * theta * a2
    b1 = ub * theta * b2
    b3 = (1.0 - ub) * theta * b2
    lhs = (a1 + a3) * b2
    rhs = (b1 + b3) * a2
    return np.abs(lhs - rhs) / np.maximum(lhs, rhs)
