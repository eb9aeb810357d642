"""Closed-form reference values for even cycles and complete graphs.

Used as ground truth by the verification harness and attached to reports.
Binomials are exact integers (math.comb) before any float conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FamilyReference:
    family: str
    n: int
    exact_entropy: float                  # nats
    schmidt_spectrum: tuple[float, ...] | None
    omega_a: int
    new_bound: float                      # nats
    asymptotic_entropy: float | None      # nats


def cn_reference(n: int) -> FamilyReference:
    """Even cycle: entropy log 2 for all n; orbit count (2^{n/2} + 2^{ceil(n/4)})/2."""
    _require_even(n)
    omega = ((1 << (n // 2)) + (1 << math.ceil(n / 4))) // 2
    return FamilyReference(
        family="cycle",
        n=n,
        exact_entropy=math.log(2.0),
        schmidt_spectrum=(0.5, 0.5),
        omega_a=omega,
        new_bound=math.log(omega),
        asymptotic_entropy=None,
    )


def kn_reference(n: int) -> FamilyReference:
    """Even complete graph: n/2+1 Schmidt coefficients C(m,j)^2 / C(n,m), m = n/2."""
    _require_even(n)
    m = n // 2
    total = math.comb(n, m)
    spectrum = tuple(math.comb(m, j) ** 2 / total for j in range(m + 1))
    entropy = -sum(lam * math.log(lam) for lam in spectrum if lam > 0)
    return FamilyReference(
        family="complete",
        n=n,
        exact_entropy=entropy,
        schmidt_spectrum=spectrum,
        omega_a=m + 1,
        new_bound=math.log(m + 1),
        asymptotic_entropy=kn_asymptotic(n),
    )


def kn_asymptotic(n: int) -> float:
    """Large-n entropy of the complete graph: (1/2) log n + (1/2) log(pi e / 4)."""
    if n < 4:
        raise ValueError("asymptotic form needs n >= 4")
    return 0.5 * math.log(n) + 0.5 * math.log(math.pi * math.e / 4.0)


def _require_even(n: int) -> None:
    if n < 4 or n % 2 != 0:
        raise ValueError(f"reference values need even n >= 4, got {n}")
