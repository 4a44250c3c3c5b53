"""Zeta functions of F1-schemes as integer divisors prod (s - k)^m_k.

The numerical side (the q -> 1 limit of the Hasse-Weil series and its
Riemann-sum log-derivative) only serves as a cross-check of the exact
divisors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .scheme import CountingPoly, realize
from .space import GeoScheme


class TorsionError(ValueError):
    pass


class DivisorSingularity(ArithmeticError):
    """Evaluation at a zero (``kind == "zero"``) or pole (``kind == "pole"``)."""

    def __init__(self, kind: str, location: int):
        super().__init__(f"{kind} of the divisor at s = {location}")
        self.kind = kind
        self.location = location


class DivergenceError(ValueError):
    pass


@dataclass(frozen=True)
class ZetaDivisor:
    """prod_k (s - k)^m_k, stored as sorted (k, m_k) pairs with m_k != 0."""

    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        acc: dict[int, int] = {}
        for k, m in self.items:
            acc[int(k)] = acc.get(int(k), 0) + int(m)
        object.__setattr__(self, "items", tuple(sorted((k, m) for k, m in acc.items() if m)))

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "ZetaDivisor":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def __add__(self, other: "ZetaDivisor") -> "ZetaDivisor":
        """Divisor of the product of the two functions."""
        return ZetaDivisor(self.items + other.items)

    def __neg__(self) -> "ZetaDivisor":
        return ZetaDivisor(tuple((k, -m) for k, m in self.items))

    def __sub__(self, other):
        return self + (-other)

    def degree(self) -> int:
        return sum(m for _, m in self.items)

    def __str__(self):
        if not self.items:
            return "1"
        return " * ".join(f"{_factor(k)}^{m}" for k, m in self.items)


def _factor(k: int) -> str:
    if k == 0:
        return "(s)"
    return f"(s-{k})" if k > 0 else f"(s+{-k})"


def kurokawa_power(n: int) -> ZetaDivisor:
    """Divisor of (1 - 1/s)^(tensor n): sum_j (-1)^j C(n, j) {n - j}; n = 0 gives s."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ZetaDivisor(((0, 1),))
    return ZetaDivisor(tuple((n - j, (-1) ** j * comb(n, j)) for j in range(n + 1)))


def zeta_from_counting(n: CountingPoly) -> ZetaDivisor:
    if not n.torsion_free or n.coefficients is None:
        raise TorsionError("zeta of a scheme with torsion is not computed")
    return ZetaDivisor(tuple((k, -a) for k, a in enumerate(n.coefficients)))


def zeta_from_scheme(x: GeoScheme) -> ZetaDivisor:
    """Product over points of 1 / (1 - 1/s)^(tensor n(x))."""
    if not x.torsion_free:
        raise TorsionError("zeta of a scheme with torsion is not computed")
    total = ZetaDivisor()
    for d in x.dims:
        total = total - kurokawa_power(d)
    return total


def eval_divisor(d: ZetaDivisor, s: float) -> float:
    out = 1.0
    for k, m in d.items:
        if s == k:
            raise DivisorSingularity("zero" if m > 0 else "pole", k)
        out *= (s - k) ** m
    return out


def _check_convergent(n: CountingPoly, s: float) -> None:
    if s <= n.degree:
        raise DivergenceError(f"s = {s} is not above deg N = {n.degree}")


def _soule_value(coeffs: Sequence[int], s: float, eps: float) -> float:
    # Z(q, q^-s) (q-1)^N(1) with log Z = -sum a_k log(1 - q^(k-s))
    lq = math.log1p(eps)
    logv = 0.0
    for k, a in enumerate(coeffs):
        if a:
            ratio = -math.expm1((k - s) * lq) / eps
            logv -= a * math.log(ratio)
    return math.exp(logv)


def soule_limit(n: CountingPoly, s: float, eps: Iterable[float] = (1e-2, 5e-3, 2.5e-3)) -> float:
    """lim_{q->1} Z(q, q^-s) (q - 1)^N(1), extrapolated from q = 1 + eps.

    The last three values of the decreasing ``eps`` sequence are fitted by
    a quadratic in eps, which is evaluated at eps = 0.
    """
    _check_convergent(n, s)
    eps = [float(e) for e in eps]
    if len(eps) < 3 or any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise ValueError("need a decreasing sequence of at least three positive eps")
    xs = eps[-3:]
    ys = [_soule_value(n.coefficients, s, e) for e in xs]
    # Lagrange interpolation at 0
    total = 0.0
    for i in range(3):
        w = 1.0
        for j in range(3):
            if j != i:
                w *= (0 - xs[j]) / (xs[i] - xs[j])
        total += w * ys[i]
    return total


def fqs_riemann_sum(n: CountingPoly, q: float, s: float, tol: float = 1e-16) -> float:
    """F(q, s) = sum_{r>=1} N(q^r) q^(-rs) log q, summed until terms fall below ``tol``."""
    _check_convergent(n, s)
    if q <= 1:
        raise ValueError("q must exceed 1")
    lq = math.log(q)
    coeffs = np.array(n.coefficients, dtype=float)
    total = 0.0
    start, block = 1, 4096
    while True:
        r = np.arange(start, start + block, dtype=float)
        u = r * lq
        # N(q^r) q^(-rs) = sum_k a_k exp((k - s) r log q)
        terms = sum(a * np.exp((k - s) * u) for k, a in enumerate(coeffs) if a) * lq
        total += math.fsum(terms)
        if np.max(np.abs(terms[len(terms) // 2:])) < tol:
            return total
        start += block
        block *= 2


def mellin_integral(n: CountingPoly, s: float) -> float:
    """int_1^oo N(u) u^-s du/u = sum a_k / (s - k)."""
    _check_convergent(n, s)
    return sum(a / (s - k) for k, a in enumerate(n.coefficients) if a)


def zeta_of(desc) -> ZetaDivisor:
    return zeta_from_scheme(realize(desc))
