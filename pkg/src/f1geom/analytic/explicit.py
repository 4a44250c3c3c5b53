"""The counting distribution N(u) of Spec Z, through its primitive J(u).

J(u) = phi(u) + u - a(u) exactly, while the zeros give the approximation
J_m(u) = u^2/2 - omega_m(u) + u with omega_m summed over conjugate pairs.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .arith import is_prime_power, mangoldt_table, phi_array, prime_powers_upto
from .constants import constants
from .evaluators import digamma, zeta_em
from .zeros import ZeroTable

JUMP_TOL = 1e-9


class PrimePowerProximity(ValueError):
    pass


def a_func(u):
    """a(u) = arctanh(1/u) - zeta'(-1)/zeta(-1), for u > 1."""
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 1):
        raise ValueError("a(u) diverges at u = 1 and is only defined for u > 1")
    out = np.arctanh(1.0 / arr) - constants().zeta_prime_ratio
    return out if np.ndim(u) else float(out)


def _rho(table: ZeroTable, m: int) -> np.ndarray:
    return 0.5 + 1j * table.array(m)


def omega_partial(u, table: ZeroTable, m: int):
    """sum over the first m conjugate pairs of u^(rho+1)/(rho+1); u >= 1."""
    arr = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(arr < 1):
        raise ValueError("omega is evaluated for u >= 1")
    if m == 0:
        out = np.zeros_like(arr)
    else:
        rho1 = _rho(table, m) + 1
        out = np.empty_like(arr)
        step = max(1, 2_000_000 // m)
        for i in range(0, arr.size, step):
            terms = np.exp(np.outer(np.log(arr[i:i + step]), rho1)) / rho1
            # pairs summed in ascending height for reproducible rounding
            out[i:i + step] = 2 * np.cumsum(terms.real, axis=1)[:, -1]
    return out if np.ndim(u) else float(out[0])


def j_m(u, table: ZeroTable, m: int):
    arr = np.asarray(u, dtype=float)
    return arr ** 2 / 2 - omega_partial(u, table, m) + arr


def _check_jumps(arr: np.ndarray) -> None:
    near = np.abs(arr - np.round(arr)) <= JUMP_TOL
    for v in arr[near]:
        n = int(round(float(v)))
        if is_prime_power(n):
            raise PrimePowerProximity(f"u = {v} is within {JUMP_TOL:g} of the prime power {n}")


def j_exact(u, allow_jumps: bool = False):
    """J(u) = phi(u) + u - a(u) for u > 1.

    phi jumps at prime powers; evaluating within 1e-9 of one raises unless
    ``allow_jumps`` is set, in which case the strict sum n < u is used.
    """
    arr = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(arr <= 1):
        raise ValueError("J(u) is only defined for u > 1")
    if not allow_jumps:
        _check_jumps(arr)
    out = phi_array(arr) + arr - a_func(arr)
    return out if np.ndim(u) else float(out[0])


# --- reconstruction of J from the zeros -------------------------------------

def recon_grid(a: float = 2.0, b: float = 10.0, h: float = 0.05, gap: float = 0.05) -> np.ndarray:
    """Grid a, a+h, ..., b with every point within ``gap`` of a prime power removed."""
    k = int(round((b - a) / h))
    u = np.round(a + h * np.arange(k + 1), 10)
    pp = np.array(prime_powers_upto(b + gap))
    if pp.size:
        keep = np.min(np.abs(u[:, None] - pp[None, :]), axis=1) > gap + 1e-9
        u = u[keep]
    return u


def recon_sup(table: ZeroTable, m: int, grid: np.ndarray | None = None) -> float:
    u = recon_grid() if grid is None else grid
    return float(np.max(np.abs(j_m(u, table, m) - j_exact(u))))


def curve_rows(table: ZeroTable, m: int, grid: np.ndarray) -> list[tuple[float, float, float, float]]:
    je = j_exact(grid, allow_jumps=True)
    jm = j_m(grid, table, m)
    return list(zip(grid.tolist(), je.tolist(), jm.tolist(), np.abs(je - jm).tolist()))


def curve_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u", "J_exact", "J_m", "abs_err"])
    for row in rows:
        w.writerow([f"{x:.10f}" for x in row])
    return buf.getvalue()


def positivity_check(h: float = 0.5, a: float = 1.5, b: float = 20.0, step: float = 0.05) -> float:
    """Smallest difference quotient (J(u+h) - J(u))/h over the grid; N >= 0 means it is >= 0."""
    k = int(round((b - a) / step))
    u = np.round(a + step * np.arange(k + 1), 10)
    q = (j_exact(u + h, allow_jumps=True) - j_exact(u, allow_jumps=True)) / h
    return float(q.min())


# --- sums over zeros --------------------------------------------------------

@dataclass(frozen=True)
class Residual:
    name: str
    value: float
    target: float

    @property
    def residual(self) -> float:
        return abs(self.value - self.target)


def zero_sum_identities(table: ZeroTable, m: int) -> list[Residual]:
    """Partial sums over m conjugate pairs against their closed forms."""
    if m < 1:
        raise ValueError("need at least one pair")
    c = constants()
    rho = _rho(table, m)

    def pair_sum(x):
        return float(2 * np.cumsum(x.real)[-1])

    return [
        Residual("sum 1/rho", pair_sum(1 / rho), c.sum_inv_rho),
        Residual("sum 1/(rho(rho+1))", pair_sum(1 / (rho * (rho + 1))), c.sum_inv_rho_rho1),
        Residual("sum 1/(rho+1) = omega(1)", pair_sum(1 / (rho + 1)), c.omega_at_one),
    ]


# --- Mellin checks ----------------------------------------------------------

@dataclass(frozen=True)
class MellinResult:
    s: float
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _lambda_dirichlet(s: float, cutoff: int) -> float:
    lam = mangoldt_table(cutoff)
    n = np.flatnonzero(lam)
    return math.fsum(lam[n] * np.exp(-s * np.log(n)))


def kappa_integral(s: float, upper: float) -> float:
    """int_1^upper (u^(2-s) - 1)/(u^2 - 1) du/u, written in x = log u."""
    f = lambda x: math.expm1((2 - s) * x) / math.expm1(2 * x)  # noqa: E731
    val, _ = quad(f, 0.0, math.log(upper), limit=200, epsabs=1e-13, epsrel=1e-12)
    return val


def mellin_check(s: float, cutoff: float = 1e5, reference_cutoff: float | None = None) -> MellinResult:
    """Both sides of the Mellin identity for the counting distribution at real s > 1.

    The left side truncates the prime-power sum and the kappa integral at
    ``cutoff``; the right side evaluates -zeta'/zeta independently with a
    larger cutoff plus its integral tail.
    """
    if s <= 1:
        raise ValueError("the Mellin identity is checked for s > 1")
    big = int(reference_cutoff or 10 * cutoff)
    c = constants()
    lhs = _lambda_dirichlet(s, int(math.ceil(cutoff))) + kappa_integral(s, cutoff) + c.c
    minus_log_deriv = _lambda_dirichlet(s, big) + big ** (1 - s) / (s - 1)
    rhs = 0.5 * c.log_pi - 0.5 * digamma(s / 2) + float(minus_log_deriv)
    return MellinResult(s, lhs, rhs)


def log_derivative_em(s: float, h: float = 1e-5) -> float:
    """-zeta'/zeta at real s by a five-point stencil on the Euler-Maclaurin zeta."""
    f = lambda x: zeta_em(x).real  # noqa: E731
    d = (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h)
    return -d / f(s)


def phi_mellin_check(s: float, cutoff: int = 10**6) -> MellinResult:
    """(s+1) int_1^oo phi(u) u^(-s-2) du against -zeta'/zeta(s).

    phi is constant on (n, n+1], so the integral is a finite sum up to
    ``cutoff`` plus the tail of phi(u) ~ u^2/2.
    """
    if s <= 1:
        raise ValueError("the phi transform converges for s > 1")
    lam = mangoldt_table(cutoff + 1)
    n = np.arange(1, cutoff + 1, dtype=float)
    big_phi = np.cumsum(n * lam[1:])  # phi on (n, n+1]
    weights = n ** (-s - 1) - (n + 1) ** (-s - 1)
    body = math.fsum(big_phi[:-1] * weights[:-1])
    tail = (s + 1) * cutoff ** (1 - s) / (2 * (s - 1))
    return MellinResult(s, log_derivative_em(s), body + tail)


# --- density of zeros near u = 1 --------------------------------------------

def density_ratio(eps: float) -> float:
    """D_eps / (E log E / 2) with D_eps = (omega(1+eps) - omega(1))/eps and E = 1/eps."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    u = 1 + eps
    omega_near = u * u / 2 + a_func(u)
    d = (omega_near - constants().omega_at_one) / eps
    big_e = 1 / eps
    return d / (0.5 * big_e * math.log(big_e))


@dataclass(frozen=True)
class DensityReport:
    eps: tuple[float, ...]
    ratios: tuple[float, ...]

    @property
    def approaching_one(self) -> bool:
        """|ratio - 1| strictly decreases along the eps sequence."""
        gaps = [abs(r - 1) for r in self.ratios]
        return all(b < a for a, b in zip(gaps, gaps[1:]))


def density_check(eps=(1e-4, 1e-6, 1e-8)) -> DensityReport:
    eps = tuple(float(e) for e in eps)
    if any(not 0 < e <= 1e-3 for e in eps):
        raise ValueError("the density check runs for eps in (0, 1e-3]")
    return DensityReport(eps, tuple(density_ratio(e) for e in eps))

