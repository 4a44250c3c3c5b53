"""Zeros of zeta on the critical line, located as sign changes of Hardy's Z.

The scan samples Z at about twenty points per mean zero spacing, refines
every sign change by bisection and then checks the count at Gram points:
below each good Gram point g_n (one where (-1)^n Z(g_n) > 0) there must be
exactly n + 1 zeros. A mismatch triggers a finer rescan of that stretch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .evaluators import hardy_z, theta

BISECT_TOL = 1e-10
BRACKET_MAX = 1e-9
SCAN_START = 10.0
MAX_REFINE = 6
ZERO_CAP = 1000


class MissedZeroError(RuntimeError):
    pass


class CacheError(ValueError):
    pass


@dataclass(frozen=True)
class ZeroTable:
    """Heights t_1 < t_2 < ... with a verified sign-change bracket per zero."""

    heights: tuple[float, ...]
    brackets: tuple[tuple[float, float], ...]
    precision: float = BISECT_TOL

    def __post_init__(self):
        if len(self.heights) != len(self.brackets):
            raise ValueError("one bracket per height is required")
        if any(b <= a for a, b in zip(self.heights, self.heights[1:])):
            raise ValueError("heights must be strictly increasing")
        for t, (lo, hi) in zip(self.heights, self.brackets):
            if not lo <= t <= hi or hi - lo > BRACKET_MAX:
                raise ValueError(f"bad bracket [{lo}, {hi}] for height {t}")

    def __len__(self):
        return len(self.heights)

    def take(self, m: int) -> "ZeroTable":
        if m > len(self):
            raise ValueError(f"table holds {len(self)} zeros, {m} requested")
        return ZeroTable(self.heights[:m], self.brackets[:m], self.precision)

    def array(self, m: int | None = None) -> np.ndarray:
        m = len(self) if m is None else m
        if m > len(self):
            raise ValueError(f"table holds {len(self)} zeros, {m} requested")
        return np.array(self.heights[:m])

    def verify_brackets(self) -> bool:
        if not self.brackets:
            return True
        lo = np.array([b[0] for b in self.brackets])
        hi = np.array([b[1] for b in self.brackets])
        return bool(np.all(hardy_z(lo) * hardy_z(hi) < 0))


def mean_gap(t: float) -> float:
    return 2 * math.pi / math.log(max(t, 7.0) / (2 * math.pi))


def theta_count(t: float) -> int:
    """floor(theta(t)/pi) + 1, the smooth approximation to N(t)."""
    return math.floor(float(theta(t)) / math.pi) + 1


def gram_point(n: int) -> float:
    """The solution of theta(g) = n pi for n >= -1."""
    return brentq(lambda t: float(theta(t)) - n * math.pi, 7.0, 10.0 + 10.0 * (n + 10), xtol=1e-13)


def _height_for_count(m: int) -> float:
    # smallest Gram index whose theta-count exceeds m, plus slack
    return gram_point(m + 2)


def _scan_grid(a: float, b: float, density: float) -> np.ndarray:
    pts = [a]
    t = a
    while t < b:
        t += mean_gap(t) / density
        pts.append(t)
    return np.array(pts)


def _bisect(lo: np.ndarray, hi: np.ndarray, zlo: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lo, hi, zlo = lo.copy(), hi.copy(), zlo.copy()
    while np.max(hi - lo) > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        zm = hardy_z(mid)
        left = np.sign(zm) == np.sign(zlo)
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid)
    return lo, hi


def _scan(a: float, b: float, density: float) -> list[tuple[float, float]]:
    grid = _scan_grid(a, b, density)
    z = hardy_z(grid)
    idx = np.flatnonzero(z[:-1] * z[1:] < 0)
    if idx.size == 0:
        return []
    lo, hi = _bisect(grid[idx], grid[idx + 1], z[idx])
    return list(zip(lo.tolist(), hi.tolist()))


def _good_gram_points(top: float) -> list[tuple[int, float]]:
    out = []
    n = -1
    while True:
        g = gram_point(n)
        if g > top:
            return out
        if g > SCAN_START and (-1) ** n * hardy_z(g) > 0:
            out.append((n, g))
        n += 1


def find_zeros(m: int, density: float = 20.0) -> ZeroTable:
    """The first ``m`` zeros, reconciled against the zero count at good Gram points."""
    if not 0 <= m <= ZERO_CAP:
        raise ValueError(f"m must lie in [0, {ZERO_CAP}]")
    if m == 0:
        return ZeroTable((), ())
    top = _height_for_count(m)
    brackets = _scan(SCAN_START, top, density)
    checkpoints = _good_gram_points(top)
    start = SCAN_START
    for n, g in checkpoints:
        found = sum(1 for lo, _ in brackets if lo < g)
        refine = density
        tries = 0
        while found != n + 1:
            tries += 1
            if tries > MAX_REFINE:
                raise MissedZeroError(f"{found} zeros below Gram point g_{n} = {g:.6f}, expected {n + 1}")
            refine *= 4
            inside = [br for br in brackets if start <= br[0] < g]
            again = _scan(start, g, refine)
            brackets = [br for br in brackets if not start <= br[0] < g] + again
            brackets.sort()
            found = sum(1 for lo, _ in brackets if lo < g)
            if len(again) < len(inside):
                raise MissedZeroError(f"finer scan lost zeros between {start:.6f} and {g:.6f}")
        start = g
    if len(brackets) < m:
        raise MissedZeroError(f"only {len(brackets)} zeros found below t = {top:.3f}")
    brackets = brackets[:m]
    heights = tuple(0.5 * (lo + hi) for lo, hi in brackets)
    return ZeroTable(heights, tuple(brackets))


def gram_reconciliation(table: ZeroTable) -> list[tuple[int, float, int]]:
    """Good Gram points g_n below the last zero where the table does not hold n + 1 zeros."""
    if not table.heights:
        return []
    heights = np.array(table.heights)
    bad = []
    for n, g in _good_gram_points(table.heights[-1]):
        found = int(np.searchsorted(heights, g))
        if found != n + 1:
            bad.append((n, g, found))
    return bad


def count_check(table: ZeroTable) -> int:
    """floor(theta(t_m + gap/2)/pi) + 1 - m; zero means the smooth count agrees at the top."""
    t = table.heights[-1]
    gap = mean_gap(t)
    return theta_count(t + gap / 2) - len(table)


# --- cache file -------------------------------------------------------------

def cache_header(m: int) -> str:
    return f"zeros v1 count={m} prec={BISECT_TOL:g}"


def save_zeros(table: ZeroTable, path) -> None:
    lines = [cache_header(len(table))] + [f"{t:.12f}" for t in table.heights]
    Path(path).write_text("\n".join(lines) + "\n")


def load_zeros(path, need: int | None = None) -> ZeroTable:
    """Read a cache file and rebuild the brackets, checking each sign change again."""
    text = Path(path).read_text().splitlines()
    if not text:
        raise CacheError("empty zero cache")
    head = text[0].split()
    fields = dict(part.split("=", 1) for part in head[2:] if "=" in part)
    if head[:2] != ["zeros", "v1"] or "count" not in fields or "prec" not in fields:
        raise CacheError(f"bad cache header {text[0]!r}")
    count = int(fields["count"])
    if float(fields["prec"]) > BRACKET_MAX:
        raise CacheError(f"cache precision {fields['prec']} is coarser than {BRACKET_MAX:g}")
    values = [float(x) for x in text[1:] if x.strip()]
    if len(values) != count:
        raise CacheError(f"header says {count} zeros, file has {len(values)}")
    if need is not None and count < need:
        raise CacheError(f"cache holds {count} zeros, {need} needed")
    t = np.array(values)
    lo, hi = t - BISECT_TOL, t + BISECT_TOL
    ok = hardy_z(lo) * hardy_z(hi) < 0
    if not np.all(ok):
        bad = int(np.flatnonzero(~ok)[0])
        raise CacheError(f"cached zero #{bad + 1} at {values[bad]} does not bracket a sign change")
    return ZeroTable(tuple(values), tuple(zip(lo.tolist(), hi.tolist())))


def zeros_cached(m: int, path=None) -> ZeroTable:
    """Load from ``path`` when it holds enough zeros, else compute (and write if a path is given)."""
    if path is not None and Path(path).exists():
        try:
            return load_zeros(path, need=m).take(m)
        except CacheError:
            pass
    table = find_zeros(m)
    if path is not None:
        save_zeros(table, path)
    return table
