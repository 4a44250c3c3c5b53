"""Finitely generated abelian groups in invariant-factor form.

Groups are presented either by an integer relation matrix (rows are
relations among ``cols`` generators) or, for finite groups, by an explicit
multiplication on a set of elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Callable, Hashable, Iterable, Sequence


class StructureError(ValueError):
    """Raised when an input that should be a finite abelian group is not."""


class InfiniteHomSet(ValueError):
    pass


@dataclass(frozen=True)
class AbGroup:
    """Z^rank + Z/d_1 + ... + Z/d_t with d_1 | d_2 | ... | d_t, each d_i >= 2."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if i + 1 < len(self.torsion) and self.torsion[i + 1] % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisor chain")

    @classmethod
    def cyclic(cls, n: int) -> "AbGroup":
        """Z/n; n == 0 gives Z and n == 1 the trivial group."""
        if n == 0:
            return cls(1, ())
        if n == 1:
            return cls(0, ())
        return cls(0, (abs(n),))

    @classmethod
    def from_orders(cls, rank: int, orders: Iterable[int]) -> "AbGroup":
        """Normalize an arbitrary list of cyclic orders to invariant factors."""
        diag = [abs(int(d)) for d in orders]
        extra_rank = sum(1 for d in diag if d == 0)
        return cls(rank + extra_rank, _invariant_factors([d for d in diag if d != 0]))

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    @property
    def order(self) -> int | None:
        return prod(self.torsion) if self.rank == 0 else None

    @property
    def exponent(self) -> int | None:
        if self.rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def __str__(self):
        parts = [f"Z^{self.rank}"] if self.rank > 1 else (["Z"] if self.rank == 1 else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise ValueError(f"entry grid does not match declared shape {self.rows}x{self.cols}")

    @classmethod
    def of(cls, grid: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        grid = [list(r) for r in grid]
        if cols is None:
            if not grid:
                raise ValueError("cols must be given for an empty matrix")
            cols = len(grid[0])
        return cls(len(grid), cols, tuple(tuple(r) for r in grid))


def _invariant_factors(orders: list[int]) -> tuple[int, ...]:
    # Z/a + Z/b = Z/gcd + Z/lcm; repeat until the list is a divisor chain.
    ds = sorted(d for d in orders if d != 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
        ds = sorted(d for d in ds if d != 1)
    return tuple(ds)


def smith_diagonal(m: IntMatrix) -> list[int]:
    """Diagonal of the Smith normal form of ``m`` (length min(rows, cols), nonnegative)."""
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # the pivot must also divide the whole remaining block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t into the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        a[t][t] = abs(a[t][t])
        t += 1
    return [abs(a[k][k]) if k < t else 0 for k in range(min(rows, cols))]


def smith_normalize(m: IntMatrix) -> AbGroup:
    """Cokernel Z^cols / (row lattice of m) as an AbGroup."""
    diag = smith_diagonal(m)
    nonzero = [d for d in diag if d]
    rank = m.cols - len(nonzero)
    return AbGroup(rank, tuple(d for d in nonzero if d != 1))


def hom_count(g: AbGroup, h: AbGroup) -> int:
    """#Hom(g, h); finite whenever g is finite or h is.

    For h = Z/n the count is n^rank(g) * prod gcd(d_i, n).
    """
    if h.rank and g.rank:
        raise InfiniteHomSet(f"Hom({g}, {h}) is infinite")
    total = 1
    for n in h.torsion:
        total *= n ** g.rank * prod(gcd(d, n) for d in g.torsion)
    # free summands of h receive only the zero map from a finite g
    return total


def structure_of_finite_group(elements: Sequence[Hashable],
                              op: Callable[[Hashable, Hashable], Hashable]) -> AbGroup:
    """Invariant factors of the finite abelian group (elements, op).

    Repeatedly splits off the cyclic subgroup generated by an element of
    maximal order; in a finite abelian group that subgroup is a direct summand.
    """
    elems = list(elements)
    if not elems:
        raise StructureError("empty group")
    index = {x: i for i, x in enumerate(elems)}
    if len(index) != len(elems):
        raise StructureError("duplicate elements")
    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            z = op(x, y)
            if z not in index:
                raise StructureError(f"{x}*{y} = {z} is outside the set")
            table[i][j] = index[z]
    ident = [i for i in range(n) if all(table[i][j] == j for j in range(n))]
    if not ident:
        raise StructureError("no identity element")
    e = ident[0]
    for i in range(n):
        for j in range(n):
            if table[i][j] != table[j][i]:
                raise StructureError(f"not abelian: witness ({elems[i]}, {elems[j]})")
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise StructureError(f"not associative: witness ({elems[i]}, {elems[j]}, {elems[k]})")
        if e not in table[i]:
            raise StructureError(f"{elems[i]} has no inverse")
    return _split_cyclic(table, e, frozenset(range(n)))


def _split_cyclic(table, e, group: frozenset) -> AbGroup:
    # group is a set of cosets-as-representatives handled via frozensets of indices
    cosets = [frozenset([x]) for x in sorted(group)]
    factors: list[int] = []
    while len(cosets) > 1:
        def mul(c1, c2):
            x, y = min(c1), min(c2)
            z = table[x][y]
            return next(c for c in cosets if z in c)

        unit = next(c for c in cosets if e in c)

        def order(c):
            k, p = 1, c
            while p != unit:
                p = mul(p, c)
                k += 1
            return k

        g = max(cosets, key=lambda c: (order(c), -min(c)))
        k = order(g)
        factors.append(k)
        sub = [unit]
        p = g
        while p != unit:
            sub.append(p)
            p = mul(p, g)
        sub_elems = frozenset().union(*sub)
        new = []
        seen: set[int] = set()
        for c in cosets:
            x = min(c)
            if x in seen:
                continue
            merged = frozenset(table[x][y] for y in sub_elems)
            merged = frozenset().union(*(cc for cc in cosets if cc & merged))
            seen |= merged
            new.append(merged)
        cosets = new
    return AbGroup(0, tuple(sorted(factors)))
