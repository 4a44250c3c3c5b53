"""Pointed commutative monoids: explicit tables and the symbolic families F1[H] and F1[T1..Tn].

Elements of a :class:`FinMonoid` are the integers ``0..size-1``; ``labels``
gives them names for display and file round-trips.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from math import prod
from typing import Iterable, Sequence, Union

from .abelian import AbGroup, structure_of_finite_group
from .space import GeoScheme

IDEAL_SIZE_CAP = 16
HOM_CAP = 10**6


class MonoidError(ValueError):
    """Invalid monoid data; ``witness`` holds the offending elements."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotCommutative(MonoidError):
    pass


class NotAssociative(MonoidError):
    pass


class BadZero(MonoidError):
    pass


class BadOne(MonoidError):
    pass


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class FinMonoid:
    size: int
    zero: int
    one: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))
        else:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        _check_axioms(self)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self.table[r][a]
        return r

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def unit_set(self) -> frozenset:
        return frozenset(x for x in self.elements if self.one in self.table[x])

    def label_of(self, subset: Iterable[int]) -> str:
        return "{" + ",".join(self.labels[i] for i in sorted(subset)) + "}"

    def element(self, name: str) -> int:
        return self.labels.index(str(name))

    def __repr__(self):
        return f"FinMonoid({self.label_of(self.elements)})"


def _check_axioms(m: FinMonoid) -> None:
    n = m.size
    if n < 2:
        raise MonoidError("a pointed monoid needs at least the two elements 0 and 1")
    if len(m.table) != n or any(len(r) != n for r in m.table):
        raise MonoidError("table must be square over the declared elements")
    if len(m.labels) != n or len(set(m.labels)) != n:
        raise MonoidError("labels must be distinct, one per element")
    if any(not 0 <= x < n for r in m.table for x in r):
        raise MonoidError("table entry outside the element range")
    if m.zero == m.one:
        raise BadZero("zero and one coincide", (m.zero,))
    t = m.table
    for x in range(n):
        if t[x][m.zero] != m.zero or t[m.zero][x] != m.zero:
            raise BadZero(f"{m.labels[x]}*0 != 0", (x, m.zero))
        if t[x][m.one] != x or t[m.one][x] != x:
            raise BadOne(f"{m.labels[x]}*1 != {m.labels[x]}", (x, m.one))
    for x in range(n):
        for y in range(x + 1, n):
            if t[x][y] != t[y][x]:
                raise NotCommutative(f"{m.labels[x]}*{m.labels[y]} != {m.labels[y]}*{m.labels[x]}", (x, y))
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                if t[xy][z] != t[x][t[y][z]]:
                    raise NotAssociative(
                        f"({m.labels[x]}*{m.labels[y]})*{m.labels[z]} != "
                        f"{m.labels[x]}*({m.labels[y]}*{m.labels[z]})", (x, y, z))


def validate(table: Sequence[Sequence], zero=0, one=1, labels: Sequence[str] | None = None) -> FinMonoid:
    """Build a FinMonoid, checking every axiom.

    ``table`` may hold element indices, or element labels when ``labels``
    is given; ``zero``/``one`` likewise.
    """
    if labels is not None:
        labels = [str(x) for x in labels]
        pos = {lab: i for i, lab in enumerate(labels)}

        def idx(v):
            if isinstance(v, int) and not isinstance(v, bool) and str(v) not in pos:
                return v
            try:
                return pos[str(v)]
            except KeyError:
                raise MonoidError(f"unknown element {v!r}") from None

        grid = [[idx(v) for v in row] for row in table]
        return FinMonoid(len(labels), idx(zero), idx(one), tuple(map(tuple, grid)), tuple(labels))
    return FinMonoid(len(table), int(zero), int(one), tuple(map(tuple, table)))


# --- symbolic monoids -------------------------------------------------------

@dataclass(frozen=True)
class F1Group:
    """F1[H] = H u {0} for a finitely generated abelian group H."""

    group: AbGroup

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(f"e{i + 1}" for i in range(self.group.rank)) + \
            tuple(f"t{i + 1}" for i in range(len(self.group.torsion)))


@dataclass(frozen=True)
class FreeMonoid:
    """F1[T1..Tn]: {0} together with the monomials in T1..Tn."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("FreeMonoid needs n >= 1")

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(f"T{i + 1}" for i in range(self.n))


SymMonoid = Union[F1Group, FreeMonoid]
AnyMonoid = Union[FinMonoid, F1Group, FreeMonoid]


# --- named monoids ----------------------------------------------------------

def f1() -> FinMonoid:
    """F1 = {0, 1}."""
    return FinMonoid(2, 0, 1, ((0, 0), (0, 1)), ("0", "1"))


def idempotent() -> FinMonoid:
    """{0, 1, e} with e*e = e."""
    return FinMonoid(3, 0, 1, ((0, 0, 0), (0, 1, 2), (0, 2, 2)), ("0", "1", "e"))


def f1_group(g: AbGroup) -> FinMonoid:
    """Materialize F1[H] for a finite H as an explicit table."""
    if not g.is_finite:
        raise ValueError(f"cannot materialize F1[{g}]: group is infinite")
    ds = g.torsion
    elems = list(product(*[range(d) for d in ds]))
    idx = {e: i + 1 for i, e in enumerate(elems)}
    n = len(elems) + 1
    table = [[0] * n for _ in range(n)]
    for a in elems:
        for b in elems:
            c = tuple((x + y) % d for x, y, d in zip(a, b, ds))
            table[idx[a]][idx[b]] = idx[c]
    labels = ["0"]
    for e in elems:
        if not any(e):
            labels.append("1")
        elif len(ds) == 1:
            labels.append(f"g^{e[0]}" if e[0] != 1 else "g")
        else:
            labels.append("*".join(f"g{i + 1}^{k}" for i, k in enumerate(e) if k))
    return FinMonoid(n, 0, idx[elems[0]], tuple(map(tuple, table)), tuple(labels))


def f1_cyclic(d: int) -> FinMonoid:
    return f1_group(AbGroup.cyclic(d))


def truncated_polynomial(k: int) -> FinMonoid:
    """{0, 1, x, ..., x^(k-1)} with x^k = 0."""
    n = k + 1
    labels = ["0", "1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, k)]
    # element index for x^i: i = 0 -> 1, i >= 1 -> i + 1
    pos = lambda i: 1 if i == 0 else i + 1  # noqa: E731
    table = [[0] * n for _ in range(n)]
    for i in range(k):
        for j in range(k):
            table[pos(i)][pos(j)] = pos(i + j) if i + j < k else 0
    return FinMonoid(n, 0, 1, tuple(map(tuple, table)), tuple(labels))


def prime_field_monoid(p: int) -> FinMonoid:
    """(F_p, *) as a pointed monoid."""
    table = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
    return FinMonoid(p, 0, 1, table, tuple(str(i) for i in range(p)))


def named_monoids() -> dict[str, FinMonoid]:
    return {
        "F1": f1(),
        "idempotent": idempotent(),
        "F1[Z/2]": f1_cyclic(2),
        "F1[Z/3]": f1_cyclic(3),
        "F1[Z/4]": f1_cyclic(4),
        "F1[Z/6]": f1_cyclic(6),
        "F1[Z/2xZ/2]": f1_group(AbGroup(0, (2, 2))),
        "x^3=0": truncated_polynomial(3),
    }


def all_monoids(max_size: int) -> list[FinMonoid]:
    """Every pointed commutative monoid with at most ``max_size`` elements, up to isomorphism.

    Elements are arranged as 0, 1, then the rest; the result is sorted by
    size and then by canonical table.
    """
    out: list[FinMonoid] = []
    for n in range(2, max_size + 1):
        rest = list(range(2, n))
        seen = {min(_relabel(t, perm, n) for perm in permutations(rest)) for t in _tables(n)}
        out.extend(FinMonoid(n, 0, 1, canon) for canon in sorted(seen))
    return out


def _tables(n: int):
    """Labeled commutative associative tables with 0 = index 0 and 1 = index 1 (backtracking)."""
    rest = list(range(2, n))
    pairs = [(a, b) for a in rest for b in rest if a <= b]
    t: list[list[int | None]] = [[None] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = t[x][0] = 0
        t[1][x] = t[x][1] = x
    t[0][1] = t[1][0] = 0

    def consistent() -> bool:
        for x in rest:
            for y in rest:
                xy = t[x][y]
                if xy is None:
                    continue
                for z in rest:
                    yz = t[y][z]
                    if yz is None:
                        continue
                    left, right = t[xy][z], t[x][yz]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def rec(k: int):
        if k == len(pairs):
            yield tuple(map(tuple, t))
            return
        a, b = pairs[k]
        for v in range(n):
            t[a][b] = t[b][a] = v
            if consistent():
                yield from rec(k + 1)
        t[a][b] = t[b][a] = None

    yield from rec(0)


def _relabel(t, perm, n):
    mp = list(range(n))
    for old, new in zip(range(2, n), perm):
        mp[old] = new
    inv = [0] * n
    for i, j in enumerate(mp):
        inv[j] = i
    return tuple(tuple(mp[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))


# --- ideals and primes ------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    owner: FinMonoid = field(repr=False)
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not is_ideal(self.owner, self.members):
            raise MonoidError(f"{self.owner.label_of(self.members)} is not an ideal")

    def __contains__(self, x):
        return x in self.members

    def __le__(self, other):
        return self.members <= other.members

    def __str__(self):
        return self.owner.label_of(self.members)


@dataclass(frozen=True)
class PrimeIdeal(Ideal):
    def __post_init__(self):
        super().__post_init__()
        if not is_prime(self.owner, self.members):
            raise MonoidError(f"{self.owner.label_of(self.members)} is not prime")


def is_ideal(m: FinMonoid, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    return m.zero in s and all(m.mul(x, y) in s for x in s for y in m.elements)


def is_prime(m: FinMonoid, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    if not is_ideal(m, s) or m.one in s:
        return False
    comp = [x for x in m.elements if x not in s]
    return all(m.mul(x, y) not in s for x in comp for y in comp)


def is_multiplicative(m: FinMonoid, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    return m.one in s and m.zero not in s and all(m.mul(x, y) in s for x in s for y in s)


def principal_ideal(m: FinMonoid, f: int) -> frozenset:
    return frozenset(m.mul(f, y) for y in m.elements)


def multiplicative_closure(m: FinMonoid, gens: Iterable[int]) -> frozenset:
    s = {m.one} | set(gens)
    frontier = list(s)
    while frontier:
        x = frontier.pop()
        for y in list(s):
            z = m.mul(x, y)
            if z not in s:
                s.add(z)
                frontier.append(z)
    return frozenset(s)


def _ideal_key(members: frozenset):
    return (len(members), sorted(members))


def ideals(m: FinMonoid) -> list[Ideal]:
    """All ideals, ascending by size (ties broken by sorted element indices)."""
    if m.size > IDEAL_SIZE_CAP:
        raise CapExceeded(f"ideal enumeration capped at {IDEAL_SIZE_CAP} elements (got {m.size})")
    principals = {principal_ideal(m, x) for x in m.elements}
    found = {frozenset([m.zero])}
    frontier = list(found)
    while frontier:
        cur = frontier.pop()
        for p in principals:
            nxt = cur | p
            if nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
    return [Ideal(m, s) for s in sorted(found, key=_ideal_key)]


def prime_ideals(m: FinMonoid) -> list[PrimeIdeal]:
    return [PrimeIdeal(m, i.members) for i in ideals(m) if is_prime(m, i.members)]


def maximal_ideal(m: FinMonoid) -> PrimeIdeal:
    """p_M: the complement of the units, the largest prime."""
    return PrimeIdeal(m, frozenset(m.elements) - m.unit_set)


def radical(i: Ideal) -> Ideal:
    m = i.owner
    if not is_ideal(m, i.members):
        raise MonoidError("radical() needs an ideal")
    rad = set()
    for x in m.elements:
        seen, p = set(), x
        while p not in seen:
            if p in i.members:
                rad.add(x)
                break
            seen.add(p)
            p = m.mul(p, x)
    return Ideal(m, frozenset(rad))


def basic_open(m: FinMonoid, ideal_members: Iterable[int], primes: Sequence[PrimeIdeal] | None = None) -> frozenset:
    """D(I) as a set of indices into ``primes``."""
    s = frozenset(ideal_members)
    primes = prime_ideals(m) if primes is None else primes
    return frozenset(k for k, p in enumerate(primes) if not s <= p.members)


# --- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class MonoidHom:
    """A morphism of pointed monoids.

    For a FinMonoid source ``images[x]`` is the image of element x; for a
    symbolic source it lists the images of ``source.generators``.
    """

    source: AnyMonoid = field(repr=False)
    target: FinMonoid = field(repr=False)
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        _check_hom(self)

    def __call__(self, x: int) -> int:
        if not isinstance(self.source, FinMonoid):
            raise TypeError("only homs with an explicit source can be applied elementwise")
        return self.images[x]

    def preimage(self, subset: Iterable[int]) -> frozenset:
        s = frozenset(subset)
        return frozenset(x for x in self.source.elements if self.images[x] in s)

    def compose(self, after: "MonoidHom") -> "MonoidHom":
        """``after`` o ``self``."""
        return MonoidHom(self.source, after.target, tuple(after(y) for y in self.images))

    def describe(self) -> str:
        src = self.source
        names = src.labels if isinstance(src, FinMonoid) else src.generators
        return ", ".join(f"{a}->{self.target.labels[b]}" for a, b in zip(names, self.images))


def _check_hom(h: MonoidHom) -> None:
    a, b = h.source, h.target
    if isinstance(a, FinMonoid):
        if len(h.images) != a.size:
            raise MonoidError("one image per source element is required")
        if h.images[a.one] != b.one:
            raise MonoidError("1 must map to 1")
        if h.images[a.zero] != b.zero:
            raise MonoidError("0 must map to 0")
        for x in a.elements:
            for y in a.elements:
                if h.images[a.mul(x, y)] != b.mul(h.images[x], h.images[y]):
                    raise MonoidError("products are not preserved", (x, y))
    elif isinstance(a, F1Group):
        if len(h.images) != len(a.generators):
            raise MonoidError("one image per generator is required")
        units = b.unit_set
        if any(u not in units for u in h.images):
            raise MonoidError("generators of a group must map to units")
        for u, d in zip(h.images[a.group.rank:], a.group.torsion):
            if b.power(u, d) != b.one:
                raise MonoidError("torsion relation not respected")
    else:
        if len(h.images) != a.n:
            raise MonoidError("one image per generator is required")


def _generating_set(m: FinMonoid) -> list[int]:
    gens: list[int] = []
    closure = multiplicative_closure(m, [m.zero])
    for x in m.elements:
        if x not in closure:
            gens.append(x)
            closure = multiplicative_closure(m, [m.zero, *gens])
    return gens


def hom_set(a: AnyMonoid, b: FinMonoid) -> list[MonoidHom]:
    """Hom_Mo(a, b), completely enumerated in lexicographic order of images."""
    if isinstance(a, FreeMonoid):
        _cap(b.size, a.n)
        return [MonoidHom(a, b, imgs) for imgs in product(b.elements, repeat=a.n)]
    if isinstance(a, F1Group):
        units = sorted(b.unit_set)
        g = a.group
        _cap(len(units), g.rank + len(g.torsion))
        choices = [units] * g.rank + [[u for u in units if b.power(u, d) == b.one] for d in g.torsion]
        return [MonoidHom(a, b, imgs) for imgs in product(*choices)]
    _cap(b.size, len(_generating_set(a)))
    found: list[tuple[int, ...]] = []
    _hom_search(a, b, found)
    return [MonoidHom(a, b, imgs) for imgs in sorted(found)]


def _cap(base: int, gens: int) -> None:
    if base ** gens > HOM_CAP:
        raise CapExceeded(f"hom enumeration of size {base}^{gens} exceeds {HOM_CAP}")


def _hom_search(a: FinMonoid, b: FinMonoid, out: list) -> None:
    n = a.size

    def propagate(img):
        changed = True
        while changed:
            changed = False
            assigned = [x for x in range(n) if img[x] is not None]
            for x in assigned:
                for y in assigned:
                    z = a.mul(x, y)
                    v = b.mul(img[x], img[y])
                    if img[z] is None:
                        img[z] = v
                        changed = True
                    elif img[z] != v:
                        return False
                if changed:
                    break
        return True

    def rec(img):
        if not propagate(img):
            return
        free = next((x for x in range(n) if img[x] is None), None)
        if free is None:
            out.append(tuple(img))
            return
        for v in b.elements:
            nxt = list(img)
            nxt[free] = v
            rec(nxt)

    start: list = [None] * n
    start[a.zero] = b.zero
    start[a.one] = b.one
    rec(start)


# --- localization -----------------------------------------------------------

@dataclass(frozen=True)
class Localization:
    """S^-1 M together with the canonical map and the class of every fraction a/s."""

    monoid: FinMonoid
    hom: MonoidHom
    denominators: tuple[int, ...]
    class_of: dict = field(repr=False, hash=False, compare=False)

    def fraction(self, a: int, s: int) -> int:
        return self.class_of[(a, s)]


def localization(m: FinMonoid, s: Iterable[int]) -> Localization:
    S = tuple(sorted(frozenset(s)))
    if not is_multiplicative(m, S):
        raise MonoidError(f"{m.label_of(S)} is not a multiplicative subset (needs 1, no 0, closed)")
    pairs = [(a, t) for a in m.elements for t in S]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for i, (a, t) in enumerate(pairs):
        for (b, r) in pairs[i + 1:]:
            if any(m.mul(u, m.mul(r, a)) == m.mul(u, m.mul(t, b)) for u in S):
                ra, rb = find((a, t)), find((b, r))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    reps = sorted({find(p) for p in pairs})
    index = {r: k for k, r in enumerate(reps)}
    class_of = {p: index[find(p)] for p in pairs}
    members: dict[int, list] = {k: [] for k in range(len(reps))}
    for p in pairs:
        members[class_of[p]].append(p)
    labels = []
    for k, r in enumerate(reps):
        whole = sorted(a for a, t in members[k] if t == m.one)
        labels.append(m.labels[whole[0]] if whole else f"{m.labels[r[0]]}/{m.labels[r[1]]}")
    n = len(reps)
    table = [[0] * n for _ in range(n)]
    for i, (a, t) in enumerate(reps):
        for j, (b, r) in enumerate(reps):
            table[i][j] = class_of[(m.mul(a, b), m.mul(t, r))]
    loc = FinMonoid(n, class_of[(m.zero, m.one)], class_of[(m.one, m.one)],
                    tuple(map(tuple, table)), tuple(labels))
    hom = MonoidHom(m, loc, tuple(class_of[(a, m.one)] for a in m.elements))
    return Localization(loc, hom, S, class_of)


def localize(m: FinMonoid, s: Iterable[int]) -> tuple[FinMonoid, MonoidHom]:
    loc = localization(m, s)
    return loc.monoid, loc.hom


def units(m: FinMonoid) -> tuple[frozenset, AbGroup]:
    us = sorted(m.unit_set)
    return frozenset(us), structure_of_finite_group(us, m.mul)


def residue(m: FinMonoid, p: PrimeIdeal) -> MonoidHom:
    """eps_p: M -> F1[(M_p)^x], killing p and localizing its complement."""
    if not is_prime(m, p.members):
        raise MonoidError(f"{m.label_of(p.members)} is not prime")
    loc = localization(m, frozenset(m.elements) - p.members)
    lm = loc.monoid
    keep = [lm.zero] + sorted(lm.unit_set)
    pos = {x: i for i, x in enumerate(keep)}
    table = tuple(tuple(pos[lm.mul(x, y)] for y in keep) for x in keep)
    target = FinMonoid(len(keep), 0, pos[lm.one], table, tuple(lm.labels[x] for x in keep))
    images = tuple(0 if x in p.members else pos[loc.hom(x)] for x in m.elements)
    return MonoidHom(m, target, images)


# --- spectra ----------------------------------------------------------------

def spec_space(m: AnyMonoid) -> GeoScheme:
    """Geometric realization of Spec(m): primes, the opens D(I), and stalk unit groups."""
    if isinstance(m, F1Group):
        return GeoScheme(("{0}",), (frozenset(), frozenset([0])), (m.group,), ("spec", m))
    if isinstance(m, FreeMonoid):
        return _free_spec(m)
    primes = prime_ideals(m)
    points = tuple(m.label_of(p.members) for p in primes)
    opens = {basic_open(m, i.members, primes) for i in ideals(m)}
    stalks = []
    for p in primes:
        loc = localization(m, frozenset(m.elements) - p.members).monoid
        stalks.append(units(loc)[1])
    return GeoScheme(points, tuple(opens), tuple(stalks), ("spec", m))


FREE_SPEC_CAP = 4


def free_primes(n: int) -> list[tuple[int, ...]]:
    """Index sets J of the primes p_J = union of T_j M (j in J), ordered by size then lexicographically."""
    return [J for k in range(n + 1) for J in combinations(range(1, n + 1), k)]


def _free_spec(m: FreeMonoid) -> GeoScheme:
    if m.n > FREE_SPEC_CAP:
        raise CapExceeded(f"explicit open lattice capped at n <= {FREE_SPEC_CAP}")
    Js = free_primes(m.n)
    points = tuple("<" + ",".join(f"T{j}" for j in J) + ">" if J else "<0>" for J in Js)
    # D(prod of T_i, i not in K) = {p_J : J subset of K}; opens are unions of these
    principal = [frozenset(k for k, J in enumerate(Js) if set(J) <= set(K)) for K in Js]
    opens = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        cur = frontier.pop()
        for p in principal:
            nxt = cur | p
            if nxt not in opens:
                opens.add(nxt)
                frontier.append(nxt)
    stalks = tuple(AbGroup(m.n - len(J)) for J in Js)
    return GeoScheme(points, tuple(opens), stalks, ("spec", m))


# --- file format ------------------------------------------------------------

def from_json(data: dict | str) -> AnyMonoid:
    """Parse the monoid file format (explicit table, ``f1group`` or ``free``)."""
    if isinstance(data, str):
        data = json.loads(data)
    if "f1group" in data:
        g = data["f1group"]
        return F1Group(AbGroup.from_orders(int(g.get("rank", 0)), g.get("torsion", [])))
    if "free" in data:
        return FreeMonoid(int(data["free"]))
    try:
        elements = [str(e) for e in data["elements"]]
        return validate(data["table"], data["zero"], data["one"], labels=elements)
    except KeyError as exc:
        raise MonoidError(f"monoid file missing field {exc}") from None


def to_json(m: AnyMonoid) -> dict:
    if isinstance(m, F1Group):
        return {"f1group": {"rank": m.group.rank, "torsion": list(m.group.torsion)}}
    if isinstance(m, FreeMonoid):
        return {"free": m.n}
    return {"elements": list(m.labels), "zero": m.labels[m.zero], "one": m.labels[m.one],
            "table": [[m.labels[x] for x in row] for row in m.table]}


def load(path) -> AnyMonoid:
    with open(path) as fh:
        return from_json(json.load(fh))


def order_of_units(m: FinMonoid) -> int:
    return len(m.unit_set)


def count_homs(a: AnyMonoid, b: FinMonoid) -> int:
    """Cardinality of Hom(a, b) without materializing symbolic-source homs."""
    if isinstance(a, FreeMonoid):
        return b.size ** a.n
    if isinstance(a, F1Group):
        us = sorted(b.unit_set)
        g = a.group
        return len(us) ** g.rank * prod(sum(1 for u in us if b.power(u, d) == b.one) for d in g.torsion)
    return len(hom_set(a, b))
