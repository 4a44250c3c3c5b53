"""Monoid rings Z[M] and F_p[M], the quotient by (1 + eps), and F_p-point counts.

A ring hom Z[M] -> F_p is the same thing as a pointed monoid hom
M -> (F_p, *); ``ring_points`` counts through that correspondence and
``adjunction_check`` confirms it by brute force on small inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .abelian import AbGroup, IntMatrix, smith_normalize
from .monoid import AnyMonoid, CapExceeded, FinMonoid, count_homs, f1_cyclic, hom_set, prime_field_monoid
from .scheme import parse_descriptor


class RingAxiomError(AssertionError):
    pass


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def monoid(self) -> FinMonoid:
        return prime_field_monoid(self.p)


@dataclass(frozen=True)
class MonoidRing:
    """Free module on the nonzero elements of ``m``, product by convolution.

    ``p == 0`` means integer coefficients. Elements are coefficient tuples
    indexed like ``basis``; the class [0_M] is the ring zero.
    """

    m: FinMonoid
    p: int = 0

    def __post_init__(self):
        if self.p and not is_prime(self.p):
            raise ValueError(f"coefficient modulus {self.p} is not prime")
        _check_ring(self)

    @property
    def basis(self) -> tuple[int, ...]:
        return tuple(x for x in self.m.elements if x != self.m.zero)

    @property
    def rank(self) -> int:
        return self.m.size - 1

    def _pos(self) -> dict[int, int]:
        return {b: i for i, b in enumerate(self.basis)}

    def _reduce(self, v) -> tuple[int, ...]:
        return tuple(c % self.p for c in v) if self.p else tuple(v)

    def basis_vector(self, x: int) -> tuple[int, ...]:
        v = [0] * self.rank
        if x != self.m.zero:
            v[self._pos()[x]] = 1
        return self._reduce(v)

    def one(self) -> tuple[int, ...]:
        return self.basis_vector(self.m.one)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, u, v) -> tuple[int, ...]:
        return self._reduce(a + b for a, b in zip(u, v))

    def mul(self, u, v) -> tuple[int, ...]:
        pos = self._pos()
        out = [0] * self.rank
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    k = self.m.mul(self.basis[i], self.basis[j])
                    if k != self.m.zero:
                        out[pos[k]] += a * b
        return self._reduce(out)

    def __str__(self):
        base = f"F_{self.p}" if self.p else "Z"
        return f"{base}[{', '.join(self.m.labels[b] for b in self.basis)}]"


def _check_ring(r: MonoidRing) -> None:
    # bilinearity reduces the axioms to basis elements
    vecs = [r.basis_vector(b) for b in r.basis]
    one = r.one()
    for x in vecs:
        if r.mul(one, x) != x:
            raise RingAxiomError(f"unit fails on {x}")
        for y in vecs:
            xy = r.mul(x, y)
            if xy != r.mul(y, x):
                raise RingAxiomError(f"not commutative on {x}, {y}")
            for z in vecs:
                if r.mul(xy, z) != r.mul(x, r.mul(y, z)):
                    raise RingAxiomError(f"not associative on {x}, {y}, {z}")


def monoid_ring(m: FinMonoid, p: int = 0) -> MonoidRing:
    return MonoidRing(m, p)


@dataclass(frozen=True)
class EpsilonMonoid:
    """A monoid with a chosen element of square one."""

    m: FinMonoid
    eps: int

    def __post_init__(self):
        if self.m.mul(self.eps, self.eps) != self.m.one:
            raise ValueError(f"{self.m.labels[self.eps]} does not square to 1")


def epsilon_quotient(em: EpsilonMonoid) -> AbGroup:
    """Additive group of Z[M] / (1 + eps) Z[M]."""
    r = MonoidRing(em.m)
    one_plus_eps = r.add(r.one(), r.basis_vector(em.eps))
    rows = [r.mul(one_plus_eps, r.basis_vector(b)) for b in r.basis]
    return smith_normalize(IntMatrix.of(rows, cols=r.rank))


def ring_points(m: AnyMonoid, p: int) -> int:
    """#Hom_Ring(Z[m], F_p), counted as #Hom_Mo(m, (F_p, *))."""
    return count_homs(m, PrimeField(p).monoid())


def _lines(p: int) -> int:
    # a line through the origin is represented by its vector scaled to leading coefficient 1
    reps = set()
    for a, b in product(range(p), repeat=2):
        if a or b:
            lead = a if a else b
            inv = pow(lead, -1, p)
            reps.add((a * inv % p, b * inv % p))
    return len(reps)


def scheme_fq_points(desc, p: int) -> int:
    """Number of F_p-points of the Z-scheme attached to a descriptor, by enumeration."""
    PrimeField(p)
    d = parse_descriptor(desc)
    kind = d[0]
    if kind == "P1":
        return _lines(p)
    if kind == "affine":
        return sum(1 for _ in product(range(p), repeat=d[1]))
    if kind == "torus":
        return sum(1 for _ in product(range(1, p), repeat=d[1]))
    if kind == "mu":
        return ring_points(f1_cyclic(d[1]), p)
    return ring_points(d[1], p)


def mu_points_expected(d: int, p: int) -> int:
    return gcd(d, p - 1)


@dataclass(frozen=True)
class AdjunctionReport:
    monoid_homs: int
    ring_homs: int
    all_extend: bool
    injective: bool
    exhaustive: bool

    @property
    def passed(self) -> bool:
        return self.all_extend and self.injective and self.exhaustive and self.monoid_homs == self.ring_homs


ADJUNCTION_CAP = (6, 7)


def _is_ring_hom(r: MonoidRing, f: tuple[int, ...], p: int) -> bool:
    """Is the linear map sending basis element i to f[i] a unital ring hom Z[M] -> F_p?"""
    pos = r._pos()
    if f[pos[r.m.one]] != 1 % p:
        return False
    for i, x in enumerate(r.basis):
        for j, y in enumerate(r.basis):
            k = r.m.mul(x, y)
            image = 0 if k == r.m.zero else f[pos[k]]
            if image != f[i] * f[j] % p:
                return False
    return True


def adjunction_check(m: FinMonoid, p: int) -> AdjunctionReport:
    """Compare Hom_Mo(m, F_p) with Hom_Ring(Z[m], F_p), both enumerated.

    Ring homs are found by trying every assignment of basis images, which
    is why the inputs are capped.
    """
    if m.size > ADJUNCTION_CAP[0] or p > ADJUNCTION_CAP[1]:
        raise CapExceeded(f"adjunction check is limited to |M| <= {ADJUNCTION_CAP[0]}, p <= {ADJUNCTION_CAP[1]}")
    PrimeField(p)
    r = MonoidRing(m)
    homs = hom_set(m, prime_field_monoid(p))
    restricted = [tuple(h(b) for b in r.basis) for h in homs]
    all_extend = all(_is_ring_hom(r, f, p) for f in restricted)
    ring_homs = {f for f in product(range(p), repeat=r.rank) if _is_ring_hom(r, f, p)}
    return AdjunctionReport(
        monoid_homs=len(homs),
        ring_homs=len(ring_homs),
        all_extend=all_extend,
        injective=len(set(restricted)) == len(restricted),
        exhaustive=ring_homs <= set(restricted),
    )
