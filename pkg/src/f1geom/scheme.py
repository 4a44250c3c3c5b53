"""Geometric Mo-schemes: named realizations, point counts over F1^n, counting polynomials,
the projective line P1(M), the base projection and the locality check for Hom-functors."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable

from .abelian import AbGroup, hom_count
from .monoid import (
    AnyMonoid, F1Group, FinMonoid, FreeMonoid, MonoidError, MonoidHom, PrimeIdeal,
    basic_open, f1_cyclic, from_json, hom_set, is_ideal, localization, maximal_ideal,
    multiplicative_closure, principal_ideal, prime_ideals, residue, spec_space,
)
from .space import GeoScheme


class DescriptorError(ValueError):
    pass


class ClassificationError(AssertionError):
    """A matrix of P1(M) escaped the e1(a) / e2(b) classification."""


class NotACover(ValueError):
    pass


# --- realizations -----------------------------------------------------------

def p1() -> GeoScheme:
    """{0, u, inf}: 0 and inf are closed points, u is generic."""
    opens = [frozenset(), frozenset({1}), frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 1, 2})]
    return GeoScheme(("0", "u", "inf"), tuple(opens), (AbGroup(), AbGroup(1), AbGroup()), ("P1",))


def parse_descriptor(desc) -> tuple:
    """Normalize a scheme descriptor.

    Accepts the file form (``{"scheme": "affine", "n": 2}``), the compact
    CLI form (``"affine:2"``, ``"P1"``, ``"mu:6"``) or an already-normalized
    tuple. Returns ``("P1",)``, ``("affine", n)``, ``("torus", r)``,
    ``("mu", d)`` or ``("spec", monoid)``.
    """
    if isinstance(desc, tuple):
        return desc
    if isinstance(desc, str):
        text = desc.strip()
        if text.startswith("{"):
            return parse_descriptor(json.loads(text))
        name, _, arg = text.partition(":")
        name = name.lower()
        if name == "p1" and not arg:
            return ("P1",)
        if name in ("affine", "torus", "mu") and arg:
            try:
                return _checked(name, int(arg))
            except ValueError:
                raise DescriptorError(f"bad integer in descriptor {desc!r}") from None
        raise DescriptorError(f"unknown scheme descriptor {desc!r}")
    if isinstance(desc, dict):
        kind = str(desc.get("scheme", "")).lower()
        if kind == "p1":
            return ("P1",)
        keys = {"affine": "n", "torus": "r", "mu": "d"}
        if kind in keys:
            if keys[kind] not in desc:
                raise DescriptorError(f"descriptor {desc} needs field {keys[kind]!r}")
            return _checked(kind, int(desc[keys[kind]]))
        if kind == "spec":
            if "monoid" not in desc:
                raise DescriptorError("spec descriptor needs a 'monoid' field")
            return ("spec", from_json(desc["monoid"]))
    raise DescriptorError(f"unknown scheme descriptor {desc!r}")


def _checked(kind: str, k: int) -> tuple:
    if kind == "affine" and k < 1 or kind == "torus" and k < 0 or kind == "mu" and k < 1:
        raise DescriptorError(f"{kind} parameter out of range: {k}")
    return (kind, k)


def realize(desc) -> GeoScheme:
    d = parse_descriptor(desc)
    kind = d[0]
    if kind == "P1":
        return p1()
    if kind == "affine":
        x = spec_space(FreeMonoid(d[1]))
    elif kind == "torus":
        x = spec_space(F1Group(AbGroup(d[1])))
    elif kind == "mu":
        x = spec_space(F1Group(AbGroup.cyclic(d[1])))
    elif kind == "spec":
        x = spec_space(d[1])
    else:
        raise DescriptorError(f"unknown descriptor {d!r}")
    return GeoScheme(x.points, x.opens, x.stalk_units, d)


def describe(desc) -> str:
    d = parse_descriptor(desc)
    if d[0] == "P1":
        return "P1"
    if d[0] == "spec":
        m = d[1]
        return f"spec {m!r}" if isinstance(m, FinMonoid) else f"spec {m}"
    return f"{d[0]}:{d[1]}"


# --- counting ---------------------------------------------------------------

def points_over_f1n(x: GeoScheme, n: int) -> int:
    """#X(F1^n): sum over points of #Hom(O_x^*, Z/n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    target = AbGroup.cyclic(n)
    return sum(hom_count(g, target) for g in x.stalk_units)


@dataclass(frozen=True)
class CountingPoly:
    """N(x) = sum a_k x^k (``coefficients[k] = a_k``) plus the exact counter n -> #X(F1^n).

    ``coefficients`` is None when some stalk has torsion; ``raw_counter`` is
    always available.
    """

    coefficients: tuple[int, ...] | None
    torsion_free: bool
    raw_counter: Callable[[int], int] = field(compare=False, repr=False)

    @classmethod
    def of(cls, coefficients: Iterable[int]) -> "CountingPoly":
        """A bare counting polynomial, e.g. ``CountingPoly.of([1, 1])`` for x + 1."""
        coeffs = _trim(list(coefficients))
        return cls(coeffs, True, lambda n, c=coeffs: _horner(c, n + 1))

    def __call__(self, q):
        if self.coefficients is None:
            raise ValueError("no counting polynomial in the presence of torsion")
        return _horner(self.coefficients, q)

    @property
    def degree(self) -> int:
        if self.coefficients is None:
            raise ValueError("no counting polynomial in the presence of torsion")
        return len(self.coefficients) - 1

    @property
    def shifted(self) -> tuple[int, ...]:
        """Coefficients of P(y) = N(y + 1)."""
        c = self.coefficients
        if c is None:
            raise ValueError("no counting polynomial in the presence of torsion")
        return _trim([sum(c[k] * comb(k, j) for k in range(j, len(c))) for j in range(len(c))])

    def __str__(self):
        if self.coefficients is None:
            return "<torsion: no polynomial>"
        return poly_str(self.coefficients)


def _trim(c: list[int]) -> tuple[int, ...]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


def _horner(c, x):
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def poly_str(c, var: str = "x") -> str:
    terms = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if a == 0:
            continue
        mag = abs(a)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if a < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def counting_polynomial(x: GeoScheme) -> CountingPoly:
    def counter(n, x=x):
        return points_over_f1n(x, n)

    if not x.torsion_free:
        return CountingPoly(None, False, counter)
    # P(y) = sum_x y^n(x); N(x) = P(x - 1)
    top = max(x.dims)
    p = [0] * (top + 1)
    for d in x.dims:
        p[d] += 1
    n = [sum(p[k] * comb(k, j) * (-1) ** (k - j) for k in range(j, top + 1)) for j in range(top + 1)]
    return CountingPoly(_trim(n), True, counter)


def brute_force_points(desc, n: int) -> int:
    """#X(F1[Z/n]) by enumerating morphisms into the materialized F1[Z/n].

    Affine pieces are represented by their monoids; P1 is counted through
    its matrix description.
    """
    d = parse_descriptor(desc)
    target = f1_cyclic(n)
    kind = d[0]
    if kind == "P1":
        return len(proj_line_points(target).points)
    if kind == "affine":
        return len(hom_set(FreeMonoid(d[1]), target))
    if kind == "torus":
        return len(hom_set(F1Group(AbGroup(d[1])), target))
    if kind == "mu":
        return len(hom_set(f1_cyclic(d[1]), target))
    if kind == "spec":
        return len(hom_set(d[1], target))
    raise DescriptorError(f"unknown descriptor {d!r}")


# --- P1(M) ------------------------------------------------------------------

Matrix = tuple  # ((a, b), (c, d)) over element indices


def _row_ok(m: FinMonoid, row) -> bool:
    return sum(1 for v in row if v != m.zero) <= 1


def _mat_mul(m: FinMonoid, e, f):
    # rows carry at most one nonzero entry, so each sum has at most one nonzero term
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            terms = [m.mul(e[i][k], f[k][j]) for k in range(2)]
            nz = [t for t in terms if t != m.zero]
            if len(nz) > 1:
                raise ValueError("sum of two nonzero monoid elements is undefined")
            row.append(nz[0] if nz else m.zero)
        out.append(tuple(row))
    return tuple(out)


def _apply(m: FinMonoid, e, v):
    out = []
    for i in range(2):
        nz = [m.mul(e[i][k], v[k]) for k in range(2) if m.mul(e[i][k], v[k]) != m.zero]
        out.append(nz[0] if nz else m.zero)
    return tuple(out)


def matrix_range(m: FinMonoid, e) -> frozenset:
    return frozenset(_apply(m, e, v) for v in product(m.elements, repeat=2))


def is_rank_one(m: FinMonoid, e, residues=None) -> bool:
    residues = [residue(m, p) for p in prime_ideals(m)] if residues is None else residues
    for eps in residues:
        t = eps.target
        img = tuple(tuple(eps(v) for v in row) for row in e)
        if img == ((t.zero, t.zero), (t.zero, t.zero)) or img == ((t.one, t.zero), (t.zero, t.one)):
            return False
    return True


def e1(m: FinMonoid, a: int):
    return ((m.one, m.zero), (a, m.zero))


def e2(m: FinMonoid, b: int):
    return ((m.zero, b), (m.zero, m.one))


@dataclass(frozen=True)
class P1Point:
    range: frozenset = field(repr=False)
    matrices: tuple
    chart1: int | None  # a with Im e1(a) equal to this range
    chart2: int | None  # b with Im e2(b) equal to this range

    @property
    def part(self) -> str:
        if self.chart1 is not None and self.chart2 is not None:
            return "overlap"
        return "e1" if self.chart1 is not None else "e2"


@dataclass(frozen=True)
class P1Points:
    monoid: FinMonoid = field(repr=False)
    points: tuple[P1Point, ...]

    def partition(self) -> dict[str, int]:
        out = {"e1": 0, "e2": 0, "overlap": 0}
        for p in self.points:
            out[p.part] += 1
        return out


def proj_line_points(m: FinMonoid) -> P1Points:
    """Rank-one idempotent 2x2 matrices over m with sparse rows, grouped by range.

    Verifies along the way that every such matrix is some e1(a) or e2(b)
    and that Im e1(a) = Im e2(b) exactly when ab = 1.
    """
    residues = [residue(m, p) for p in prime_ideals(m)]
    rows = [r for r in product(m.elements, repeat=2) if _row_ok(m, r)]
    valid = []
    for r1 in rows:
        for r2 in rows:
            e = (r1, r2)
            if _mat_mul(m, e, e) == e and is_rank_one(m, e, residues):
                valid.append(e)
    forms = {e1(m, a): ("e1", a) for a in m.elements}
    forms.update({e2(m, b): ("e2", b) for b in m.elements})
    groups: dict[frozenset, list] = {}
    for e in valid:
        if e not in forms:
            raise ClassificationError(f"rank-one idempotent {e} is neither e1(a) nor e2(b)")
        groups.setdefault(matrix_range(m, e), []).append(e)
    for a in m.elements:
        for b in m.elements:
            same = matrix_range(m, e1(m, a)) == matrix_range(m, e2(m, b))
            if same != (m.mul(a, b) == m.one):
                raise ClassificationError(f"Im e1({m.labels[a]}) = Im e2({m.labels[b]}) disagrees with ab = 1")
    points = []
    for rng, mats in groups.items():
        c1 = next((forms[e][1] for e in mats if forms[e][0] == "e1"), None)
        c2 = next((forms[e][1] for e in mats if forms[e][0] == "e2"), None)
        points.append(P1Point(rng, tuple(sorted(mats)), c1, c2))
    points.sort(key=lambda p: (p.chart1 is None, p.chart1 if p.chart1 is not None else p.chart2))
    return P1Points(m, tuple(points))


# --- base projection and open subfunctors -----------------------------------

def base_projection(h: MonoidHom) -> PrimeIdeal:
    """pi_N(h) = h^-1(p_N), a point of Spec(source)."""
    if not isinstance(h.source, FinMonoid):
        raise TypeError("base projection needs an explicit source monoid")
    return PrimeIdeal(h.source, h.preimage(maximal_ideal(h.target).members))


def base_projection_index(x: GeoScheme, h: MonoidHom) -> int:
    return x.index(h.source.label_of(base_projection(h).members))


def p1_base_projection(m: FinMonoid, chart: int, value: int) -> str:
    """Image in {0, u, inf} of the element ``value`` of copy ``chart`` in M u_{M*} M."""
    if chart not in (1, 2):
        raise ValueError("chart must be 1 or 2")
    if value in m.unit_set:
        return "u"
    return "0" if chart == 1 else "inf"


def p1_points_of(m: FinMonoid) -> list[tuple[int, int]]:
    """Canonical elements of M u_{M*} M: (1, a) for all a, then (2, b) for non-units b."""
    return [(1, a) for a in m.elements] + [(2, b) for b in m.elements if b not in m.unit_set]


def open_subfunctor_points(a: FinMonoid, ideal: Iterable[int], n: FinMonoid) -> list[MonoidHom]:
    """D(I)(N): morphisms rho with rho(I)N = N, i.e. rho(I) meets the units of N."""
    i = frozenset(ideal)
    if not is_ideal(a, i):
        raise MonoidError(f"{a.label_of(i)} is not an ideal")
    return [h for h in hom_set(a, n) if any(h(x) in n.unit_set for x in i)]


# --- locality ---------------------------------------------------------------

@dataclass
class ExactnessReport:
    injective: bool
    families: int
    descended: int
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.injective and self.families == self.descended


def _transition(m: FinMonoid, li, lij, fi: int, fj: int) -> list[int]:
    """M_fi -> M_{fi fj}, a/fi^k -> a fj^k / (fi fj)^k, checked on every representative."""
    fij = m.mul(fi, fj)
    image = [None] * li.monoid.size
    for (a, s), c in li.class_of.items():
        k = next(k for k in range(m.size + 1) if m.power(fi, k) == s)
        v = lij.fraction(m.mul(a, m.power(fj, k)), m.power(fij, k))
        if image[c] is None:
            image[c] = v
        elif image[c] != v:
            raise AssertionError("transition map is not well defined")
    return image


def covers(m: FinMonoid, f: Iterable[int]) -> bool:
    primes = prime_ideals(m)
    union = frozenset().union(*[basic_open(m, principal_ideal(m, x), primes) for x in f])
    return len(union) == len(primes)


def cover_exactness(a: AnyMonoid, m: FinMonoid, f: Iterable[int]) -> ExactnessReport:
    """Exactness of F(M) -> prod F(M_fi) => prod F(M_fi fj) for F = Hom(a, -)."""
    f = list(f)
    if not f or not covers(m, f):
        raise NotACover(f"D(f M) for f in {m.label_of(f)} do not cover Spec M")
    if not any(x in m.unit_set for x in f):
        raise AssertionError(f"cover {m.label_of(f)} has no unit member")
    # a nilpotent f_i has D(f_i) empty and M_fi = 0; its factor Hom(a, 0) is a
    # single point, so it changes neither injectivity nor descent
    f = [x for x in f if m.zero not in multiplicative_closure(m, [x])]
    locs = [localization(m, multiplicative_closure(m, [x])) for x in f]
    pair_locs = {}
    for i, j in combinations(range(len(f)), 2):
        fij = m.mul(f[i], f[j])
        sij = multiplicative_closure(m, [fij])
        if m.zero in sij:
            continue  # M_{fi fj} = 0: no compatibility condition
        lij = localization(m, sij)
        pair_locs[i, j] = (lij, _transition(m, locs[i], lij, f[i], f[j]),
                           _transition(m, locs[j], lij, f[j], f[i]))
    base = hom_set(a, m)
    local = [hom_set(a, loc.monoid) for loc in locs]
    restricted = [tuple(h.compose(loc.hom).images for loc in locs) for h in base]
    injective = len(set(restricted)) == len(restricted)
    image = set(restricted)

    def push(h: MonoidHom, trans: list[int]) -> tuple:
        return tuple(trans[y] for y in h.images)

    report = ExactnessReport(injective, 0, 0)
    if not injective:
        report.witnesses.append("u is not injective")

    def rec(chosen: list):
        i = len(chosen)
        if i == len(f):
            report.families += 1
            fam = tuple(h.images for h in chosen)
            if fam in image:
                report.descended += 1
            elif len(report.witnesses) < 5:
                report.witnesses.append(fam)
            return
        for h in local[i]:
            ok = all(push(chosen[k], pair_locs[k, i][1]) == push(h, pair_locs[k, i][2])
                     for k in range(i) if (k, i) in pair_locs)
            if ok:
                rec(chosen + [h])

    rec([])
    return report


def all_covers_contain_whole(m: FinMonoid) -> bool:
    """Every family of opens covering Spec M contains Spec M itself."""
    x = spec_space(m)
    whole = frozenset(range(len(x.points)))
    proper = [u for u in x.opens if u != whole]
    # the proper opens alone never cover: check their union directly
    return frozenset().union(*proper) != whole if proper else True
