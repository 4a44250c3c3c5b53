"""Finite geometric realizations: points, the full open-set lattice and stalk unit groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .abelian import AbGroup


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class GeoScheme:
    """A finite space with a unit group attached to every point.

    ``opens`` holds frozensets of point indices; it must be closed under
    union and intersection and contain both the empty set and the whole
    space. ``kind`` records where the space came from, e.g. ``("P1",)`` or
    ``("affine", 2)``.
    """

    points: tuple[str, ...]
    opens: tuple[frozenset, ...]
    stalk_units: tuple[AbGroup, ...]
    kind: tuple = field(default=("custom",))

    def __post_init__(self):
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens), key=_open_key)))
        if len(self.stalk_units) != len(self.points):
            raise TopologyError("one stalk unit group per point is required")
        if len(set(self.points)) != len(self.points):
            raise TopologyError("point ids must be distinct")
        check_topology(len(self.points), self.opens)

    @property
    def dims(self) -> tuple[int, ...]:
        """Local dimension (rank of the stalk unit group) at each point."""
        return tuple(g.rank for g in self.stalk_units)

    @property
    def torsion_free(self) -> bool:
        return all(g.is_torsion_free for g in self.stalk_units)

    def closure(self, i: int) -> frozenset:
        whole = frozenset(range(len(self.points)))
        closed = [whole - u for u in self.opens]
        return frozenset.intersection(*[c for c in closed if i in c])

    def index(self, point_id: str) -> int:
        return self.points.index(point_id)


def _open_key(u: frozenset):
    return (len(u), sorted(u))


def check_topology(npoints: int, opens) -> None:
    whole = frozenset(range(npoints))
    opens = set(opens)
    if frozenset() not in opens or whole not in opens:
        raise TopologyError("opens must contain the empty set and the whole space")
    for u in opens:
        if not u <= whole:
            raise TopologyError(f"open set {sorted(u)} mentions unknown points")
    for u, v in combinations(opens, 2):
        if u | v not in opens or u & v not in opens:
            raise TopologyError(f"opens not closed under union/intersection: {sorted(u)}, {sorted(v)}")
    for i, j in combinations(range(npoints), 2):
        if all((i in u) == (j in u) for u in opens):
            raise TopologyError(f"points {i} and {j} are topologically indistinguishable (not T0)")
