"""Finite topological spaces stored as minimal-neighborhood tables.

A finite topology is equivalent to a preorder: keep, for every point, the
smallest open set containing it.  A subset U is then open iff it contains
the minimal neighborhood of each of its points.  Subsets are bitmasks over
positional point indices; point identifiers are strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import (
    EmptySet,
    InvariantViolation,
    MembershipViolation,
    PreorderViolation,
    TooLarge,
)

#: Hard cap for enumerating the full open-set family.
OPENS_ENUM_CAP = 12

SubsetLike = Union[int, Iterable[str]]


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class FiniteTopSpace:
    """A finite topological space given by minimal open neighborhoods.

    ``min_nbhd[i]`` is the bitmask of the smallest open set containing
    point ``i``.  Valid tables satisfy ``i in min_nbhd[i]`` and the nesting
    condition: ``j in min_nbhd[i]`` implies ``min_nbhd[j] <= min_nbhd[i]``.
    """

    points: tuple[str, ...]
    min_nbhd: tuple[int, ...]

    def __post_init__(self):
        n = len(self.points)
        if len(set(self.points)) != n:
            raise InvariantViolation("points", "duplicate point identifiers")
        if len(self.min_nbhd) != n:
            raise InvariantViolation("min_nbhd", "one entry per point required")
        full = (1 << n) - 1
        for i, m in enumerate(self.min_nbhd):
            if m & ~full:
                raise InvariantViolation(
                    f"min_nbhd[{self.points[i]}]", "names a point outside the space"
                )
            if not (m >> i) & 1:
                raise MembershipViolation(
                    f"point {self.points[i]!r} is not in its own minimal neighborhood"
                )
        for i, m in enumerate(self.min_nbhd):
            for j in _bits(m):
                if self.min_nbhd[j] & ~m:
                    raise PreorderViolation(
                        f"min_nbhd({self.points[j]!r}) is not contained in "
                        f"min_nbhd({self.points[i]!r})"
                    )

    # -- basic views ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, point: str) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise InvariantViolation("point", f"{point!r} is not a point of the space")

    def mask(self, subset: SubsetLike) -> int:
        """Coerce a subset (bitmask or iterable of point ids) to a bitmask."""
        if isinstance(subset, int):
            if subset & ~self.full_mask:
                raise InvariantViolation("subset", "bitmask exceeds the point count")
            return subset
        m = 0
        for p in subset:
            m |= 1 << self.index(p)
        return m

    def ids(self, mask: int) -> tuple[str, ...]:
        """Point identifiers of a bitmask, in point order."""
        return tuple(self.points[i] for i in _bits(mask))

    def subset(self, mask: int) -> frozenset[str]:
        return frozenset(self.ids(mask))

    # -- topology ------------------------------------------------------

    def is_open_mask(self, mask: int) -> bool:
        for i in _bits(mask):
            if self.min_nbhd[i] & ~mask:
                return False
        return True

    @cached_property
    def opens(self) -> tuple[int, ...]:
        """All open sets, as bitmasks in numeric order.

        Enumeration is exponential, hence capped at ``OPENS_ENUM_CAP`` points.
        """
        if self.n > OPENS_ENUM_CAP:
            raise TooLarge(
                f"open-set enumeration needs |points| <= {OPENS_ENUM_CAP}, got {self.n}"
            )
        return tuple(m for m in range(self.full_mask + 1) if self.is_open_mask(m))

    def closure_mask(self, mask: int) -> int:
        # x is adherent to A iff its smallest neighborhood meets A
        out = 0
        for i in range(self.n):
            if self.min_nbhd[i] & mask:
                out |= 1 << i
        return out

    def interior_mask(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            if not (self.min_nbhd[i] & ~mask):
                out |= 1 << i
        return out

    def is_connected_mask(self, mask: int) -> bool:
        """Connectivity of a subspace via the symmetrized specialization preorder.

        Two points of the subspace are linked when either lies in the
        other's minimal neighborhood relative to the subspace; a finite
        space is connected iff this graph has one component.
        """
        if mask == 0:
            raise EmptySet("connectivity of the empty subset is undefined")
        members = list(_bits(mask))
        seen = {members[0]}
        frontier = [members[0]]
        while frontier:
            i = frontier.pop()
            for j in members:
                if j in seen:
                    continue
                if (self.min_nbhd[i] >> j) & 1 or (self.min_nbhd[j] >> i) & 1:
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == len(members)

    def is_discrete(self) -> bool:
        return all(m == (1 << i) for i, m in enumerate(self.min_nbhd))

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Masks of the connected components of the whole space.

        Continuous real functions on a finite space are exactly the
        functions constant on each of these components.
        """
        remaining = set(range(self.n))
        out = []
        while remaining:
            start = min(remaining)
            seen = {start}
            frontier = [start]
            while frontier:
                i = frontier.pop()
                for j in list(remaining):
                    if j in seen:
                        continue
                    if (self.min_nbhd[i] >> j) & 1 or (self.min_nbhd[j] >> i) & 1:
                        seen.add(j)
                        frontier.append(j)
            mask = 0
            for i in seen:
                mask |= 1 << i
            out.append(mask)
            remaining -= seen
        return tuple(out)


# -- constructors -------------------------------------------------------


def from_minimal_basis(
    min_nbhd: Mapping[str, Iterable[str]],
    points: Sequence[str] | None = None,
) -> FiniteTopSpace:
    """Build a validated space from a point -> minimal-open-set mapping.

    ``points`` fixes the point order; by default the mapping's own order is
    used.  Raises MembershipViolation or PreorderViolation on bad tables.
    """
    pts = tuple(points) if points is not None else tuple(min_nbhd.keys())
    index = {p: i for i, p in enumerate(pts)}
    masks = []
    for p in pts:
        if p not in min_nbhd:
            raise InvariantViolation(f"min_nbhd[{p}]", "missing entry")
        m = 0
        for q in min_nbhd[p]:
            if q not in index:
                raise InvariantViolation(f"min_nbhd[{p}]", f"{q!r} is not a point")
            m |= 1 << index[q]
        masks.append(m)
    return FiniteTopSpace(pts, tuple(masks))


def discrete(points: Sequence[str]) -> FiniteTopSpace:
    """Discrete topology: every singleton is open."""
    pts = tuple(points)
    return FiniteTopSpace(pts, tuple(1 << i for i in range(len(pts))))


def sierpinski() -> FiniteTopSpace:
    """Two points "0" and "1" with opens {}, {"1"}, {"0","1"}."""
    return from_minimal_basis({"0": ["0", "1"], "1": ["1"]})


# -- topology operations --------------------------------------------------


def is_open(space: FiniteTopSpace, subset: SubsetLike) -> bool:
    """True iff the subset contains the minimal neighborhood of each member."""
    return space.is_open_mask(space.mask(subset))


def closure(space: FiniteTopSpace, subset: SubsetLike) -> frozenset[str]:
    """Smallest closed superset."""
    return space.subset(space.closure_mask(space.mask(subset)))


def is_connected(space: FiniteTopSpace, subset: SubsetLike) -> bool:
    """True iff the subset, with its induced topology, has no proper nonempty clopen part."""
    return space.is_connected_mask(space.mask(subset))


@dataclass(frozen=True)
class MetricSpace:
    """Finite metric space: ordered points plus a distance matrix."""

    points: tuple[str, ...]
    dist: np.ndarray

    def __post_init__(self):
        n = len(self.points)
        if len(set(self.points)) != n:
            raise InvariantViolation("points", "duplicate point identifiers")
        d = np.asarray(self.dist, dtype=float)
        if d.shape != (n, n):
            raise InvariantViolation("dist.shape", f"expected {(n, n)}, got {d.shape}")
        if np.any(d < 0):
            raise InvariantViolation("dist.nonnegative", "negative distance")
        if np.any(np.diag(d) != 0):
            raise InvariantViolation("dist.diagonal", "d(x,x) must be 0")
        if not np.array_equal(d, d.T):
            raise InvariantViolation("dist.symmetry", "d(x,y) != d(y,x)")
        off = d + np.eye(n)  # mask the diagonal before testing identity
        if n > 1 and np.any(off == 0):
            raise InvariantViolation("dist.identity", "d(x,y)=0 for distinct points")
        # triangle inequality over all triples, vectorized
        if np.any(d[:, :, None] > d[:, None, :] + d.T[None, :, :] + 1e-12):
            raise InvariantViolation("dist.triangle", "triangle inequality fails")
        d = d.copy()
        d.flags.writeable = False
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, point: str) -> int:
        return self._index[point]

    def mask(self, subset: SubsetLike) -> int:
        if isinstance(subset, int):
            return subset
        m = 0
        for p in subset:
            m |= 1 << self._index[p]
        return m

    def ids(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in _bits(mask))

    def __eq__(self, other):
        return (
            isinstance(other, MetricSpace)
            and self.points == other.points
            and np.array_equal(self.dist, other.dist)
        )

    def __hash__(self):
        return hash((self.points, self.dist.tobytes()))


def line_metric(coords: Mapping[str, float]) -> MetricSpace:
    """Metric space of labelled points on the real line."""
    pts = tuple(coords.keys())
    xs = np.array([coords[p] for p in pts], dtype=float)
    return MetricSpace(pts, np.abs(xs[:, None] - xs[None, :]))


@dataclass(frozen=True)
class SubspaceEmbedding:
    """A subspace X of an ambient space Y, with the induced topology on X.

    ``subset_discrete`` records whether the induced topology is discrete;
    that is the finite stand-in for the subspace being Tychonoff, which
    several whole-theorem campaigns require.
    """

    ambient: FiniteTopSpace
    subset: tuple[str, ...]

    def __post_init__(self):
        if not self.subset:
            raise EmptySet("embedding needs a nonempty subset")
        if len(set(self.subset)) != len(self.subset):
            raise InvariantViolation("subset", "duplicate points")
        for p in self.subset:
            self.ambient.index(p)

    @cached_property
    def subset_mask(self) -> int:
        return self.ambient.mask(self.subset)

    @cached_property
    def subspace(self) -> FiniteTopSpace:
        """The induced topology: intersect each minimal neighborhood with X."""
        amb = self.ambient
        order = [p for p in amb.points if p in set(self.subset)]
        sub_index = {p: i for i, p in enumerate(order)}
        masks = []
        for p in order:
            m = amb.min_nbhd[amb.index(p)] & self.subset_mask
            sm = 0
            for q in amb.ids(m):
                sm |= 1 << sub_index[q]
            masks.append(sm)
        return FiniteTopSpace(tuple(order), tuple(masks))

    @cached_property
    def subset_discrete(self) -> bool:
        return self.subspace.is_discrete()


def induced_subspace(embedding: SubspaceEmbedding) -> FiniteTopSpace:
    """Subspace topology on the embedded subset."""
    return embedding.subspace


def embed(ambient: FiniteTopSpace, subset: Iterable[str]) -> SubspaceEmbedding:
    return SubspaceEmbedding(ambient, tuple(subset))
