"""The hyperspace of nonempty subsets of a finite space.

Provides subset enumeration, Hausdorff distance over finite metric spaces,
Vietoris-style neighborhoods, and the round trip between subsets and their
min/max functionals: F -> (f -> min_F f) -> support recovers F.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EmptySet, InvariantViolation, ModeArity, SpaceMismatch, TooLarge
from .functionals import RealFunction, SupportFunctional, classify, support
from .spaces import FiniteTopSpace, MetricSpace, _bits

#: Full hyperspace enumeration stays below 2^16 subsets.
HYPERSPACE_CAP = 16


@dataclass(frozen=True)
class HyperPoint:
    """A nonempty subset viewed as one point of the hyperspace."""

    space: FiniteTopSpace | MetricSpace
    member: int

    def __post_init__(self):
        if self.member == 0:
            raise EmptySet("hyperspace points are nonempty subsets")
        full = (1 << len(self.space.points)) - 1
        if self.member & ~full:
            raise InvariantViolation("member", "subset outside the space")

    def ids(self) -> tuple[str, ...]:
        return self.space.ids(self.member)


@dataclass(frozen=True)
class VietorisNbhd:
    """A basic Vietoris neighborhood determined by finitely many opens.

    full mode: F inside the union and meeting every listed open;
    upper mode: F inside the single listed open;
    lower mode: F meeting every listed open.
    """

    space: FiniteTopSpace
    opens: tuple[int, ...]
    mode: str = "full"

    def __post_init__(self):
        if self.mode not in ("full", "upper", "lower"):
            raise InvariantViolation("mode", "must be full, upper, or lower")
        if not self.opens:
            raise InvariantViolation("opens", "at least one open set required")
        if self.mode == "upper" and len(self.opens) != 1:
            raise ModeArity("upper mode takes exactly one open set")
        for u in self.opens:
            if not self.space.is_open_mask(u):
                raise InvariantViolation("opens", f"{self.space.ids(u)} is not open")


def vietoris_contains(nbhd: VietorisNbhd, point: HyperPoint) -> bool:
    if nbhd.space != point.space:
        raise SpaceMismatch("neighborhood and point live on different spaces")
    f = point.member
    if nbhd.mode == "upper":
        return not (f & ~nbhd.opens[0])
    if nbhd.mode == "lower":
        return all(f & u for u in nbhd.opens)
    union = 0
    for u in nbhd.opens:
        union |= u
    return not (f & ~union) and all(f & u for u in nbhd.opens)


def enumerate_hyperspace(space: FiniteTopSpace | MetricSpace) -> list[HyperPoint]:
    """All nonempty subsets in numeric bitmask order."""
    n = len(space.points)
    if n > HYPERSPACE_CAP:
        raise TooLarge(f"hyperspace enumeration needs |points| <= {HYPERSPACE_CAP}")
    return [HyperPoint(space, m) for m in range(1, 1 << n)]


def hausdorff_distance(f: HyperPoint, g: HyperPoint, metric: MetricSpace) -> float:
    """max of the two directed sup-inf distances between the subsets."""
    if f.space != metric or g.space != metric:
        raise SpaceMismatch("hyperspace points must live on the metric space")
    fi = list(_bits(f.member))
    gi = list(_bits(g.member))
    d = metric.dist
    forward = max(min(d[i, j] for j in gi) for i in fi)
    backward = max(min(d[i, j] for j in fi) for i in gi)
    return float(max(forward, backward))


def lipschitz_constant(f: RealFunction, metric: MetricSpace) -> float:
    """Smallest L with |f(x)-f(y)| <= L d(x,y) over all pairs."""
    n = metric.n
    best = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = metric.dist[i, j]
            if d > 0:
                best = max(best, abs(f.values[i] - f.values[j]) / d)
    return best


def subset_min(f: RealFunction, member: int) -> float:
    return min(f.values[i] for i in _bits(member))


def subset_max(f: RealFunction, member: int) -> float:
    return max(f.values[i] for i in _bits(member))


# -- the subset <-> functional correspondence --------------------------------


@dataclass(frozen=True)
class RoundtripReport:
    cases: int
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


def hyperspace_roundtrip(space: FiniteTopSpace, kind: str) -> RoundtripReport:
    """For every nonempty F check that the min/max functional over F has
    support exactly F and classifies back to the same kind and support.

    Singleton supports satisfy both the min and the max formula, so either
    class label is accepted for them.
    """
    n = space.n
    if n > 6:
        raise TooLarge("exhaustive roundtrip needs |points| <= 6")
    failures = []
    cases = 0
    expected = "R_min" if kind == "min" else "R_max"
    for m in range(1, space.full_mask + 1):
        cases += 1
        mu = SupportFunctional(space, kind, m)
        got = support(mu)
        want = space.subset(m)
        if got != want:
            failures.append(f"support({mu.label}) = {sorted(got)}, want {sorted(want)}")
            continue
        cls = classify(mu)
        label_ok = cls.kind == expected or (
            bin(m).count("1") == 1 and cls.kind in ("R_min", "R_max")
        )
        if not label_ok or cls.support != want:
            failures.append(
                f"classify({mu.label}) = ({cls.kind}, {sorted(cls.support or ())})"
            )
    return RoundtripReport(cases, tuple(failures))


# -- generated topologies on the hyperspace (discrete base spaces) ------------


def generated_topology(
    subbasis: list[frozenset[int]], universe: frozenset[int]
) -> frozenset[frozenset[int]]:
    """Close a subbasis under finite intersection, then arbitrary union."""
    base = {universe, frozenset()}
    frontier = [universe] + [s & universe for s in subbasis]
    for s in frontier:
        base.add(s)
    # finite intersections
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(base), 2):
            c = a & b
            if c not in base:
                base.add(c)
                changed = True
    # arbitrary unions, built incrementally
    opens = set(base)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(opens), 2):
            c = a | b
            if c not in opens:
                opens.add(c)
                changed = True
    return frozenset(opens)


def vietoris_topology(space: FiniteTopSpace, mode: str) -> frozenset[frozenset[int]]:
    """Topology generated on the hyperspace by upper or lower basic sets."""
    points = [h.member for h in enumerate_hyperspace(space)]
    universe = frozenset(points)
    subbasis = []
    for u in space.opens:
        if mode == "upper":
            subbasis.append(frozenset(m for m in points if not (m & ~u)))
        elif mode == "lower":
            subbasis.append(frozenset(m for m in points if m & u))
        else:
            raise InvariantViolation("mode", "must be upper or lower")
    return generated_topology(subbasis, universe)


def functional_topology(
    space: FiniteTopSpace, kind: str, sense: str
) -> frozenset[frozenset[int]]:
    """Topology induced on subsets by threshold sets of their min/max values.

    sense "above" uses {F : agg_F f > a}, sense "below" uses
    {F : agg_F f < a}; f ranges over two-valued functions and a over
    midpoints, which exhausts the generated topology on a discrete base.
    """
    points = [h.member for h in enumerate_hyperspace(space)]
    universe = frozenset(points)
    agg = subset_min if kind == "min" else subset_max
    subbasis = []
    for m in range(1, space.full_mask + 1):
        f = RealFunction(space, tuple(1.0 if (m >> i) & 1 else 0.0 for i in range(space.n)))
        for a in (-0.5, 0.5):
            if sense == "above":
                subbasis.append(frozenset(p for p in points if agg(f, p) > a))
            else:
                subbasis.append(frozenset(p for p in points if agg(f, p) < a))
    return generated_topology(subbasis, universe)
