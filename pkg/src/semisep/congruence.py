"""Congruences on finite semigroups.

Congruences are stored as class-index vectors (dense indices ordered by
least member), which makes membership O(1) and comparisons canonical.
Enumeration goes through join-closure of principal congruences; the naive
partition filter is kept as a small-order oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import FiniteSemigroup, HomMap, Subset, quotient_by_classes, is_ideal
from .errors import ArgumentError, ResourceError

DEFAULT_ENUM_CAP = 12
DEFAULT_LATTICE_CAP = 200_000


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            x, p[x] = p[x], p[p[x]]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _canonical_class_of(roots: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for r in roots:
        if r not in relabel:
            relabel[r] = len(relabel)
        out.append(relabel[r])
    return tuple(out)


@dataclass(frozen=True)
class Congruence:
    ambient: FiniteSemigroup
    class_of: tuple[int, ...]
    index: int

    @staticmethod
    def from_class_of(S: FiniteSemigroup, class_of: Sequence[int], *, check: bool = True) -> "Congruence":
        if len(class_of) != S.order:
            raise ArgumentError("class vector length differs from order")
        # normalise: dense indices ordered by least member
        reps: dict[int, int] = {}
        for x, c in enumerate(class_of):
            reps.setdefault(c, x)
        vec = _canonical_class_of([reps[c] for c in class_of])
        cong = Congruence(ambient=S, class_of=vec, index=max(vec) + 1)
        if check:
            bad = cong.compatibility_violation()
            if bad is not None:
                raise ArgumentError(f"partition is not compatible at {bad}")
        return cong

    def compatibility_violation(self) -> Optional[tuple[int, int, int]]:
        S = self.ambient
        vec = self.class_of
        for a in S.elements():
            for b in range(a + 1, S.order):
                if vec[a] != vec[b]:
                    continue
                for c in S.elements():
                    if vec[S.mul(a, c)] != vec[S.mul(b, c)]:
                        return (a, b, c)
                    if vec[S.mul(c, a)] != vec[S.mul(c, b)]:
                        return (a, b, c)
        return None

    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.index)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return tuple(tuple(cls) for cls in out)

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]


def _close_under_translations(S: FiniteSemigroup, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    uf = _UnionFind(S.order)
    queue = [(int(a), int(b)) for a, b in pairs]
    for a, b in queue:
        if not (0 <= a < S.order and 0 <= b < S.order):
            raise ArgumentError(f"pair ({a}, {b}) out of range")
    while queue:
        a, b = queue.pop()
        if not uf.union(a, b):
            continue
        for c in S.elements():
            queue.append((S.mul(a, c), S.mul(b, c)))
            queue.append((S.mul(c, a), S.mul(c, b)))
    return _canonical_class_of([uf.find(x) for x in S.elements()])


def principal_congruence(S: FiniteSemigroup, a: int, b: int) -> Congruence:
    """Least congruence identifying a and b."""
    vec = _close_under_translations(S, [(a, b)])
    return Congruence.from_class_of(S, vec, check=False)


def congruence_from_pairs(S: FiniteSemigroup, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Join of the principal congruences of the given pairs.

    An empty pair list yields the equality congruence.
    """
    vec = _close_under_translations(S, pairs)
    return Congruence.from_class_of(S, vec, check=False)


def equality_congruence(S: FiniteSemigroup) -> Congruence:
    return Congruence.from_class_of(S, list(S.elements()), check=False)


def universal_congruence(S: FiniteSemigroup) -> Congruence:
    return Congruence.from_class_of(S, [0] * S.order, check=False)


def _join(S: FiniteSemigroup, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    # transitive closure of the union of two congruences is a congruence
    uf = _UnionFind(S.order)
    for vec in (u, v):
        first: dict[int, int] = {}
        for x, c in enumerate(vec):
            if c in first:
                uf.union(first[c], x)
            else:
                first[c] = x
    return _canonical_class_of([uf.find(x) for x in S.elements()])


def all_congruences(
    S: FiniteSemigroup,
    *,
    cap: int = DEFAULT_ENUM_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
) -> list[Congruence]:
    """Every congruence of S, sorted by (index, class vector).

    Computed as the join-closure of all principal congruences plus the
    equality congruence.
    """
    if S.order > cap:
        raise ResourceError(f"order {S.order} exceeds congruence enumeration cap {cap}")
    principals = set()
    for a in S.elements():
        for b in range(a + 1, S.order):
            principals.add(principal_congruence(S, a, b).class_of)
    seen = set(principals)
    seen.add(equality_congruence(S).class_of)
    frontier = list(principals)
    while frontier:
        vec = frontier.pop()
        for p in principals:
            joined = _join(S, vec, p)
            if joined not in seen:
                if len(seen) >= lattice_cap:
                    raise ResourceError(f"congruence lattice exceeds cap {lattice_cap}")
                seen.add(joined)
                frontier.append(joined)
    congs = [Congruence.from_class_of(S, vec, check=False) for vec in seen]
    congs.sort(key=lambda c: (c.index, c.class_of))
    return congs


def partition_filter_congruences(S: FiniteSemigroup, *, cap: int = 8) -> list[Congruence]:
    """Oracle: filter every set partition by compatibility.  Small orders only."""
    if S.order > cap:
        raise ResourceError(f"order {S.order} exceeds partition filter cap {cap}")
    n = S.order
    out = []

    def extend(vec: list[int], nclasses: int):
        if len(vec) == n:
            cong = Congruence(ambient=S, class_of=tuple(vec), index=nclasses)
            if cong.compatibility_violation() is None:
                out.append(cong)
            return
        for c in range(nclasses + 1):  # restricted growth strings
            vec.append(c)
            extend(vec, max(nclasses, c + 1))
            vec.pop()

    extend([], 0)
    out.sort(key=lambda c: (c.index, c.class_of))
    return out


def quotient(S: FiniteSemigroup, c: Congruence) -> tuple[FiniteSemigroup, HomMap]:
    if c.ambient.table != S.table:
        raise ArgumentError("congruence belongs to a different semigroup")
    return quotient_by_classes(S, c.class_of)


def separates(c: Congruence, x: int, T: Iterable[int]) -> bool:
    """True iff the class of x avoids the classes of every member of T."""
    members = set(int(t) for t in T)
    if x in members:
        raise ArgumentError("x must lie outside T")
    cx = c.class_of[x]
    return all(c.class_of[t] != cx for t in members)


@dataclass(frozen=True)
class SeparationCertificate:
    congruence: Congruence
    element: int
    avoided: frozenset[int]

    def __post_init__(self):
        if not separates(self.congruence, self.element, self.avoided):
            raise ArgumentError("certificate does not separate")


def min_index_separating(
    S: FiniteSemigroup,
    x: int,
    T: Iterable[int],
    *,
    cap: int = DEFAULT_ENUM_CAP,
) -> SeparationCertificate:
    """Separating congruence of minimal index; class-vector order breaks ties.

    Always succeeds on valid finite input because the equality congruence
    separates anything from anything.
    """
    members = frozenset(int(t) for t in T)
    if x in members:
        raise ArgumentError("x must lie outside T")
    for c in all_congruences(S, cap=cap):
        if separates(c, x, members):
            return SeparationCertificate(congruence=c, element=x, avoided=members)
    raise ArgumentError("unreachable: equality congruence always separates")


def rees_congruence(S: FiniteSemigroup, I: Iterable[int]) -> Congruence:
    """Classes are I itself and singletons; index |S| - |I| + 1."""
    members = frozenset(int(x) for x in I)
    if not is_ideal(S, members):
        raise ArgumentError("given set is not an ideal")
    vec = [min(members) if x in members else x for x in S.elements()]
    return Congruence.from_class_of(S, vec, check=False)
