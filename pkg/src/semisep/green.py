"""Green's relations, the H-class order, stabilizers, and Schuetzenberger groups.

Schuetzenberger groups are kept as concrete permutation sets on the H-class
(position form over the sorted class), so the regularity and order facts are
direct assertions rather than abstract quotient bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import FiniteSemigroup, HomMap, Subset, adjoin_identity
from .errors import ArgumentError, InternalError


@dataclass(frozen=True)
class GreenStructure:
    ambient: FiniteSemigroup
    h_classes: tuple[frozenset[int], ...]
    l_classes: tuple[frozenset[int], ...]
    r_classes: tuple[frozenset[int], ...]
    j_classes: tuple[frozenset[int], ...]
    group_flags: tuple[bool, ...]
    h_index_of: tuple[int, ...]

    def hclass_of(self, x: int) -> frozenset[int]:
        return self.h_classes[self.h_index_of[x]]


def _partition_by(keys) -> tuple[tuple[frozenset[int], ...], tuple[int, ...]]:
    keys = list(keys)
    buckets: dict[object, list[int]] = {}
    for x, key in enumerate(keys):
        buckets.setdefault(key, []).append(x)
    classes = sorted((frozenset(v) for v in buckets.values()), key=min)
    index_of = [0] * len(keys)
    for ci, cls in enumerate(classes):
        for x in cls:
            index_of[x] = ci
    return tuple(classes), tuple(index_of)


def _right_ideal(S: FiniteSemigroup, x: int) -> frozenset[int]:
    return frozenset({x} | {S.mul(x, t) for t in S.elements()})


def _left_ideal(S: FiniteSemigroup, x: int) -> frozenset[int]:
    return frozenset({x} | {S.mul(t, x) for t in S.elements()})


def _two_sided_ideal(S: FiniteSemigroup, x: int) -> frozenset[int]:
    right = _right_ideal(S, x)
    out = set(right)
    for y in right:
        out.update(S.mul(t, y) for t in S.elements())
    return frozenset(out)


def green_relations(S: FiniteSemigroup) -> GreenStructure:
    """H/L/R/J partitions straight from principal-ideal equality over S^1."""
    rights = [_right_ideal(S, x) for x in S.elements()]
    lefts = [_left_ideal(S, x) for x in S.elements()]
    twos = [_two_sided_ideal(S, x) for x in S.elements()]
    h_classes, h_index = _partition_by(zip(rights, lefts))
    l_classes, _ = _partition_by(lefts)
    r_classes, _ = _partition_by(rights)
    j_classes, _ = _partition_by(twos)
    flags = tuple(_h_intersects_square(S, cls) for cls in h_classes)
    return GreenStructure(
        ambient=S,
        h_classes=h_classes,
        l_classes=l_classes,
        r_classes=r_classes,
        j_classes=j_classes,
        group_flags=flags,
        h_index_of=h_index,
    )


def _h_intersects_square(S: FiniteSemigroup, H: frozenset[int]) -> bool:
    return any(S.mul(a, b) in H for a in H for b in H)


def _require_hclass(S: FiniteSemigroup, H: Iterable[int]) -> frozenset[int]:
    members = frozenset(int(x) for x in H)
    if not members:
        raise ArgumentError("empty H-class")
    rep = min(members)
    actual = frozenset(
        y
        for y in S.elements()
        if _right_ideal(S, y) == _right_ideal(S, rep) and _left_ideal(S, y) == _left_ideal(S, rep)
    )
    if members != actual:
        raise ArgumentError(f"{sorted(members)} is not an H-class (expected {sorted(actual)})")
    return members


def is_group_hclass(S: FiniteSemigroup, H: Iterable[int]) -> bool:
    """True iff H meets H^2; equivalently H contains an idempotent."""
    members = _require_hclass(S, H)
    return _h_intersects_square(S, members)


def hclass_power_witness(S: FiniteSemigroup, H: Iterable[int], nmax: int) -> Optional[int]:
    """Least n >= 2 with H intersecting H^n, or None up to nmax."""
    if nmax < 2:
        raise ArgumentError("nmax must be >= 2")
    members = _require_hclass(S, H)
    current = set(members)
    for n in range(2, nmax + 1):
        current = {S.mul(h, x) for h in members for x in current}
        if current & members:
            return n
    return None


def right_stabilizer(S: FiniteSemigroup, H: Iterable[int]) -> Subset:
    """Stab(H) = elements s of S^1 with Hs = H; always a submonoid of S^1."""
    members = _require_hclass(S, H)
    s1 = adjoin_identity(S)
    stab = frozenset(
        s for s in s1.elements() if {s1.mul(h, s) for h in members} == members
    )
    if s1.identity not in stab:
        raise InternalError("stabilizer misses the identity")
    for a in stab:
        for b in stab:
            if s1.mul(a, b) not in stab:
                raise InternalError("stabilizer is not closed")
    return Subset(ambient=s1, members=stab)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # act on the right: first p, then q
    return tuple(q[v] for v in p)


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


@dataclass(frozen=True)
class SchutzGroup:
    """Right Schuetzenberger group as permutations of the sorted H-class.

    perms[i][pos] gives the new position of hclass[pos] under the action
    h -> h*s of some stabilizer element s (the least such s is recorded in
    realizer).
    """

    hclass: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]
    identity_perm: tuple[int, ...]
    s1: FiniteSemigroup
    stabilizer: tuple[int, ...]
    realizer: dict[tuple[int, ...], int] = field(compare=False)
    perm_of_stab: dict[int, tuple[int, ...]] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.perms)

    def is_abelian(self) -> bool:
        return all(_compose(p, q) == _compose(q, p) for p in self.perms for q in self.perms)

    def is_cyclic(self) -> bool:
        target = set(self.perms)
        for p in self.perms:
            seen = {p}
            cur = p
            while True:
                cur = _compose(cur, p)
                if cur in seen:
                    break
                seen.add(cur)
            if seen == target:
                return True
        return False

    def cycle_notation(self, perm: tuple[int, ...]) -> str:
        """Cycles written over element ids, fixed points omitted."""
        seen = [False] * len(perm)
        cycles = []
        for start in range(len(perm)):
            if seen[start] or perm[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = perm[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = perm[nxt]
            cycles.append("(" + " ".join(str(self.hclass[i]) for i in cyc) + ")")
        return "".join(cycles) if cycles else "()"


def schutzenberger_group(S: FiniteSemigroup, H: Iterable[int]) -> SchutzGroup:
    """Distinct permutations h -> h*s over the right stabilizer of H.

    Construction-time assertions: each action is a bijection of H, the
    collected set is a group, |perms| = |H|, and the action is regular.
    """
    members = _require_hclass(S, H)
    stab = right_stabilizer(S, members)
    s1 = stab.ambient
    hsorted = tuple(sorted(members))
    pos = {h: i for i, h in enumerate(hsorted)}
    realizer: dict[tuple[int, ...], int] = {}
    perm_of_stab: dict[int, tuple[int, ...]] = {}
    for s in sorted(stab.members):
        images = [s1.mul(h, s) for h in hsorted]
        if set(images) != members:
            raise InternalError(f"stabilizer element {s} does not permute the H-class")
        perm = tuple(pos[im] for im in images)
        perm_of_stab[s] = perm
        realizer.setdefault(perm, s)
    perms = tuple(sorted(realizer))
    identity_perm = tuple(range(len(hsorted)))
    if identity_perm not in realizer:
        raise InternalError("identity permutation missing")
    for p in perms:
        if _invert(p) not in realizer:
            raise InternalError("permutation set not closed under inverse")
        for q in perms:
            if _compose(p, q) not in realizer:
                raise InternalError("permutation set not closed under composition")
    if len(perms) != len(hsorted):
        raise InternalError(f"|Gamma(H)| = {len(perms)} differs from |H| = {len(hsorted)}")
    for i in range(len(hsorted)):
        for j in range(len(hsorted)):
            if sum(1 for p in perms if p[i] == j) != 1:
                raise InternalError("action is not regular")
    return SchutzGroup(
        hclass=hsorted,
        perms=perms,
        identity_perm=identity_perm,
        s1=s1,
        stabilizer=tuple(sorted(stab.members)),
        realizer=realizer,
        perm_of_stab=perm_of_stab,
    )


@dataclass(frozen=True)
class HClassOrder:
    """Partial order on H-class indices of a commutative semigroup."""

    ambient: FiniteSemigroup
    classes: tuple[frozenset[int], ...]
    relation: frozenset[tuple[int, int]]  # (i, j) means H_i <= H_j
    minimal: Optional[int]

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.relation


def hclass_order(S: FiniteSemigroup) -> HClassOrder:
    """H_x <= H_y iff x lies in the principal right ideal of y.

    Defined for commutative input only; there the relation is antisymmetric
    and has at most one minimal class.
    """
    if not S.is_commutative():
        raise ArgumentError("the H-class order needs a commutative semigroup")
    gs = green_relations(S)
    reps = [min(cls) for cls in gs.h_classes]
    ideals = [_right_ideal(S, r) for r in reps]
    rel = set()
    k = len(reps)
    for i in range(k):
        for j in range(k):
            if reps[i] in ideals[j]:
                rel.add((i, j))
    for i in range(k):
        if (i, i) not in rel:
            raise InternalError("H-class order not reflexive")
        for j in range(k):
            if (i, j) in rel and (j, i) in rel and i != j:
                raise InternalError("H-class order not antisymmetric")
            for l in range(k):
                if (i, j) in rel and (j, l) in rel and (i, l) not in rel:
                    raise InternalError("H-class order not transitive")
    minimals = [i for i in range(k) if not any((j, i) in rel for j in range(k) if j != i)]
    minimal = minimals[0] if len(minimals) == 1 else None
    if minimal is not None and any((minimal, j) not in rel for j in range(k)):
        raise InternalError("unique minimal H-class is not the least")
    return HClassOrder(ambient=S, classes=gs.h_classes, relation=frozenset(rel), minimal=minimal)


@dataclass(frozen=True)
class SchutzHom:
    """The homomorphism Gamma_S(H) -> Gamma_U(H') induced by a semigroup hom."""

    source: SchutzGroup
    target: SchutzGroup
    perm_map: dict[tuple[int, ...], tuple[int, ...]] = field(compare=False)

    def is_injective(self) -> bool:
        return len(set(self.perm_map.values())) == len(self.perm_map)

    def image_order(self) -> int:
        return len(set(self.perm_map.values()))


def induced_schutz_map(
    S: FiniteSemigroup,
    U: FiniteSemigroup,
    phi: HomMap,
    H: Iterable[int],
    h: int,
) -> SchutzHom:
    """Map each permutation realized by v in Stab(H) to the one realized by phi(v).

    Well-definedness (sigma-equivalent realizers agree downstairs) and
    multiplicativity are verified exhaustively; a failure means the table
    or the homomorphism is corrupt.
    """
    members = _require_hclass(S, H)
    if h not in members:
        raise ArgumentError("base point h must lie in H")
    if phi.source.table != S.table or phi.target.table != U.table:
        raise ArgumentError("homomorphism endpoints do not match S and U")
    gamma_s = schutzenberger_group(S, members)
    target_class = green_relations(U).hclass_of(phi(h))
    gamma_u = schutzenberger_group(U, target_class)

    u1 = gamma_u.s1

    def phi1(v: int) -> int:
        # extend phi over formal identities of S^1 / U^1
        if v < S.order:
            return phi(v)
        return U.order if u1.order > U.order else U.identity

    perm_map: dict[tuple[int, ...], tuple[int, ...]] = {}
    for v, src_perm in gamma_s.perm_of_stab.items():
        w = phi1(v)
        if w not in gamma_u.perm_of_stab:
            raise InternalError(f"phi({v}) = {w} does not stabilize the target H-class")
        tgt_perm = gamma_u.perm_of_stab[w]
        if src_perm in perm_map and perm_map[src_perm] != tgt_perm:
            raise InternalError("induced map is not well defined")
        perm_map[src_perm] = tgt_perm
    for p in gamma_s.perms:
        for q in gamma_s.perms:
            if perm_map[_compose(p, q)] != _compose(perm_map[p], perm_map[q]):
                raise InternalError("induced map is not multiplicative")
    return SchutzHom(source=gamma_s, target=gamma_u, perm_map=perm_map)
