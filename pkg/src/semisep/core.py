"""Finite semigroups as explicit multiplication tables.

Elements are dense integer indices 0..order-1; labels are display-only.
All derived objects (closures, products, quotients) fix a canonical
element order in their contract so outputs are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ArgumentError, FormatError, ResourceError

DEFAULT_ORDER_CAP = 10_000


def validate_associativity(table: Sequence[Sequence[int]]) -> Optional[tuple[int, int, int]]:
    """Exhaustive triple check.

    Returns None when every triple associates, otherwise the
    lexicographically least violating triple (i, j, k).  Shape and range
    problems raise FormatError.
    """
    n = len(table)
    for row in table:
        if len(row) != n:
            raise FormatError("table is not square")
        for entry in row:
            if not isinstance(entry, int) or not 0 <= entry < n:
                raise FormatError(f"table entry {entry!r} out of range 0..{n - 1}")
    for i in range(n):
        ti = table[i]
        for j in range(n):
            tij = table[i][j]
            tj = table[j]
            for k in range(n):
                if table[tij][k] != ti[tj[k]]:
                    return (i, j, k)
    return None


def _detect_identity(table) -> Optional[int]:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x == table[x][e] for x in range(n)):
            return e
    return None


def _detect_zero(table) -> Optional[int]:
    n = len(table)
    for z in range(n):
        if all(table[z][x] == z == table[x][z] for x in range(n)):
            return z
    return None


@dataclass(frozen=True)
class FiniteSemigroup:
    """An immutable multiplication table; entry table[i][j] is the product i*j."""

    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None
    generators: Optional[tuple[int, ...]] = None
    identity: Optional[int] = field(default=None, compare=False)
    zero: Optional[int] = field(default=None, compare=False)

    @staticmethod
    def from_table(
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        generators: Optional[Sequence[int]] = None,
        *,
        check: bool = True,
        cap: Optional[int] = None,
    ) -> "FiniteSemigroup":
        """Build a semigroup, eagerly validating the table.

        `check=False` skips the O(n^3) associativity scan; it is meant for
        trusted internal builders only.  Shape, range, the order cap, and
        the generating property are always verified.
        """
        cap = DEFAULT_ORDER_CAP if cap is None else cap
        n = len(table)
        if n == 0:
            raise FormatError("empty table")
        if n > cap:
            raise ResourceError(f"order {n} exceeds cap {cap}")
        rows = tuple(tuple(row) for row in table)
        for row in rows:
            if len(row) != n:
                raise FormatError("table is not square")
            for entry in row:
                if not isinstance(entry, int) or not 0 <= entry < n:
                    raise FormatError(f"table entry {entry!r} out of range 0..{n - 1}")
        if check:
            bad = validate_associativity(rows)
            if bad is not None:
                raise FormatError(f"table is not associative at triple {bad}")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise FormatError("label count differs from order")
        if generators is not None:
            generators = tuple(dict.fromkeys(int(g) for g in generators))
            for g in generators:
                if not 0 <= g < n:
                    raise FormatError(f"generator {g} out of range")
        sg = FiniteSemigroup(
            table=rows,
            labels=labels,
            generators=generators,
            identity=_detect_identity(rows),
            zero=_detect_zero(rows),
        )
        if generators:
            if set(closure(sg, generators)) != set(range(n)):
                raise ArgumentError("declared generators do not generate")
        return sg

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 1:
            raise ArgumentError("semigroup powers need k >= 1")
        acc = a
        for _ in range(k - 1):
            acc = self.table[acc][a]
        return acc

    def is_commutative(self) -> bool:
        t = self.table
        n = self.order
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))

    def idempotents(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements() if self.table[x][x] == x)

    def label_of(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


@dataclass(frozen=True)
class Subset:
    """A subset of a semigroup's element indices."""

    ambient: FiniteSemigroup
    members: frozenset[int]

    def __post_init__(self):
        for x in self.members:
            if not 0 <= x < self.ambient.order:
                raise ArgumentError(f"subset member {x} out of range")


@dataclass(frozen=True)
class HomMap:
    """A verified homomorphism source -> target, stored pointwise."""

    source: FiniteSemigroup
    target: FiniteSemigroup
    mapping: tuple[int, ...]

    @staticmethod
    def checked(mapping: Sequence[int], source: FiniteSemigroup, target: FiniteSemigroup) -> "HomMap":
        result = check_hom(mapping, source, target)
        if not isinstance(result, HomMap):
            raise ArgumentError(f"map is not a homomorphism; first violation at pair {result}")
        return result

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def check_hom(mapping: Sequence[int], source: FiniteSemigroup, target: FiniteSemigroup):
    """Validate a pointwise map; returns a HomMap or the least violating pair (i, j)."""
    m = tuple(int(x) for x in mapping)
    if len(m) != source.order:
        raise FormatError("map length differs from source order")
    for v in m:
        if not 0 <= v < target.order:
            raise FormatError(f"map value {v} out of target range")
    for i in range(source.order):
        for j in range(source.order):
            if m[source.mul(i, j)] != target.mul(m[i], m[j]):
                return (i, j)
    return HomMap(source=source, target=target, mapping=m)


def compose_homs(first: HomMap, second: HomMap) -> HomMap:
    if first.target.table != second.source.table:
        raise ArgumentError("homomorphisms do not compose")
    return HomMap(
        source=first.source,
        target=second.target,
        mapping=tuple(second.mapping[v] for v in first.mapping),
    )


def closure(S: FiniteSemigroup, X: Iterable[int]) -> tuple[int, ...]:
    """Subsemigroup generated by X, in breadth-first discovery order.

    The frontier is processed in index order, and products are taken seed
    by seed, so the output order is canonical.
    """
    seeds = sorted(set(int(x) for x in X))
    if not seeds:
        raise ArgumentError("closure of an empty set")
    for x in seeds:
        if not 0 <= x < S.order:
            raise ArgumentError(f"element {x} out of range")
    seen = list(seeds)
    member = set(seeds)
    frontier = list(seeds)
    while frontier:
        new: list[int] = []
        for a in frontier:
            for b in seen:
                for p in (S.mul(a, b), S.mul(b, a)):
                    if p not in member:
                        member.add(p)
                        seen.append(p)
                        new.append(p)
        frontier = sorted(new)
    return tuple(seen)


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """S itself when it already has an identity, else S with one appended."""
    if S.identity is not None:
        return S
    n = S.order
    rows = [list(row) + [i] for i, row in enumerate(S.table)]
    rows.append(list(range(n + 1)))
    labels = tuple(S.labels) + ("1",) if S.labels else None
    return FiniteSemigroup.from_table(rows, labels=labels, check=False)


def adjoin_zero(S: FiniteSemigroup) -> FiniteSemigroup:
    """Always appends a fresh absorbing element (mirrors the zero-group usage)."""
    n = S.order
    rows = [list(row) + [n] for row in S.table]
    rows.append([n] * (n + 1))
    labels = tuple(S.labels) + ("0",) if S.labels else None
    return FiniteSemigroup.from_table(rows, labels=labels, check=False)


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup, *, cap: Optional[int] = None) -> FiniteSemigroup:
    """Componentwise product; element (i, j) gets index i*|T| + j."""
    cap = DEFAULT_ORDER_CAP if cap is None else cap
    n, m = S.order, T.order
    if n * m > cap:
        raise ResourceError(f"product order {n * m} exceeds cap {cap}")
    rows = [
        [S.mul(i1, i2) * m + T.mul(j1, j2) for i2 in range(n) for j2 in range(m)]
        for i1 in range(n)
        for j1 in range(m)
    ]
    labels = None
    if S.labels or T.labels:
        labels = tuple(
            f"({S.label_of(i)},{T.label_of(j)})" for i in range(n) for j in range(m)
        )
    return FiniteSemigroup.from_table(rows, labels=labels, check=False)


def is_ideal(S: FiniteSemigroup, X: Iterable[int]) -> bool:
    """True iff SX and XS both land inside X."""
    members = set(int(x) for x in X)
    if not members:
        raise ArgumentError("empty set cannot be an ideal")
    for x in members:
        for s in S.elements():
            if S.mul(s, x) not in members or S.mul(x, s) not in members:
                return False
    return True


def quotient_by_classes(S: FiniteSemigroup, class_of: Sequence[int]) -> tuple[FiniteSemigroup, HomMap]:
    """Quotient table for a compatible partition given as a class-index vector.

    Class indices must already be dense and ordered by least member.
    Generators are carried through as images; labels join member labels.
    """
    k = max(class_of) + 1
    reps = [None] * k
    for x, c in enumerate(class_of):
        if reps[c] is None:
            reps[c] = x
    rows = [[class_of[S.mul(reps[a], reps[b])] for b in range(k)] for a in range(k)]
    labels = None
    if S.labels:
        members: list[list[str]] = [[] for _ in range(k)]
        for x, c in enumerate(class_of):
            members[c].append(S.label_of(x))
        labels = tuple("|".join(ms) for ms in members)
    gens = None
    if S.generators is not None:
        gens = tuple(dict.fromkeys(class_of[g] for g in S.generators))
    Q = FiniteSemigroup.from_table(rows, labels=labels, generators=gens, check=False)
    proj = HomMap(source=S, target=Q, mapping=tuple(class_of))
    return Q, proj


def rees_quotient(S: FiniteSemigroup, I: Iterable[int]) -> tuple[FiniteSemigroup, HomMap]:
    """Collapse the ideal I to a single zero; all other classes stay singletons."""
    members = frozenset(int(x) for x in I)
    if not is_ideal(S, members):
        raise ArgumentError("given set is not an ideal")
    zero_class_rank = min(members)
    class_of = []
    nxt = 0
    assigned: dict[int, int] = {}
    for x in S.elements():
        if x in members:
            key = zero_class_rank
        else:
            key = x
        if key not in assigned:
            assigned[key] = nxt
            nxt += 1
        class_of.append(assigned[key])
    return quotient_by_classes(S, class_of)


# -- Cayley table text format ------------------------------------------------
#
#   line 1: n
#   lines 2..n+1: n whitespace-separated 0-based indices
#   optional trailing lines: "label k name" and "gen k"

def parse_table_text(text: str, *, check: bool = True, cap: Optional[int] = None) -> FiniteSemigroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty table file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise FormatError("first line must be the order") from exc
    if n < 1:
        raise FormatError("order must be positive")
    if len(lines) < 1 + n:
        raise FormatError("missing table rows")
    rows = []
    for ln in lines[1 : 1 + n]:
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError as exc:
            raise FormatError(f"bad table row {ln!r}") from exc
        rows.append(row)
    labels: Optional[list[str]] = None
    gens: list[int] = []
    for ln in lines[1 + n :]:
        parts = ln.split()
        if parts[0] == "label" and len(parts) >= 3:
            if labels is None:
                labels = [str(i) for i in range(n)]
            idx = int(parts[1])
            if not 0 <= idx < n:
                raise FormatError(f"label index {idx} out of range")
            labels[idx] = " ".join(parts[2:])
        elif parts[0] == "gen" and len(parts) == 2:
            gens.append(int(parts[1]))
        else:
            raise FormatError(f"unrecognised trailer line {ln!r}")
    return FiniteSemigroup.from_table(
        rows, labels=labels, generators=gens or None, check=check, cap=cap
    )


def format_table_text(S: FiniteSemigroup) -> str:
    out = [str(S.order)]
    out.extend(" ".join(str(v) for v in row) for row in S.table)
    if S.labels:
        out.extend(f"label {i} {lab}" for i, lab in enumerate(S.labels))
    if S.generators:
        out.extend(f"gen {g}" for g in S.generators)
    return "\n".join(out) + "\n"


def load_table(path, *, check: bool = True, cap: Optional[int] = None) -> FiniteSemigroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_table_text(fh.read(), check=check, cap=cap)


def save_table(S: FiniteSemigroup, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_table_text(S))


# -- ready-made small semigroups used across the toolkit ----------------------

def cyclic_group(n: int) -> FiniteSemigroup:
    """Additive group of integers mod n."""
    if n < 1:
        raise ArgumentError("cyclic group needs n >= 1")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteSemigroup.from_table(
        rows, labels=[str(i) for i in range(n)], generators=[1 % n], check=False
    )


def null_semigroup(n: int) -> FiniteSemigroup:
    """n non-zero elements plus a zero; every product is the zero."""
    if n < 1:
        raise ArgumentError("null semigroup needs n >= 1")
    rows = [[n] * (n + 1) for _ in range(n + 1)]
    labels = [f"x{i}" for i in range(n)] + ["0"]
    return FiniteSemigroup.from_table(rows, labels=labels, check=False)


def left_zero_semigroup(n: int) -> FiniteSemigroup:
    rows = [[i] * n for i in range(n)]
    return FiniteSemigroup.from_table(rows, check=False)


def monogenic_semigroup(index: int, period: int) -> FiniteSemigroup:
    """Powers a^1..a^(index+period-1) with a^(index+period) = a^index."""
    if index < 1 or period < 1:
        raise ArgumentError("index and period must be >= 1")
    n = index + period - 1

    def red(k: int) -> int:
        while k > n:
            k -= period
        return k

    rows = [[red(i + j + 2) - 1 for j in range(n)] for i in range(n)]
    labels = [f"a^{i + 1}" for i in range(n)]
    return FiniteSemigroup.from_table(rows, labels=labels, generators=[0], check=False)


def semilattice_chain(n: int) -> FiniteSemigroup:
    """Total order 0 > 1 > ... > n-1 under meet (x*y = max index)."""
    if n < 1:
        raise ArgumentError("chain needs n >= 1")
    rows = [[max(i, j) for j in range(n)] for i in range(n)]
    return FiniteSemigroup.from_table(rows, check=False)


def mult_mod(n: int) -> FiniteSemigroup:
    """Multiplicative monoid of integers mod n."""
    if n < 1:
        raise ArgumentError("modulus must be >= 1")
    rows = [[(i * j) % n for j in range(n)] for i in range(n)]
    return FiniteSemigroup.from_table(rows, labels=[str(i) for i in range(n)], check=False)
