"""Finitely generated commutative semigroups over exponent vectors.

Three layers live here:

* a bounded congruence-closure engine for commutative presentations, with a
  finiteness certificate that is only issued when a verified finite quotient
  table reproduces the presentation (then equality decisions are exact);
* the stabilizer-lattice parameters of an element (generator set meeting the
  stabilizer, the point-stabilizer preimage in N_0^k, its integer lattice and
  rank), exact for finite tables and for the built-in symbolic semigroups
  Z, N and N_0 x Z;
* the constructive finite-index congruence that isolates a chosen element of
  a finite commutative semigroup, built literally from minimal ideal
  generators found by a Dickson scan.

All lattice work uses exact integer arithmetic (Hermite normal form); no
floating point enters any decision.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from math import prod
from typing import Callable, Iterable, Optional, Sequence

from .congruence import (
    Congruence,
    SeparationCertificate,
    congruence_from_pairs,
    equality_congruence,
    quotient,
)
from .core import FiniteSemigroup, HomMap, adjoin_identity, closure, rees_quotient, validate_associativity
from .errors import ArgumentError, FormatError, InternalError, ResourceError
from .green import green_relations, hclass_order, right_stabilizer

ExpVec = tuple[int, ...]

EQUAL = "equal"
DISTINCT = "distinct"
UNKNOWN = "unknown"


# -- exponent vector helpers --------------------------------------------------

def vec_add(u: ExpVec, v: ExpVec) -> ExpVec:
    return tuple(a + b for a, b in zip(u, v))


def vec_leq(u: ExpVec, v: ExpVec) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _check_vec(v: Sequence[int], k: int, *, allow_zero: bool = False) -> ExpVec:
    vec = tuple(int(c) for c in v)
    if len(vec) != k:
        raise ArgumentError(f"vector {vec} has length {len(vec)}, expected {k}")
    if any(c < 0 for c in vec):
        raise ArgumentError(f"vector {vec} has a negative coordinate")
    if not allow_zero and not any(vec):
        raise ArgumentError("semigroup elements need positive total degree")
    return vec


def _unit(i: int, k: int) -> ExpVec:
    return tuple(1 if j == i else 0 for j in range(k))


# -- integer lattices via Hermite normal form ---------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hnf_rows(vectors: Iterable[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    """Hermite normal form (row style) of the lattice spanned by the rows.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    pivot columns strictly increase.  Exact big-integer arithmetic.
    """
    basis: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        vec = [int(c) for c in v]
        if len(vec) != k:
            raise ArgumentError("row length mismatch")
        while True:
            nz = next((c for c in range(k) if vec[c]), None)
            if nz is None:
                break
            pos = bisect_left(pivots, nz)
            if pos < len(pivots) and pivots[pos] == nz:
                row = basis[pos]
                a, b = row[nz], vec[nz]
                if b % a == 0:
                    q = b // a
                    for c in range(nz, k):
                        vec[c] -= q * row[c]
                else:
                    g, x, y = _xgcd(a, b)
                    ag, bg = a // g, b // g
                    for c in range(nz, k):
                        ra, vb = row[c], vec[c]
                        row[c] = x * ra + y * vb
                        vec[c] = -bg * ra + ag * vb
            else:
                basis.insert(pos, vec)
                pivots.insert(pos, nz)
                break
    for i, row in enumerate(basis):
        if row[pivots[i]] < 0:
            basis[i] = [-c for c in row]
    for i in range(len(basis)):
        p = pivots[i]
        piv = basis[i][p]
        for i2 in range(i):
            q = basis[i2][p] // piv
            if q:
                for c in range(p, k):
                    basis[i2][c] -= q * basis[i][c]
    return tuple(tuple(row) for row in basis)


def in_lattice(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Membership of an integer vector in the row span of an HNF basis."""
    v = [int(c) for c in vec]
    k = len(v)
    rows = [list(r) for r in basis]
    pivots = [next(c for c in range(k) if r[c]) for r in rows]
    for r, p in zip(rows, pivots):
        if any(v[c] for c in range(p)):
            return False
        if v[p] % r[p]:
            return False
        q = v[p] // r[p]
        for c in range(p, k):
            v[c] -= q * r[c]
    return not any(v)


def kernel_of_linear_form(lam: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """HNF basis of {v in Z^k : lam . v = 0}."""
    lam = [int(c) for c in lam]
    k = len(lam)
    kernel: list[list[int]] = []
    main: Optional[tuple[int, list[int]]] = None
    for i, val in enumerate(lam):
        vec = [1 if j == i else 0 for j in range(k)]
        if val == 0:
            kernel.append(vec)
            continue
        if main is None:
            main = (val, vec)
            continue
        a, mvec = main
        g, x, y = _xgcd(a, val)
        ag, bg = a // g, val // g
        kernel.append([-bg * ma + ag * vb for ma, vb in zip(mvec, vec)])
        main = (g, [x * ma + y * vb for ma, vb in zip(mvec, vec)])
    return hnf_rows(kernel, k)


# -- commutative presentations -------------------------------------------------

@dataclass(frozen=True)
class CommPresentation:
    """k generators and relations between exponent vectors of positive degree."""

    k: int
    relations: tuple[tuple[ExpVec, ExpVec], ...]

    @staticmethod
    def make(k: int, relations: Iterable[tuple[Sequence[int], Sequence[int]]]) -> "CommPresentation":
        if k < 1:
            raise ArgumentError("presentations need at least one generator")
        rels = tuple(
            (_check_vec(l, k), _check_vec(r, k)) for l, r in relations
        )
        return CommPresentation(k=k, relations=rels)

    def max_exponent(self) -> int:
        m = 0
        for l, r in self.relations:
            m = max(m, max(l, default=0), max(r, default=0))
        return m


def parse_presentation_text(text: str) -> CommPresentation:
    """Format: first line "gens k", then lines "rel e1 .. ek = f1 .. fk"."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("gens"):
        raise FormatError('presentation must start with a "gens k" line')
    try:
        k = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError("bad gens line") from exc
    rels = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] != "rel" or "=" not in parts:
            raise FormatError(f"bad relation line {ln!r}")
        eq = parts.index("=")
        try:
            lhs = [int(t) for t in parts[1:eq]]
            rhs = [int(t) for t in parts[eq + 1 :]]
        except ValueError as exc:
            raise FormatError(f"bad relation line {ln!r}") from exc
        rels.append((lhs, rhs))
    try:
        return CommPresentation.make(k, rels)
    except ArgumentError as exc:
        raise FormatError(str(exc)) from exc


def format_presentation_text(pres: CommPresentation) -> str:
    out = [f"gens {pres.k}"]
    for l, r in pres.relations:
        out.append("rel " + " ".join(map(str, l)) + " = " + " ".join(map(str, r)))
    return "\n".join(out) + "\n"


def monomial_label(vec: ExpVec) -> str:
    names = "abcdefgh"
    parts = []
    for i, c in enumerate(vec):
        if not c:
            continue
        name = names[i] if len(vec) <= len(names) else f"x{i}"
        parts.append(name if c == 1 else f"{name}^{c}")
    return "*".join(parts) if parts else "1"


# -- bounded congruence closure engine ------------------------------------------

class _UF:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            x, p[x] = p[x], p[p[x]]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx > ry:
                rx, ry = ry, rx
            self.parent[ry] = rx


@dataclass(frozen=True)
class FiniteCertificate:
    """Issued only when the engine verified a finite quotient table.

    periods[i] = (p, r) with generator i satisfying x^p = x^(p+r) inside the
    explored box.  When present, the presented semigroup has exactly `count`
    elements and the engine's equality answers are exact.
    """

    count: int
    periods: tuple[tuple[int, int], ...]


class NFEngine:
    """Breadth-first congruence closure over exponent vectors with bounded coordinates.

    Chains of relation applications are only followed while they stay inside
    the box [0, bound]^k, so merges are always sound.  The finiteness
    certificate is issued only after these verifications succeed:

    * every generator has a box-derivable power identity x^p = x^(p+r);
    * the reduced grid (coordinates below p+r) fits twice over in the box;
    * every box class that meets the doubled grid has a grid representative;
    * multiplication of grid classes is well defined, associative, and
      satisfies all defining relations in the resulting finite table.

    The table is then a finite image of the presented semigroup in which all
    grid classes stay distinct, and a counting argument pins the presented
    semigroup to be exactly that table; equality of arbitrary words is then
    decided by evaluating them in the table.
    """

    def __init__(self, pres: CommPresentation, bound: int, *, box_cap: int = 2_000_000):
        if bound < 1:
            raise ArgumentError("bound must be >= 1")
        if bound < pres.max_exponent():
            raise ArgumentError("bound must cover every relation exponent")
        self.pres = pres
        self.bound = bound
        k = pres.k
        radix = bound + 1
        if radix**k > box_cap:
            raise ResourceError(f"box size {radix ** k} exceeds cap {box_cap}")
        self._radix = radix
        self._size = radix**k

        uf = _UF(self._size)
        box = list(itertools.product(range(radix), repeat=k))
        enc = self._encode
        for l, r in pres.relations:
            for v in box:
                if all(a >= b for a, b in zip(v, l)):
                    w = tuple(a - b + c for a, b, c in zip(v, l, r))
                    if all(c <= bound for c in w):
                        uf.union(enc(v), enc(w))
        self._uf = uf

        reps: dict[int, ExpVec] = {}
        for v in box:  # lex order, so first hit is the lex-least member
            if not any(v):
                continue
            reps.setdefault(uf.find(enc(v)), v)
        self._rep_of_root = reps

        self.periods = self._find_periods()
        self.certificate: Optional[FiniteCertificate] = None
        self.table: Optional[FiniteSemigroup] = None
        self._grid_index: dict[int, int] = {}
        self._gen_elems: tuple[int, ...] = ()
        if self.periods is not None:
            self._try_certify()

    # ---- plumbing

    def _encode(self, v: ExpVec) -> int:
        code = 0
        for c in v:
            code = code * self._radix + c
        return code

    def in_box(self, v: ExpVec) -> bool:
        return all(0 <= c <= self.bound for c in v)

    def class_root(self, v: Sequence[int]) -> int:
        vec = _check_vec(v, self.pres.k)
        if not self.in_box(vec):
            raise ArgumentError(f"vector {vec} escapes the box")
        return self._uf.find(self._encode(vec))

    def canonical_rep(self, v: Sequence[int]) -> ExpVec:
        return self._rep_of_root[self.class_root(v)]

    def elements(self) -> tuple[ExpVec, ...]:
        """Canonical representatives; the certified element set when certified."""
        if self.certificate is not None:
            reps = sorted(self._grid_index, key=lambda root: self._rep_of_root[root])
            return tuple(self._rep_of_root[r] for r in reps)
        return tuple(sorted(self._rep_of_root.values()))

    # ---- periodicity and certification

    def _find_periods(self) -> Optional[tuple[tuple[int, int], ...]]:
        out = []
        k = self.pres.k
        for i in range(k):
            found = None
            for p in range(1, self.bound):
                root = self.class_root(tuple(p if j == i else 0 for j in range(k)))
                for r in range(1, self.bound - p + 1):
                    other = self.class_root(tuple(p + r if j == i else 0 for j in range(k)))
                    if root == other:
                        found = (p, r)
                        break
                if found:
                    break
            if not found:
                return None
            out.append(found)
        return tuple(out)

    def _try_certify(self) -> None:
        k = self.pres.k
        caps = [p + r for p, r in self.periods]
        if any(2 * (m - 1) > self.bound for m in caps):
            return
        grid = [v for v in itertools.product(*(range(m) for m in caps)) if any(v)]
        grid_rep: dict[int, ExpVec] = {}
        for v in grid:  # lex order, so first hit is the lex-least grid member
            grid_rep.setdefault(self.class_root(v), v)
        doubled = [
            v
            for v in itertools.product(*(range(2 * m - 1) for m in caps))
            if any(v)
        ]
        roots = {}
        for v in doubled:
            root = self.class_root(v)
            if root not in grid_rep:
                return  # some doubled-grid class never re-enters the grid
            roots[v] = root
        order_roots = sorted(grid_rep, key=lambda root: self._rep_of_root[root])
        index_of = {root: i for i, root in enumerate(order_roots)}
        gen_elems = tuple(index_of[roots[_unit(i, k)]] for i in range(k))
        # products are taken between grid members, which keeps all sums in the box
        reps = [grid_rep[root] for root in order_roots]
        n = len(reps)
        rows = [
            [index_of[self.class_root(vec_add(reps[a], reps[b]))] for b in range(n)]
            for a in range(n)
        ]
        # local homomorphism check across the doubled grid
        for v in doubled:
            qv = index_of[roots[v]]
            for i in range(k):
                w = vec_add(v, _unit(i, k))
                if w in roots:
                    if index_of[roots[w]] != rows[qv][gen_elems[i]]:
                        return
        if validate_associativity(rows) is not None:
            return

        def table_eval(vec: ExpVec) -> Optional[int]:
            acc = None
            for i, c in enumerate(vec):
                if not c:
                    continue
                powered = gen_elems[i]
                for _ in range(c - 1):
                    powered = rows[powered][gen_elems[i]]
                acc = powered if acc is None else rows[acc][powered]
            return acc

        for l, r in self.pres.relations:
            if table_eval(l) != table_eval(r):
                return
        labels = [monomial_label(self._rep_of_root[root]) for root in order_roots]
        self.table = FiniteSemigroup.from_table(
            rows, labels=labels, generators=tuple(dict.fromkeys(gen_elems)), check=False
        )
        self._grid_index = {root: i for root, i in index_of.items()}
        self._gen_elems = gen_elems
        self.certificate = FiniteCertificate(count=n, periods=self.periods)

    def eval_in_table(self, v: Sequence[int]) -> int:
        """Image of a word in the certified finite quotient."""
        if self.certificate is None:
            raise ArgumentError("engine holds no finiteness certificate")
        vec = _check_vec(v, self.pres.k)
        acc = None
        for i, c in enumerate(vec):
            if not c:
                continue
            powered = self.table.power(self._gen_elems[i], c)
            acc = powered if acc is None else self.table.mul(acc, powered)
        return acc

    # ---- decisions

    def _invariant_separates(self, u: ExpVec, v: ExpVec) -> bool:
        # a weight vector preserved by all relations is a homomorphism to Z;
        # differing weights certify distinctness
        diffs = [tuple(a - b for a, b in zip(l, r)) for l, r in self.pres.relations]
        base = hnf_rows(diffs, self.pres.k)
        extended = hnf_rows(list(base) + [tuple(a - b for a, b in zip(u, v))], self.pres.k)
        return len(extended) > len(base)

    def word_problem(self, u: Sequence[int], v: Sequence[int]) -> str:
        uu = _check_vec(u, self.pres.k)
        vv = _check_vec(v, self.pres.k)
        if uu == vv:
            return EQUAL
        if self.certificate is not None:
            return EQUAL if self.eval_in_table(uu) == self.eval_in_table(vv) else DISTINCT
        if self.in_box(uu) and self.in_box(vv) and self.class_root(uu) == self.class_root(vv):
            return EQUAL
        if self._invariant_separates(uu, vv):
            return DISTINCT
        return UNKNOWN


def enumerate_elements(
    pres: CommPresentation, bound: int
) -> tuple[tuple[ExpVec, ...], Optional[FiniteCertificate]]:
    """Canonical element representatives within the bound, plus a certificate
    when the engine proved the presented semigroup finite."""
    engine = NFEngine(pres, bound)
    return engine.elements(), engine.certificate


def word_problem(pres: CommPresentation, u: Sequence[int], v: Sequence[int], bound: int) -> str:
    """Three-valued equality: "equal" and "distinct" are always sound."""
    return NFEngine(pres, bound).word_problem(u, v)


# -- archimedean decomposition ---------------------------------------------------

@dataclass(frozen=True)
class ArchDecomposition:
    ambient: FiniteSemigroup
    semilattice: FiniteSemigroup
    component_of: tuple[int, ...]
    components: tuple[frozenset[int], ...]


def archimedean_decomposition(S: FiniteSemigroup) -> ArchDecomposition:
    """Mutual power-divisibility components and the induced semilattice."""
    if not S.is_commutative():
        raise ArgumentError("archimedean decomposition needs a commutative semigroup")
    gs = green_relations(S)
    order = hclass_order(S)
    hidx = gs.h_index_of

    def eventually_below(a: int, b: int) -> bool:
        # some power of a falls under H_b
        cur = a
        seen = set()
        while cur not in seen:
            seen.add(cur)
            if order.leq(hidx[cur], hidx[b]):
                return True
            cur = S.mul(cur, a)
        return False

    n = S.order
    below = [[eventually_below(a, b) for b in range(n)] for a in range(n)]
    comp_sets: dict[frozenset[int], list[int]] = {}
    for a in range(n):
        mutual = frozenset(b for b in range(n) if below[a][b] and below[b][a])
        comp_sets.setdefault(mutual, []).append(a)
    for members, owners in comp_sets.items():
        if set(owners) != set(members):
            raise InternalError("mutual divisibility failed to be an equivalence")
    components = tuple(sorted((frozenset(m) for m in comp_sets), key=min))
    component_of = [0] * n
    for ci, comp in enumerate(components):
        for x in comp:
            component_of[x] = ci
    # components are subsemigroups with at most one idempotent
    for comp in components:
        for a in comp:
            for b in comp:
                if component_of[S.mul(a, b)] != component_of[min(comp)]:
                    raise InternalError("component is not a subsemigroup")
        if sum(1 for x in comp if S.mul(x, x) == x) > 1:
            raise InternalError("archimedean component with two idempotents")
    # induced semilattice table, verified well defined over all pairs
    m = len(components)
    rows = [[None] * m for _ in range(m)]
    for a in range(n):
        for b in range(n):
            ci, cj = component_of[a], component_of[b]
            cp = component_of[S.mul(a, b)]
            if rows[ci][cj] is None:
                rows[ci][cj] = cp
            elif rows[ci][cj] != cp:
                raise InternalError("component product is not well defined")
    semilattice = FiniteSemigroup.from_table(rows, check=False)
    if not semilattice.is_commutative():
        raise InternalError("component semilattice is not commutative")
    if any(semilattice.mul(x, x) != x for x in semilattice.elements()):
        raise InternalError("component semilattice is not idempotent")
    return ArchDecomposition(
        ambient=S,
        semilattice=semilattice,
        component_of=tuple(component_of),
        components=components,
    )


def stab_characterization_check(S: FiniteSemigroup, H: Iterable[int], s: int) -> bool:
    """Compare Stab(H) with the power condition set {x : H_(s x^n) >= H for all n}.

    Powers up to |S|+1 suffice because power sequences in a finite semigroup
    are eventually periodic within that range.
    """
    if not S.is_commutative():
        raise ArgumentError("check defined for commutative semigroups")
    gs = green_relations(S)
    order = hclass_order(S)
    hidx = gs.h_index_of
    members = frozenset(H)
    i_h = hidx[min(members)]
    if gs.h_classes[i_h] != members:
        raise ArgumentError("H is not an H-class")
    if not order.leq(i_h, hidx[s]):
        raise ArgumentError("need H_s >= H")
    s1 = adjoin_identity(S)
    power_side = set()
    for x in s1.elements():
        cur = s
        ok = True
        for _ in range(S.order + 1):
            cur = s1.mul(cur, x)
            if not order.leq(i_h, hidx[cur]):
                ok = False
                break
        if ok:
            power_side.add(x)
    return power_side == right_stabilizer(S, members).members


# -- Dickson scan -----------------------------------------------------------------

def dickson_generators(
    oracle: Callable[[ExpVec], bool],
    bounds: Sequence[int] | int,
    arity: Optional[int] = None,
    *,
    check_upward: bool = True,
) -> tuple[ExpVec, ...]:
    """Componentwise-minimal true points of an upward-closed set within a box.

    `bounds` gives the inclusive per-coordinate limits (an int plus `arity`
    broadcasts).  The result is exact whenever every minimal element of the
    ideal has all coordinates strictly below the bounds.  Upward closure is
    verified across the whole box; a failure is an argument error.
    """
    if isinstance(bounds, int):
        if arity is None:
            raise ArgumentError("scalar bound needs an explicit arity")
        bounds = (bounds,) * arity
    bounds = tuple(int(b) for b in bounds)
    if any(b < 0 for b in bounds):
        raise ArgumentError("bounds must be non-negative")
    m = len(bounds)
    box = sorted(
        itertools.product(*(range(b + 1) for b in bounds)),
        key=lambda v: (sum(v), v),
    )
    truth = {v: bool(oracle(v)) for v in box}
    if check_upward:
        for v in box:
            if not truth[v]:
                continue
            for i in range(m):
                w = vec_add(v, _unit(i, m))
                if w in truth and not truth[w]:
                    raise ArgumentError(f"oracle not upward closed between {v} and {w}")
    minimal: list[ExpVec] = []
    for v in box:
        if truth[v] and not any(vec_leq(u, v) for u in minimal):
            minimal.append(v)
    return tuple(minimal)


# -- symbolic ambients -------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicAmbient:
    """One of the built-in infinite commutative semigroups, exact by formula."""

    name: str  # "Z" | "N" | "NxZ"


Z_AMBIENT = SymbolicAmbient("Z")
N_AMBIENT = SymbolicAmbient("N")
NXZ_AMBIENT = SymbolicAmbient("NxZ")

_SYMBOLIC = {"Z": Z_AMBIENT, "N": N_AMBIENT, "NxZ": NXZ_AMBIENT}


def symbolic_ambient(name: str) -> SymbolicAmbient:
    key = {"z": "Z", "n": "N", "nxz": "NxZ"}.get(name.lower())
    if key is None:
        raise ArgumentError(f"unknown symbolic ambient {name!r}")
    return _SYMBOLIC[key]


def _check_symbolic_element(ambient: SymbolicAmbient, s):
    if ambient.name == "Z":
        if not isinstance(s, int):
            raise ArgumentError("elements of Z are integers")
        return s
    if ambient.name == "N":
        if not isinstance(s, int) or s < 1:
            raise ArgumentError("elements of N are positive integers")
        return s
    s = tuple(s)
    if len(s) != 2 or s[0] < 0:
        raise ArgumentError("elements of NxZ are pairs (a, z) with a >= 0")
    return (int(s[0]), int(s[1]))


def _symbolic_generates(ambient: SymbolicAmbient, A) -> bool:
    if ambient.name == "Z":
        vals = [int(a) for a in A]
        if not vals or all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            return False
        g = 0
        for v in vals:
            g = _xgcd(g, abs(v))[0] if g else abs(v)
        return g == 1
    if ambient.name == "N":
        return 1 in set(int(a) for a in A)
    pairs = [(int(a), int(z)) for a, z in A]
    level0 = [z for a, z in pairs if a == 0]
    if not any(a == 1 for a, _ in pairs):
        return False
    if not level0 or all(z >= 0 for z in level0) or all(z <= 0 for z in level0):
        return False
    g = 0
    for z in level0:
        if z:
            g = _xgcd(g, abs(z))[0] if g else abs(z)
    return g == 1


def _symbolic_hclass_infinite(ambient: SymbolicAmbient, s) -> bool:
    # Z: the single H-class is Z itself; N: all classes are singletons;
    # NxZ: the class of (a, z) is {a} x Z.
    return ambient.name in ("Z", "NxZ")


# -- stabilizer-lattice parameters ---------------------------------------------------

@dataclass(frozen=True)
class KLReport:
    """Stabilizer-lattice data of one element.

    k_s counts the distinguished generators that stabilize the H-class of the
    element; W_s_gens are the minimal exponent vectors over those generators
    that fix the element itself; G_s_basis spans the integer lattice generated
    by all such vectors, with m_s its rank.  The element is a witness against
    strong separability exactly when m_s < k_s.
    """

    ambient_kind: str
    element: object
    generators: tuple
    C_s: tuple
    k_s: int
    W_s_gens: tuple[ExpVec, ...]
    G_s_basis: tuple[tuple[int, ...], ...]
    m_s: int
    strongly_separable_at_s: bool
    exact: bool

    def __post_init__(self):
        if self.m_s > self.k_s:
            raise InternalError("lattice rank exceeds ambient dimension")
        if hnf_rows(self.G_s_basis, self.k_s) != self.G_s_basis:
            raise InternalError("basis is not in Hermite normal form")
        for w in self.W_s_gens:
            if any(w) and not in_lattice(self.G_s_basis, w):
                raise InternalError("a stabilizer vector escapes its own lattice")


def _action_order(s1: FiniteSemigroup, c: int, hsorted: Sequence[int]) -> int:
    # order of the permutation h -> h*c on the H-class
    pos = {h: i for i, h in enumerate(hsorted)}
    perm = tuple(pos[s1.mul(h, c)] for h in hsorted)
    ident = tuple(range(len(hsorted)))
    cur = perm
    d = 1
    while cur != ident:
        cur = tuple(perm[i] for i in cur)
        d += 1
    return d


def kl_parameters(ambient, s, A: Sequence, bound: int = 6, *, box_cap: int = 400_000) -> KLReport:
    """Stabilizer-lattice report; exact for finite tables and symbolic ambients."""
    if isinstance(ambient, FiniteSemigroup):
        return _kl_finite(ambient, s, A, bound, box_cap)
    if isinstance(ambient, SymbolicAmbient):
        return _kl_symbolic(ambient, s, A, bound, box_cap)
    raise ArgumentError("ambient must be a finite semigroup or a symbolic ambient")


def _kl_finite(S: FiniteSemigroup, s: int, A: Sequence[int], bound: int, box_cap: int) -> KLReport:
    if not S.is_commutative():
        raise ArgumentError("the parameters are defined for commutative semigroups")
    gens = tuple(dict.fromkeys(int(a) for a in A))
    if set(closure(S, gens)) != set(range(S.order)):
        raise ArgumentError("A does not generate the ambient semigroup")
    if not 0 <= s < S.order:
        raise ArgumentError("element out of range")
    gs = green_relations(S)
    hset = gs.hclass_of(s)
    hsorted = tuple(sorted(hset))
    stab = right_stabilizer(S, hset)
    s1 = stab.ambient
    C = tuple(a for a in gens if a in stab.members)
    k = len(C)
    orders = [_action_order(s1, c, hsorted) for c in C]
    bounds = [max(d, bound) for d in orders]
    if prod(b + 1 for b in bounds) > box_cap:
        bounds = list(orders)
        if prod(b + 1 for b in bounds) > box_cap:
            raise ResourceError("stabilizer preimage box too large")
    members = _point_stab_members_finite(S, s, C, bounds)
    w_gens = _dickson_minimal([v for v in members if any(v)])
    basis = hnf_rows(members, k)
    m = len(basis)
    if m != k:
        raise InternalError("finite ambient produced a deficient stabilizer lattice")
    return KLReport(
        ambient_kind="finite",
        element=s,
        generators=gens,
        C_s=C,
        k_s=k,
        W_s_gens=w_gens,
        G_s_basis=basis,
        m_s=m,
        strongly_separable_at_s=True,
        exact=True,
    )


def _point_stab_members_finite(
    S: FiniteSemigroup, s: int, C: Sequence[int], bounds: Sequence[int]
) -> list[ExpVec]:
    values: dict[ExpVec, int] = {}
    members = []
    for v in itertools.product(*(range(b + 1) for b in bounds)):
        if not any(v):
            values[v] = s
            members.append(v)
            continue
        i = max(j for j in range(len(v)) if v[j])
        prev = tuple(c - 1 if j == i else c for j, c in enumerate(v))
        values[v] = S.mul(values[prev], C[i])
        if values[v] == s:
            members.append(v)
    return members


def _dickson_minimal(vectors: Iterable[ExpVec]) -> tuple[ExpVec, ...]:
    ordered = sorted(vectors, key=lambda v: (sum(v), v))
    minimal: list[ExpVec] = []
    for v in ordered:
        if not any(vec_leq(u, v) for u in minimal):
            minimal.append(v)
    return tuple(minimal)


def _kl_symbolic(ambient: SymbolicAmbient, s, A: Sequence, bound: int, box_cap: int) -> KLReport:
    s = _check_symbolic_element(ambient, s)
    A = tuple(A)
    if not _symbolic_generates(ambient, A):
        raise ArgumentError(f"A does not generate {ambient.name}")
    if ambient.name == "Z":
        C = tuple(int(a) for a in A)
        lam = list(C)
    elif ambient.name == "N":
        C = ()
        lam = []
    else:
        C = tuple((int(a), int(z)) for a, z in A if int(a) == 0)
        lam = [z for _, z in C]
    k = len(C)
    if k == 0:
        basis: tuple = ()
        w_gens: tuple = ()
    else:
        if any(l > 0 for l in lam) and any(l < 0 for l in lam):
            basis = kernel_of_linear_form(lam)
        elif all(l == 0 for l in lam):
            basis = hnf_rows([_unit(i, k) for i in range(k)], k)
        else:
            basis = hnf_rows([_unit(i, k) for i in range(k) if lam[i] == 0], k)
        search = max(bound, max((abs(l) for l in lam), default=1))
        if (search + 1) ** k > box_cap:
            raise ResourceError("stabilizer preimage box too large")
        members = [
            v
            for v in itertools.product(range(search + 1), repeat=k)
            if any(v) and sum(l * c for l, c in zip(lam, v)) == 0
        ]
        w_gens = _dickson_minimal(members)
    m = len(basis)
    return KLReport(
        ambient_kind=ambient.name,
        element=s,
        generators=A,
        C_s=C,
        k_s=k,
        W_s_gens=w_gens,
        G_s_basis=basis,
        m_s=m,
        strongly_separable_at_s=(m == k),
        exact=True,
    )


# -- H-class finiteness and the four-way classification -------------------------------

@dataclass(frozen=True)
class HClassFiniteness:
    status: str  # "finite" | "infinite" | "unknown"
    size: Optional[int]
    witness: Optional[KLReport]


def hclass_finiteness(ambient, s, A: Sequence, bound: int = 6) -> HClassFiniteness:
    """Finite with exact size on finite tables; infinite via a lattice-deficit witness."""
    if isinstance(ambient, FiniteSemigroup):
        report = kl_parameters(ambient, s, A, bound)
        size = len(green_relations(ambient).hclass_of(int(s)))
        return HClassFiniteness(status="finite", size=size, witness=report)
    if not isinstance(ambient, SymbolicAmbient):
        raise ArgumentError("ambient must be a finite semigroup or a symbolic ambient")
    report = kl_parameters(ambient, s, A, bound)
    if ambient.name == "N":
        return HClassFiniteness(status="finite", size=1, witness=report)
    if report.m_s >= report.k_s:
        raise InternalError("infinite symbolic H-class without a lattice deficit")
    return HClassFiniteness(status="infinite", size=None, witness=report)


@dataclass(frozen=True)
class SeparabilityClassification:
    ambient_kind: str
    completely_separable: bool
    strongly_separable: bool
    weakly_separable: bool
    hclasses_all_finite: bool
    residually_finite: bool
    witness: Optional[KLReport]
    notes: tuple[str, ...]


def theorem43_classify(ambient, A: Optional[Sequence] = None, bound: int = 6) -> SeparabilityClassification:
    """Joint verdict on the four equivalent conditions for a f.g. commutative semigroup.

    Finite tables are positive across the board.  For the symbolic ambients,
    Z carries a lattice-deficit witness (its single H-class is infinite) and
    N is separable in every sense.  N_0 x Z is rejected: it is not finitely
    generated, so the equivalence does not apply to it.
    """
    if isinstance(ambient, FiniteSemigroup):
        if not ambient.is_commutative():
            raise ArgumentError("classification needs a commutative semigroup")
        note = "finite commutative semigroup: the profinite topology is discrete"
        witness = kl_parameters(ambient, 0, A, bound) if A is not None else None
        return SeparabilityClassification(
            ambient_kind="finite",
            completely_separable=True,
            strongly_separable=True,
            weakly_separable=True,
            hclasses_all_finite=True,
            residually_finite=True,
            witness=witness,
            notes=(note,),
        )
    if not isinstance(ambient, SymbolicAmbient):
        raise ArgumentError("ambient must be a finite semigroup or a symbolic ambient")
    if ambient.name == "Z":
        gens = tuple(A) if A is not None else (1, -1)
        report = kl_parameters(ambient, 0, gens, bound)
        return SeparabilityClassification(
            ambient_kind="Z",
            completely_separable=False,
            strongly_separable=False,
            weakly_separable=False,
            hclasses_all_finite=False,
            residually_finite=True,
            witness=report,
            notes=(
                "the single H-class is the whole group, which is infinite",
                "residually finite: reduction modulo n separates any two integers",
            ),
        )
    if ambient.name == "N":
        gens = tuple(A) if A is not None else (1,)
        report = kl_parameters(ambient, 1, gens, bound)
        return SeparabilityClassification(
            ambient_kind="N",
            completely_separable=True,
            strongly_separable=True,
            weakly_separable=True,
            hclasses_all_finite=True,
            residually_finite=True,
            witness=report,
            notes=("free monogenic semigroup: every H-class is a singleton",),
        )
    raise ArgumentError("N_0 x Z is not finitely generated; the equivalence does not apply")


# -- the constructive separating congruence ---------------------------------------------

@dataclass(frozen=True)
class SeparatingCongruenceReport:
    """Outcome of the finite-index congruence construction isolating one element."""

    element: int
    case: str  # "non-group" | "group" | "no-stabilizer-generators"
    base: FiniteSemigroup
    base_element: int
    stab_generators: tuple[int, ...]
    ideal_generators: tuple[ExpVec, ...]
    exponent: int
    hclass_size: int
    pairs: tuple[tuple[int, int], ...]
    quotient: FiniteSemigroup
    congruence_on_ambient: Congruence
    certificate: SeparationCertificate


def _index_period(S: FiniteSemigroup, x: int) -> tuple[int, int]:
    seen: dict[int, int] = {}
    cur = x
    n = 1
    while cur not in seen:
        seen[cur] = n
        cur = S.mul(cur, x)
        n += 1
    return seen[cur], n - seen[cur]


def _phi_values(
    base: FiniteSemigroup, start: Optional[int], X: Sequence[int], bounds: Sequence[int]
) -> dict[ExpVec, Optional[int]]:
    """Grid of start * x_1^w1 * ... over the box; start=None is the formal identity."""
    values: dict[ExpVec, Optional[int]] = {}
    for v in itertools.product(*(range(b + 1) for b in bounds)):
        if not any(v):
            values[v] = start
            continue
        i = max(j for j in range(len(v)) if v[j])
        prev = tuple(c - 1 if j == i else c for j, c in enumerate(v))
        before = values[prev]
        values[v] = X[i] if before is None else base.mul(before, X[i])
    return values


def separating_congruence(S: FiniteSemigroup, h: int) -> SeparatingCongruenceReport:
    """Finite-index congruence on S whose class of h is exactly {h}.

    Mirrors the constructive argument for finitely generated commutative
    semigroups: pass to the Rees quotient by the ideal of H-classes not
    above H_h, split on whether H_h is a group, read off minimal generators
    of the relevant monomial ideals, and impose x^n = x^(n+|H|) on every
    stabilizer generator.
    """
    if not S.is_commutative():
        raise ArgumentError("the construction needs a commutative semigroup")
    if not 0 <= h < S.order:
        raise ArgumentError("element out of range")
    gs = green_relations(S)
    order = hclass_order(S)
    i_h = gs.h_index_of[h]
    below = [ci for ci in range(len(gs.h_classes)) if not order.leq(i_h, ci)]
    if below:
        ideal = set()
        for ci in below:
            ideal.update(gs.h_classes[ci])
        base, proj = rees_quotient(S, ideal)
    else:
        base, proj = S, HomMap(source=S, target=S, mapping=tuple(S.elements()))
    hb = proj(h)
    case_group = gs.group_flags[i_h]

    gsb = green_relations(base)
    hset = gsb.hclass_of(hb)
    hsize = len(hset)
    stab = right_stabilizer(base, hset)
    gens_base = base.generators if base.generators is not None else tuple(base.elements())
    X = tuple(g for g in gens_base if g in stab.members)
    Y = tuple(g for g in gens_base if g not in stab.members)

    pairs: tuple[tuple[int, int], ...]
    ideal_gens: tuple[ExpVec, ...] = ()
    if not X:
        # every generator sits in the nilpotent part; the base is that finite
        # part and the equality congruence already isolates the element
        case = "no-stabilizer-generators"
        exponent = 0
        pairs = ()
        cong_base = equality_congruence(base)
    else:
        bounds = []
        for x in X:
            idx, per = _index_period(base, x)
            bounds.append(idx + per)
        collected: list[ExpVec] = []
        if not case_group:
            case = "non-group"
            if not Y:
                raise InternalError("a non-group element with all generators stabilizing")
            U = closure(base, Y)
            for u in sorted(U):
                values = _phi_values(base, u, X, bounds)
                mins = dickson_generators(lambda w, vals=values: vals[w] in hset, bounds)
                collected.extend(mins)
        else:
            case = "group"
            values = _phi_values(base, None, X, bounds)

            def oracle(w: ExpVec) -> bool:
                val = values[w]
                return val is not None and val in hset

            collected.extend(dickson_generators(oracle, bounds))
        ideal_gens = tuple(collected)
        exponent = max([1] + [c for z in collected for c in z])
        pairs = tuple(
            (base.power(x, exponent), base.power(x, exponent + hsize)) for x in X
        )
        cong_base = congruence_from_pairs(base, pairs)
    Q, projq = quotient(base, cong_base)
    composite = tuple(projq(proj(x)) for x in S.elements())
    cong_S = Congruence.from_class_of(S, composite, check=True)
    cls = [x for x in S.elements() if cong_S.same(x, h)]
    if cls != [h]:
        raise InternalError(f"construction failed to isolate {h}: class {cls}")
    certificate = SeparationCertificate(
        congruence=cong_S,
        element=h,
        avoided=frozenset(set(S.elements()) - {h}),
    )
    return SeparatingCongruenceReport(
        element=h,
        case=case,
        base=base,
        base_element=hb,
        stab_generators=X,
        ideal_generators=ideal_gens,
        exponent=exponent,
        hclass_size=hsize,
        pairs=pairs,
        quotient=Q,
        congruence_on_ambient=cong_S,
        certificate=certificate,
    )
