"""Machine-checked example semigroups and replayable counterexample arguments.

Builders return ordinary tables (validated exhaustively where the instance
is about associativity itself).  The two infinite counterexamples are kept
symbolic: their multiplication rules are implemented directly, and the
non-separability arguments run as witness chains whose "equals" steps are
re-verified against those rules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .core import FiniteSemigroup, HomMap, adjoin_zero, cyclic_group
from .errors import ArgumentError, InternalError, ResourceError
from .green import green_relations, is_group_hclass, schutzenberger_group

ZERO = "0"  # shared zero marker for the symbolic systems


# -- the null-extension construction -------------------------------------------

@dataclass(frozen=True)
class ConstructionSpec:
    """A semigroup T, a finite abelian group G, and a surjection phi: T -> G.

    The build glues a null block X_G = {x_g} onto T so that T acts on X_G on
    the right through phi and on the left through inverses; all products
    inside X_G are the adjoined zero.
    """

    T: FiniteSemigroup
    G: FiniteSemigroup
    phi: HomMap

    def __post_init__(self):
        if _group_inverses(self.G) is None:
            raise ArgumentError("G must be a group")
        if not self.G.is_commutative():
            raise ArgumentError("G must be abelian")
        if self.phi.source.table != self.T.table or self.phi.target.table != self.G.table:
            raise ArgumentError("phi must map T onto G")
        if set(self.phi.mapping) != set(range(self.G.order)):
            raise ArgumentError("phi must be surjective")


def _group_inverses(G: FiniteSemigroup) -> Optional[list[int]]:
    e = G.identity
    if e is None:
        return None
    inv = [None] * G.order
    for g in G.elements():
        for h in G.elements():
            if G.mul(g, h) == e and G.mul(h, g) == e:
                inv[g] = h
                break
        if inv[g] is None:
            return None
    return inv


def build_construction(spec: ConstructionSpec) -> FiniteSemigroup:
    """Order |T| + |G| + 1 table: the T block, the X_G block, then the zero.

    Associativity is checked exhaustively, and the advertised structure is
    verified before returning: X_G is a single non-group H-class whose
    Schuetzenberger group has order |G| and is abelian.
    """
    T, G, phi = spec.T, spec.G, spec.phi
    nt, ng = T.order, G.order
    inv = _group_inverses(G)
    zero = nt + ng
    order = nt + ng + 1

    def x_index(g: int) -> int:
        return nt + g

    rows = [[zero] * order for _ in range(order)]
    for a in range(nt):
        for b in range(nt):
            rows[a][b] = T.mul(a, b)
    for g in range(ng):
        for t in range(nt):
            rows[x_index(g)][t] = x_index(G.mul(g, phi(t)))
            rows[t][x_index(g)] = x_index(G.mul(g, inv[phi(t)]))
    # X_G * X_G, anything * 0, 0 * anything stay at the zero

    labels = (
        tuple(f"t:{T.label_of(i)}" for i in range(nt))
        + tuple(f"x:{G.label_of(g)}" for g in range(ng))
        + ("0",)
    )
    built = FiniteSemigroup.from_table(rows, labels=labels, check=True)

    xg = frozenset(range(nt, nt + ng))
    gs = green_relations(built)
    if gs.hclass_of(nt) != xg:
        raise InternalError("X_G failed to form a single H-class")
    if is_group_hclass(built, xg):
        raise InternalError("X_G unexpectedly contains an idempotent")
    gamma = schutzenberger_group(built, xg)
    if gamma.order != ng or not gamma.is_abelian():
        raise InternalError("Schuetzenberger group of X_G does not match G")
    return built


def reduction_hom(k: int, m: int) -> HomMap:
    """Reduction Z/k -> Z/m for m dividing k."""
    if k % m:
        raise ArgumentError("m must divide k")
    return HomMap.checked([i % m for i in range(k)], cyclic_group(k), cyclic_group(m))


# -- Rees matrix semigroups over zero-groups --------------------------------------

@dataclass(frozen=True)
class ReesMatrixSpec:
    """M0[G; I, Lambda; P]: P is a Lambda x I matrix over G with None as zero."""

    G: FiniteSemigroup
    I_size: int
    L_size: int
    P: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        if _group_inverses(self.G) is None:
            raise ArgumentError("G must be a group")
        if self.I_size < 1 or self.L_size < 1:
            raise ArgumentError("index sets must be non-empty")
        if len(self.P) != self.L_size or any(len(row) != self.I_size for row in self.P):
            raise ArgumentError("P must be a Lambda x I matrix")
        for row in self.P:
            for entry in row:
                if entry is not None and not 0 <= entry < self.G.order:
                    raise ArgumentError(f"sandwich entry {entry} out of range")
        if any(all(e is None for e in row) for row in self.P):
            raise ArgumentError("P has an all-zero row")
        for i in range(self.I_size):
            if all(self.P[l][i] is None for l in range(self.L_size)):
                raise ArgumentError("P has an all-zero column")


def build_rees_matrix(spec: ReesMatrixSpec) -> FiniteSemigroup:
    """(i,a,l)(j,b,m) = (i, a p_{lj} b, m) when p_{lj} is non-zero, else 0.

    Checks after building: every non-zero H-class is {i} x G x {l}, and it is
    a group exactly when the sandwich entry p_{li} is non-zero.
    """
    G, ni, nl = spec.G, spec.I_size, spec.L_size
    ng = G.order
    zero = ni * ng * nl
    order = zero + 1

    def idx(i: int, a: int, l: int) -> int:
        return (i * ng + a) * nl + l

    rows = [[zero] * order for _ in range(order)]
    for i, a, l in itertools.product(range(ni), range(ng), range(nl)):
        src = idx(i, a, l)
        for j, b, m in itertools.product(range(ni), range(ng), range(nl)):
            p = spec.P[l][j]
            if p is not None:
                rows[src][idx(j, b, m)] = idx(i, G.mul(G.mul(a, p), b), m)
    labels = tuple(
        f"({i},{G.label_of(a)},{l})"
        for i, a, l in itertools.product(range(ni), range(ng), range(nl))
    ) + ("0",)
    built = FiniteSemigroup.from_table(rows, labels=labels, check=True)

    gs = green_relations(built)
    for i, l in itertools.product(range(ni), range(nl)):
        expected = frozenset(idx(i, a, l) for a in range(ng))
        if gs.hclass_of(idx(i, 0, l)) != expected:
            raise InternalError("H-class structure broken")
        flagged = gs.group_flags[gs.h_index_of[idx(i, 0, l)]]
        if flagged != (spec.P[l][i] is not None):
            raise InternalError("group flag disagrees with the sandwich entry")
    return built


# -- square-free words ----------------------------------------------------------------

SQUAREFREE_CAP = 8


def has_square(word: str) -> bool:
    """True iff some contiguous factor is doubled (xx with x non-empty)."""
    n = len(word)
    for p in range(1, n // 2 + 1):
        run = 0
        for i in range(n - p):
            if word[i] == word[i + p]:
                run += 1
                if run >= p:
                    return True
            else:
                run = 0
    return False


def square_free_words(length: int, alphabet: str = "abc") -> list[str]:
    """All square-free words of exactly the given length, lexicographic."""
    out = []

    def extend(word: str):
        if len(word) == length:
            out.append(word)
            return
        for ch in alphabet:
            cand = word + ch
            # only suffix squares can be new
            ok = True
            for p in range(1, len(cand) // 2 + 1):
                if cand[-2 * p :][:p] == cand[-p:]:
                    ok = False
                    break
            if ok:
                extend(cand)

    extend("")
    return out


def squarefree_semigroup(n: int, *, cap: int = SQUAREFREE_CAP) -> FiniteSemigroup:
    """Square-free words of length <= n over {a,b,c} plus a zero.

    Products concatenate; a concatenation that exceeds the length bound or
    contains a square collapses to the zero (Rees-quotient semantics).
    Elements are ordered by length then lexicographically, zero last.
    """
    if n < 1:
        raise ArgumentError("n must be >= 1")
    if n > cap:
        raise ResourceError(f"length bound {n} exceeds cap {cap}")
    words = [w for length in range(1, n + 1) for w in square_free_words(length)]
    index = {w: i for i, w in enumerate(words)}
    zero = len(words)
    order = zero + 1
    rows = [[zero] * order for _ in range(order)]
    for u in words:
        for v in words:
            w = u + v
            if len(w) <= n and not has_square(w):
                rows[index[u]][index[v]] = index[w]
    labels = tuple(words) + ("0",)
    gens = tuple(index[ch] for ch in "abc" if ch in index)
    return FiniteSemigroup.from_table(
        rows, labels=labels, generators=gens or None, check=False
    )


_MORPHISM = {"a": "abc", "b": "ac", "c": "b"}


def certify_squarefree(word: str) -> bool:
    """Exhaustive factor scan; vectorized for long inputs."""
    if len(word) < 512:
        return not has_square(word)
    arr = np.frombuffer(word.encode("ascii"), dtype=np.uint8)
    n = len(arr)
    for p in range(1, n // 2 + 1):
        eq = arr[: n - p] == arr[p:]
        if not eq.any():
            continue
        # longest run of equal positions; a run of length p is a square
        breaks = np.flatnonzero(~eq)
        if breaks.size == 0:
            longest = eq.size
        else:
            gaps = np.diff(np.concatenate(([-1], breaks, [eq.size]))) - 1
            longest = int(gaps.max())
        if longest >= p:
            return False
    return True


def squarefree_stream(length: int) -> str:
    """Prefix of the fixed point of a -> abc, b -> ac, c -> b.

    Every emitted prefix is certified square-free by an exhaustive factor
    scan before it is returned; a failure would mean the morphism is broken
    and raises an internal error.
    """
    if length < 1:
        raise ArgumentError("length must be >= 1")
    word = "a"
    while len(word) < length:
        word = "".join(_MORPHISM[ch] for ch in word)
    prefix = word[:length]
    if not certify_squarefree(prefix):
        raise InternalError("morphism emitted a square")
    return prefix


# -- witness chains --------------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    lhs: tuple[str, ...]
    rel: str  # "equals" | "congruent"
    rhs: tuple[str, ...]
    note: str


@dataclass(frozen=True)
class WitnessChain:
    """A pigeonhole collapse: assumed collision plus verified multiplications.

    Every "equals" step re-evaluates under the symbolic multiplication of
    the system; "congruent" steps carry the assumed collision through
    compatibility with multiplication.
    """

    system: str  # "squarefree" | "eg62"
    collision: tuple[int, int]
    atoms: dict[str, object]
    steps: tuple[ChainStep, ...]
    conclusion: str


def _squarefree_mul(x, y):
    if x == ZERO or y == ZERO:
        return ZERO
    w = x + y
    return ZERO if has_square(w) else w


def _eg62_mul(x, y):
    # elements: ("a", i >= 1), ("b", j >= 1), or the zero marker
    if x == ZERO or y == ZERO:
        return ZERO
    kx, i = x
    ky, j = y
    if kx == "a" and ky == "a":
        return ("a", i + j)
    if kx == "b" and ky == "b":
        return ZERO
    if kx == "a":
        return ("b", j - i) if j > i else ZERO
    return ("b", i - j) if i > j else ZERO


_SYSTEMS: dict[str, Callable] = {"squarefree": _squarefree_mul, "eg62": _eg62_mul}


def eval_expression(chain: WitnessChain, expr: Sequence[str]):
    mul = _SYSTEMS[chain.system]
    value = None
    for atom in expr:
        v = chain.atoms[atom]
        value = v if value is None else mul(value, v)
    return value


def verify_chain(chain: WitnessChain) -> bool:
    for step in chain.steps:
        if step.rel == "equals":
            if eval_expression(chain, step.lhs) != eval_expression(chain, step.rhs):
                return False
    return True


def _least_collision(colors: Sequence) -> Optional[tuple[int, int]]:
    n = len(colors)
    for i in range(n):
        for j in range(i + 1, n):
            if colors[i] == colors[j]:
                return (i + 1, j + 1)  # 1-based, matching w_1..w_N
    return None


def replay_squarefree_collapse(colors: Sequence) -> Optional[WitnessChain]:
    """Collapse argument for the square-free semigroup.

    colors[i] is the color of the stream prefix of length i+1.  For the
    least equal-colored pair w_i, w_j the chain shows that any finite-index
    congruence identifying them forces w_j down to the zero.  Returns None
    when the coloring is injective.
    """
    if len(colors) < 2:
        raise ArgumentError("need at least two colored prefixes")
    hit = _least_collision(colors)
    if hit is None:
        return None
    i, j = hit
    stream = squarefree_stream(j)
    wi, wj = stream[:i], stream[:j]
    v = stream[i:j]
    wi_n, wj_n, v_n = f"w{i}", f"w{j}", f"v{i},{j}"
    atoms = {wi_n: wi, wj_n: wj, v_n: v, ZERO: ZERO}
    steps = (
        ChainStep((wj_n,), "equals", (wi_n, v_n), "prefix decomposition of the stream"),
        ChainStep((wi_n, v_n), "congruent", (wj_n, v_n), f"assumed {wi_n} ~ {wj_n}; multiply by {v_n}"),
        ChainStep((wj_n, v_n), "equals", (wi_n, v_n, v_n), "substitute the decomposition of " + wj_n),
        ChainStep((wi_n, v_n, v_n), "equals", (ZERO,), f"{v_n}{v_n} is a square, so the product collapses"),
    )
    chain = WitnessChain(
        system="squarefree",
        collision=(i, j),
        atoms=atoms,
        steps=steps,
        conclusion=f"{wj_n} ~ 0: the zero cannot be separated from the other elements",
    )
    if not verify_chain(chain):
        raise InternalError("collapse chain failed re-verification")
    return chain


def replay_eg62(colors: Sequence) -> Optional[WitnessChain]:
    """Collapse argument for the commutative example with elements a^i, b_j, 0.

    colors[j] colors b_(j+1).  A collision b_i ~ b_j with i < j forces
    0 ~ b_1 after multiplying by a^(j-1).  Returns None for injective
    colorings.
    """
    if len(colors) < 2:
        raise ArgumentError("need at least two colored elements")
    hit = _least_collision(colors)
    if hit is None:
        return None
    i, j = hit
    bi, bj, apow = f"b{i}", f"b{j}", f"a^{j - 1}"
    atoms = {
        bi: ("b", i),
        bj: ("b", j),
        "b1": ("b", 1),
        apow: ("a", j - 1),
        ZERO: ZERO,
    }
    steps = (
        ChainStep((ZERO,), "equals", (bi, apow), f"{bi} dies under a^{j - 1} since {j - 1} >= {i}"),
        ChainStep((bi, apow), "congruent", (bj, apow), f"assumed {bi} ~ {bj}; multiply by {apow}"),
        ChainStep((bj, apow), "equals", ("b1",), f"index drops by {j - 1}"),
    )
    chain = WitnessChain(
        system="eg62",
        collision=(i, j),
        atoms=atoms,
        steps=steps,
        conclusion="0 ~ b1: the semigroup is not residually finite",
    )
    if not verify_chain(chain):
        raise InternalError("collapse chain failed re-verification")
    return chain


def format_chain(chain: WitnessChain) -> str:
    symbol = {"equals": "=", "congruent": "~"}
    lines = []
    for step in chain.steps:
        lhs = "·".join(step.lhs)
        rhs = "·".join(step.rhs)
        lines.append(f"{lhs} {symbol[step.rel]} {rhs}  [{step.note}]")
    lines.append(f"conclusion: {chain.conclusion}")
    return "\n".join(lines)


# -- small certified reports -------------------------------------------------------------

@dataclass(frozen=True)
class CyclicObstructionRow:
    modulus: int
    witness_steps: int  # image of -1 equals that many additions of the image of 1
    contained: bool


def z_cyclic_obstruction(n_max: int) -> tuple[CyclicObstructionRow, ...]:
    """For each modulus, verify the image of -1 lies in the orbit of the image of 1.

    This is the arithmetic reason no finite image can separate -1 from the
    positive cone of the integers.
    """
    if n_max < 1:
        raise ArgumentError("n_max must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        target = (-1) % n
        image = 1 % n
        steps = 1
        cur = image
        seen = {cur}
        while cur != target:
            cur = (cur + image) % n
            steps += 1
            if cur in seen:
                raise InternalError("orbit cycled without reaching the target")
            seen.add(cur)
        rows.append(CyclicObstructionRow(modulus=n, witness_steps=steps, contained=True))
    return tuple(rows)


@dataclass(frozen=True)
class NxzSeparator:
    """Separator for a pair outside a finitely generated staircase subsemigroup.

    The composite map sends (a, z) to (its level capped at n+1, z mod modulus);
    levels above n land on the absorbing class, the finitely many members at
    level n are split off by the modular second coordinate.
    """

    element: tuple[int, int]
    level: int
    level_members: tuple[int, ...]  # second coordinates of T at that level
    modulus: int
    quotient: FiniteSemigroup
    checked_members: int

    def image(self, pair: tuple[int, int]) -> tuple[int, int]:
        a, z = pair
        return (min(a, self.level + 1), z % self.modulus)


def nxz_separator(T_gens: Sequence[tuple[int, int]], x: tuple[int, int]) -> NxzSeparator:
    """Certified separation of x from <T_gens> inside N x Z (positive levels).

    Membership at each level is decidable outright because levels add up
    strictly, so the subsemigroup meets every level in a finite set.
    """
    gens = [(int(a), int(z)) for a, z in T_gens]
    if not gens:
        raise ArgumentError("need at least one generator")
    if any(a < 1 for a, _ in gens):
        raise ArgumentError("generators must have level >= 1")
    x = (int(x[0]), int(x[1]))
    if x[0] < 1:
        raise ArgumentError("the element must have level >= 1")
    n = x[0]
    # level-by-level second coordinates of the subsemigroup
    levels: dict[int, set[int]] = {}
    for a, z in gens:
        if a <= n:
            levels.setdefault(a, set()).add(z)
    changed = True
    while changed:
        changed = False
        for a1, zs1 in list(levels.items()):
            for a2, zs2 in list(levels.items()):
                if a1 + a2 > n:
                    continue
                target = levels.setdefault(a1 + a2, set())
                for z1 in zs1:
                    for z2 in zs2:
                        if z1 + z2 not in target:
                            target.add(z1 + z2)
                            changed = True
    members_at_n = sorted(levels.get(n, set()))
    if x[1] in members_at_n:
        raise ArgumentError(f"{x} lies in the generated subsemigroup")
    modulus = 2 * max([1, abs(x[1])] + [abs(z) for z in members_at_n])
    while any((x[1] - z) % modulus == 0 for z in members_at_n):
        modulus += 1
    # quotient of the level semigroup: 1..n plus one absorbing class
    rows = [
        [min(i + j + 2, n + 1) - 1 for j in range(n + 1)]
        for i in range(n + 1)
    ]
    labels = tuple(str(i + 1) for i in range(n)) + ("I",)
    quotient = FiniteSemigroup.from_table(rows, labels=labels, check=False)
    sep = NxzSeparator(
        element=x,
        level=n,
        level_members=tuple(members_at_n),
        modulus=modulus,
        quotient=quotient,
        checked_members=sum(len(zs) for zs in levels.values()),
    )
    # pointwise certificate over every member up to the witness level
    img_x = sep.image(x)
    for a, zs in levels.items():
        for z in zs:
            if sep.image((a, z)) == img_x:
                raise InternalError("separator failed its pointwise check")
    return sep


def finite_monoid_unit_check(M: FiniteSemigroup) -> tuple[bool, Optional[tuple[int, int]]]:
    """Verify one-sided units are two-sided: bc = 1 forces cb = 1.

    True for every finite monoid; a violating pair would mean the table is
    corrupt.  This is the mechanizable content behind the failure of the
    bicyclic presentation to have interesting finite images.
    """
    e = M.identity
    if e is None:
        raise ArgumentError("unit check needs a monoid")
    for b in M.elements():
        for c in M.elements():
            if M.mul(b, c) == e and M.mul(c, b) != e:
                return (False, (b, c))
    return (True, None)


# -- canonical instance registry ---------------------------------------------------------

def construction_instances() -> list[tuple[str, FiniteSemigroup]]:
    z2, z3, z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    trivial = cyclic_group(1)
    out = [
        (
            "construction(z3,z3,id)",
            build_construction(
                ConstructionSpec(z3, z3, HomMap.checked(list(range(3)), z3, z3))
            ),
        ),
        (
            "construction(z4,z2,mod2)",
            build_construction(ConstructionSpec(z4, z2, reduction_hom(4, 2))),
        ),
        (
            "construction(z2,trivial)",
            build_construction(
                ConstructionSpec(z2, trivial, HomMap.checked([0, 0], z2, trivial))
            ),
        ),
    ]
    return out


def rees_example_spec() -> ReesMatrixSpec:
    z2 = cyclic_group(2)
    return ReesMatrixSpec(G=z2, I_size=2, L_size=2, P=((0, None), (0, 0)))


def gallery_instances() -> list[tuple[str, FiniteSemigroup]]:
    """Every table-valued gallery instance at its default parameters."""
    out = construction_instances()
    out.append(("rees(z2,2x2,[[e,0],[e,e]])", build_rees_matrix(rees_example_spec())))
    for n in range(1, 5):
        out.append((f"squarefree({n})", squarefree_semigroup(n)))
    out.append(("zero-group(z2)", adjoin_zero(cyclic_group(2))))
    return out
