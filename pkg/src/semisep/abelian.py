"""Decidable separability classifier for abelian groups given by descriptors.

The descriptor grammar covers sums and products of copies of Z, finite
cyclic groups Z/m, and whole families {Z/p^k : k >= 1} for a prime p.
Divisible groups (the rationals, Pruefer groups) are deliberately outside
the grammar: they are not residually finite and would need a different
decision layer, so they are a documented format error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ArgumentError, FormatError

OMEGA = "omega"
Multiplicity = Union[int, str]  # positive int or OMEGA


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class Factor:
    """"Z", or "Zmod" with modulus m >= 2, or "Fam" with a prime p."""

    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind == "Z":
            return
        if self.kind == "Zmod":
            if self.param < 2:
                raise FormatError("cyclic factors need modulus >= 2")
            return
        if self.kind == "Fam":
            if not _is_prime(self.param):
                raise FormatError(f"family factors need a prime, got {self.param}")
            return
        raise FormatError(f"unknown factor kind {self.kind!r}")


@dataclass(frozen=True)
class AbelianDescriptor:
    mode: str  # "sum" | "prod"
    entries: tuple[tuple[Factor, Multiplicity], ...]

    def __post_init__(self):
        if self.mode not in ("sum", "prod"):
            raise FormatError("mode must be sum or prod")
        for _, mult in self.entries:
            if mult != OMEGA and (not isinstance(mult, int) or mult < 1):
                raise FormatError(f"bad multiplicity {mult!r}")

    def normalized(self) -> "AbelianDescriptor":
        """CRT-split every cyclic factor into prime powers and merge duplicates."""
        merged: dict[Factor, Multiplicity] = {}

        def add(factor: Factor, mult: Multiplicity):
            if factor in merged:
                old = merged[factor]
                merged[factor] = OMEGA if OMEGA in (old, mult) else old + mult
            else:
                merged[factor] = mult

        for factor, mult in self.entries:
            if factor.kind == "Zmod":
                for p, a in _factorize(factor.param).items():
                    add(Factor("Zmod", p**a), mult)
            else:
                add(factor, mult)
        order = {"Z": 0, "Zmod": 1, "Fam": 2}
        entries = tuple(
            sorted(merged.items(), key=lambda kv: (order[kv[0].kind], kv[0].param))
        )
        return AbelianDescriptor(mode=self.mode, entries=entries)


def is_torsion(d: AbelianDescriptor) -> bool:
    """No copy of Z, and no unbounded family inside a full cartesian product.

    A product over a family {Z/p^k} contains an element of infinite order
    (one unit per coordinate), so product-mode families break torsion even
    though each factor is finite.
    """
    has_z = any(f.kind == "Z" for f, _ in d.entries)
    if has_z:
        return False
    has_family = any(f.kind == "Fam" for f, _ in d.entries)
    return d.mode == "sum" or not has_family


def p_exponent_bounded(d: AbelianDescriptor, p: int) -> bool:
    """True iff the p-primary exponents occurring among the factors are bounded."""
    if not _is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    return not any(f.kind == "Fam" and f.param == p for f, _ in d.entries)


def _primes_of(d: AbelianDescriptor) -> set[int]:
    out = set()
    for f, _ in d.entries:
        if f.kind == "Zmod":
            out.update(_factorize(f.param))
        elif f.kind == "Fam":
            out.add(f.param)
    return out


def is_finite(d: AbelianDescriptor) -> bool:
    return all(
        f.kind == "Zmod" and mult != OMEGA for f, mult in d.entries
    )


def finite_order(d: AbelianDescriptor) -> int:
    if not is_finite(d):
        raise ArgumentError("descriptor is not a finite group")
    total = 1
    for f, mult in d.entries:
        total *= f.param**mult
    return total


@dataclass(frozen=True)
class AbelianVerdict:
    residually_finite: bool
    weakly_sep: bool
    strongly_sep: bool
    completely_sep: bool
    reasons: tuple[str, str, str, str]

    def __post_init__(self):
        chain = (self.completely_sep, self.strongly_sep, self.weakly_sep, self.residually_finite)
        for earlier, later in zip(chain, chain[1:]):
            if earlier and not later:
                raise ArgumentError("verdict breaks the implication chain")

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.residually_finite, self.weakly_sep, self.strongly_sep, self.completely_sep)


def classify(d: AbelianDescriptor) -> AbelianVerdict:
    """Four separability verdicts with per-property reasons."""
    d = d.normalized()
    torsion = is_torsion(d)
    rf_reason = (
        "every group in this grammar embeds into a product of finite cyclic groups"
    )
    if torsion:
        weak = True
        weak_reason = "torsion and residually finite; finitely generated subgroups are finite"
    else:
        weak = False
        weak_reason = (
            "contains an element of infinite order, hence a copy of the integers, "
            "whose positive cone cannot be closed off in a finite image"
        )
    unbounded = sorted(p for p in _primes_of(d) if not p_exponent_bounded(d, p))
    strong = torsion and not unbounded
    if strong:
        strong_reason = "torsion with every p-primary component of finite exponent"
    elif not torsion:
        strong_reason = weak_reason
    else:
        strong_reason = (
            f"primary component unbounded at p = {unbounded[0]}"
        )
    complete = is_finite(d)
    if complete:
        complete_reason = f"finite group of order {finite_order(d)}"
    else:
        complete_reason = (
            "infinite group: the identity class of a finite-index congruence "
            "cannot be a singleton"
        )
    return AbelianVerdict(
        residually_finite=True,
        weakly_sep=weak,
        strongly_sep=strong,
        completely_sep=complete,
        reasons=(rf_reason, weak_reason, strong_reason, complete_reason),
    )


# -- text format -----------------------------------------------------------------
#
#   "sum Z*1 Z/8*omega fam2" : mode, then entries; "*mult" defaults to 1

_ENTRY_RE = re.compile(
    r"^(?:(Z)|Z/(\d+)|fam(\d+))(?:\*(omega|\d+))?$"
)


def parse_descriptor(text: str) -> AbelianDescriptor:
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise FormatError("empty descriptor")
    mode = tokens[0].lower()
    if mode not in ("sum", "prod"):
        raise FormatError('descriptor starts with "sum" or "prod"')
    entries = []
    for tok in tokens[1:]:
        m = _ENTRY_RE.match(tok)
        if not m:
            raise FormatError(f"bad descriptor entry {tok!r}")
        z, zm, fam, mult = m.groups()
        multiplicity: Multiplicity = OMEGA if mult == "omega" else int(mult) if mult else 1
        if z:
            factor = Factor("Z")
        elif zm:
            factor = Factor("Zmod", int(zm))
        else:
            factor = Factor("Fam", int(fam))
        entries.append((factor, multiplicity))
    if not entries:
        raise FormatError("descriptor needs at least one entry")
    return AbelianDescriptor(mode=mode, entries=tuple(entries))


def format_descriptor(d: AbelianDescriptor) -> str:
    parts = [d.mode]
    for f, mult in d.entries:
        if f.kind == "Z":
            tok = "Z"
        elif f.kind == "Zmod":
            tok = f"Z/{f.param}"
        else:
            tok = f"fam{f.param}"
        if mult != 1:
            tok += f"*{mult}"
        parts.append(tok)
    return " ".join(parts)
