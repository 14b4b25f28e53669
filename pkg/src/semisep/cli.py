"""Command-line front end.

Exit codes: 0 success, 1 domain error (a violated precondition), 2 format
error (malformed table, file, or flags), 3 resource cap.  Output is
deterministic: no timestamps, no hash-order leaks; `--format structured`
emits one JSON document with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import abelian as ab
from . import commutative as cm
from . import congruence as cg
from . import core, gallery, green
from .errors import ArgumentError, FormatError, InternalError, ResourceError


def _opt(args, name: str, default):
    return getattr(args, name, default)


def _emit(args, payload: dict, text: str) -> None:
    structured = _opt(args, "format", "text") == "structured"
    out = json.dumps(payload, sort_keys=True) if structured else text
    target = _opt(args, "output", None)
    if target:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _class_str(cls) -> str:
    return "{" + " ".join(str(x) for x in sorted(cls)) + "}"


def _load(args) -> core.FiniteSemigroup:
    return core.load_table(args.table, cap=args.cap)


# -- verb handlers ----------------------------------------------------------------

def _cmd_validate(args) -> int:
    with open(args.table, "r", encoding="utf-8") as fh:
        text = fh.read()
    S = core.parse_table_text(text, check=False, cap=args.cap)
    bad = core.validate_associativity(S.table)
    if bad is None:
        _emit(args, {"result": "associative", "order": S.order}, "ASSOCIATIVE")
    else:
        _emit(
            args,
            {"result": "violation", "triple": list(bad), "order": S.order},
            f"VIOLATION {bad[0]} {bad[1]} {bad[2]}",
        )
    return 0


def _cmd_green(args) -> int:
    S = _load(args)
    gs = green.green_relations(S)
    orders = [green.schutzenberger_group(S, H).order for H in gs.h_classes]
    lines = [f"order: {S.order}"]
    for tag, classes in (
        ("h", gs.h_classes),
        ("l", gs.l_classes),
        ("r", gs.r_classes),
        ("j", gs.j_classes),
    ):
        lines.append(f"{tag}-classes: " + " ".join(_class_str(c) for c in classes))
    lines.append("group-flags: " + " ".join(str(f).lower() for f in gs.group_flags))
    lines.append("schutzenberger-orders: " + " ".join(map(str, orders)))
    payload = {
        "order": S.order,
        "h_classes": [sorted(c) for c in gs.h_classes],
        "l_classes": [sorted(c) for c in gs.l_classes],
        "r_classes": [sorted(c) for c in gs.r_classes],
        "j_classes": [sorted(c) for c in gs.j_classes],
        "group_flags": list(gs.group_flags),
        "schutzenberger_orders": orders,
    }
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_schutz(args) -> int:
    S = _load(args)
    if not 0 <= args.element < S.order:
        raise ArgumentError(f"element {args.element} out of range")
    H = green.green_relations(S).hclass_of(args.element)
    gamma = green.schutzenberger_group(S, H)
    cycles = sorted(gamma.cycle_notation(p) for p in gamma.perms)
    text = " ".join(cycles)
    payload = {
        "hclass": sorted(H),
        "order": gamma.order,
        "permutations": cycles,
    }
    _emit(args, payload, text)
    return 0


def _cmd_congruences(args) -> int:
    S = _load(args)
    congs = cg.all_congruences(S)
    lines = [f"count: {len(congs)}"]
    for i, c in enumerate(congs):
        cls = " ".join(_class_str(x) for x in c.classes())
        lines.append(f"congruence {i}: index {c.index} classes {cls}")
    payload = {
        "count": len(congs),
        "congruences": [
            {"index": c.index, "classes": [list(x) for x in c.classes()]} for c in congs
        ],
    }
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_separate(args) -> int:
    S = _load(args)
    members = set(args.members)
    try:
        cert = cg.min_index_separating(S, args.element, members)
    except ArgumentError:
        raise
    if cert is None:  # pragma: no cover - finite inputs always separate
        _emit(args, {"result": "inseparable"}, "INSEPARABLE")
        return 0
    c = cert.congruence
    cls = " ".join(_class_str(x) for x in c.classes())
    text = f"index {c.index} classes {cls}"
    payload = {
        "index": c.index,
        "classes": [list(x) for x in c.classes()],
        "element": args.element,
        "avoided": sorted(members),
    }
    _emit(args, payload, text)
    return 0


def _parse_ambient(token: str, cap: Optional[int]):
    low = token.lower()
    if low in ("z", "n", "nxz"):
        return cm.symbolic_ambient(low)
    with open(token, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("gens"):
        pres = cm.parse_presentation_text(text)
        engine = cm.NFEngine(pres, bound=max(8, 2 * pres.max_exponent()))
        if engine.certificate is None:
            raise ArgumentError(
                "presentation not certified finite; raise the bound or supply a table"
            )
        return engine.table
    return core.parse_table_text(text, cap=cap)


def _parse_element(ambient, token: str):
    if isinstance(ambient, cm.SymbolicAmbient) and ambient.name == "NxZ":
        a, z = token.split(":")
        return (int(a), int(z))
    return int(token)


def _parse_gens(ambient, token: str):
    items = [t for t in token.split(",") if t]
    return tuple(_parse_element(ambient, t) for t in items)


def _kl_payload(rep: cm.KLReport) -> dict:
    return {
        "ambient": rep.ambient_kind,
        "element": list(rep.element) if isinstance(rep.element, tuple) else rep.element,
        "C_s": [list(c) if isinstance(c, tuple) else c for c in rep.C_s],
        "k_s": rep.k_s,
        "W_s_gens": [list(w) for w in rep.W_s_gens],
        "G_s_basis": [list(r) for r in rep.G_s_basis],
        "m_s": rep.m_s,
        "strongly_separable_at_s": rep.strongly_separable_at_s,
        "exact": rep.exact,
    }


def _kl_text(rep: cm.KLReport) -> str:
    lines = [
        f"ambient: {rep.ambient_kind}",
        f"element: {rep.element}",
        "C_s: " + (" ".join(map(str, rep.C_s)) if rep.C_s else "(empty)"),
        f"k_s: {rep.k_s}",
        "W_s generators: "
        + (" ".join("(" + ",".join(map(str, w)) + ")" for w in rep.W_s_gens) or "(none)"),
        "G_s basis: "
        + (" ".join("[" + " ".join(map(str, r)) + "]" for r in rep.G_s_basis) or "(empty)"),
        f"m_s: {rep.m_s}",
        f"strongly-separable-at-s: {str(rep.strongly_separable_at_s).lower()}",
        f"exact: {str(rep.exact).lower()}",
    ]
    return "\n".join(lines)


def _cmd_kl(args) -> int:
    ambient = _parse_ambient(args.ambient, args.cap)
    element = _parse_element(ambient, args.element)
    gens = _parse_gens(ambient, args.gens)
    rep = cm.kl_parameters(ambient, element, gens, bound=args.bound)
    _emit(args, _kl_payload(rep), _kl_text(rep))
    return 0


def _cmd_classify(args) -> int:
    ambient = _parse_ambient(args.ambient, args.cap)
    gens = _parse_gens(ambient, args.gens) if args.gens else None
    verdict = cm.theorem43_classify(ambient, gens, bound=args.bound)
    lines = [
        f"ambient: {verdict.ambient_kind}",
        f"completely-separable: {str(verdict.completely_separable).lower()}",
        f"strongly-separable: {str(verdict.strongly_separable).lower()}",
        f"weakly-separable: {str(verdict.weakly_separable).lower()}",
        f"h-classes-all-finite: {str(verdict.hclasses_all_finite).lower()}",
        f"residually-finite: {str(verdict.residually_finite).lower()}",
    ]
    for note in verdict.notes:
        lines.append(f"note: {note}")
    if verdict.witness is not None:
        lines.append("witness:")
        lines.extend("  " + ln for ln in _kl_text(verdict.witness).splitlines())
    payload = {
        "ambient": verdict.ambient_kind,
        "completely_separable": verdict.completely_separable,
        "strongly_separable": verdict.strongly_separable,
        "weakly_separable": verdict.weakly_separable,
        "hclasses_all_finite": verdict.hclasses_all_finite,
        "residually_finite": verdict.residually_finite,
        "notes": list(verdict.notes),
        "witness": _kl_payload(verdict.witness) if verdict.witness else None,
    }
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_abelian(args) -> int:
    d = ab.parse_descriptor(" ".join(args.descriptor))
    v = ab.classify(d)
    names = ("residually-finite", "weakly-separable", "strongly-separable", "completely-separable")
    values = v.as_tuple()
    lines = [f"descriptor: {ab.format_descriptor(d.normalized())}"]
    for name, val, reason in zip(names, values, v.reasons):
        lines.append(f"{name}: {str(val).lower()}  [{reason}]")
    payload = {
        "descriptor": ab.format_descriptor(d.normalized()),
        "residually_finite": values[0],
        "weakly_sep": values[1],
        "strongly_sep": values[2],
        "completely_sep": values[3],
        "reasons": list(v.reasons),
    }
    _emit(args, payload, "\n".join(lines))
    return 0


def _rees_matrix_from_text(G: core.FiniteSemigroup, text: str):
    rows = []
    for row_text in text.split(";"):
        row = []
        for tok in row_text.split(","):
            tok = tok.strip()
            if tok == "0":
                row.append(None)
            elif tok == "e":
                row.append(G.identity)
            else:
                row.append(int(tok))
        rows.append(tuple(row))
    return tuple(rows)


def _cmd_gallery(args) -> int:
    if args.gallery_cmd == "list":
        names = [name for name, _ in gallery.gallery_instances()]
        names += ["eg62 (symbolic)", "squarefree stream (symbolic)"]
        _emit(args, {"instances": names}, "\n".join(names))
        return 0
    if args.gallery_cmd == "build":
        built = _build_gallery_table(args)
        if args.output:
            core.save_table(built, args.output)
            print(f"wrote order-{built.order} table to {args.output}")
        else:
            print(core.format_table_text(built), end="")
        return 0
    if args.gallery_cmd == "replay":
        with open(args.colors, "r", encoding="utf-8") as fh:
            colors = [ln.strip() for ln in fh if ln.strip()]
        fn = (
            gallery.replay_squarefree_collapse
            if args.system == "sqfree"
            else gallery.replay_eg62
        )
        chain = fn(colors)
        if chain is None:
            _emit(args, {"result": "no-collision"}, "NOCOLLISION")
        else:
            payload = {
                "result": "chain",
                "collision": list(chain.collision),
                "steps": [
                    {"lhs": list(s.lhs), "rel": s.rel, "rhs": list(s.rhs), "note": s.note}
                    for s in chain.steps
                ],
                "conclusion": chain.conclusion,
            }
            _emit(args, payload, gallery.format_chain(chain))
        return 0
    if args.gallery_cmd == "nxz":
        gens = [tuple(map(int, tok.split(":"))) for tok in args.gens.split(",")]
        x = tuple(map(int, args.x.split(":")))
        sep = gallery.nxz_separator(gens, x)
        text = (
            f"level: {sep.level}\n"
            f"level-members: {' '.join(map(str, sep.level_members)) or '(none)'}\n"
            f"modulus: {sep.modulus}\n"
            f"quotient-order: {sep.quotient.order}\n"
            f"checked-members: {sep.checked_members}\nSEPARATED"
        )
        payload = {
            "level": sep.level,
            "level_members": list(sep.level_members),
            "modulus": sep.modulus,
            "quotient_order": sep.quotient.order,
            "checked_members": sep.checked_members,
            "separated": True,
        }
        _emit(args, payload, text)
        return 0
    if args.gallery_cmd == "zcyclic":
        rows = gallery.z_cyclic_obstruction(args.nmax)
        lines = [f"n={r.modulus} steps={r.witness_steps} contained={str(r.contained).lower()}" for r in rows]
        payload = {
            "rows": [
                {"n": r.modulus, "steps": r.witness_steps, "contained": r.contained}
                for r in rows
            ]
        }
        _emit(args, payload, "\n".join(lines))
        return 0
    if args.gallery_cmd == "unitcheck":
        S = core.load_table(args.table, cap=args.cap)
        ok, pair = gallery.finite_monoid_unit_check(S)
        text = "UNITS-TWO-SIDED" if ok else f"VIOLATION {pair[0]} {pair[1]}"
        _emit(args, {"ok": ok, "pair": list(pair) if pair else None}, text)
        return 0
    raise FormatError(f"unknown gallery command {args.gallery_cmd!r}")


def _build_gallery_table(args) -> core.FiniteSemigroup:
    name = args.name
    if name == "construction":
        k = int(args.t.lstrip("z"))
        m = int(args.g.lstrip("z"))
        T, G = core.cyclic_group(k), core.cyclic_group(m)
        phi = gallery.reduction_hom(k, m)
        return gallery.build_construction(gallery.ConstructionSpec(T, G, phi))
    if name == "reesmatrix":
        G = core.cyclic_group(int(args.g.lstrip("z")))
        P = _rees_matrix_from_text(G, args.p)
        spec = gallery.ReesMatrixSpec(G=G, I_size=len(P[0]), L_size=len(P), P=P)
        return gallery.build_rees_matrix(spec)
    if name == "squarefree":
        return gallery.squarefree_semigroup(args.n)
    if name == "zerogroup":
        return core.adjoin_zero(core.cyclic_group(int(args.g.lstrip("z"))))
    raise FormatError(f"unknown gallery instance {name!r}")


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semisep",
        description="separability toolkit for finite and commutative semigroups",
    )
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized verbs")
    parser.add_argument("--cap", type=int, default=None, help="order cap for loaded tables")
    parser.add_argument("-o", "--output", default=None, help="write the report or table here")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check a Cayley table for associativity")
    p.add_argument("table")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("green", help="Green's relations and Schuetzenberger orders")
    p.add_argument("table")
    p.set_defaults(fn=_cmd_green)

    p = sub.add_parser("schutz", help="Schuetzenberger permutations of one element's H-class")
    p.add_argument("table")
    p.add_argument("element", type=int)
    p.set_defaults(fn=_cmd_schutz)

    p = sub.add_parser("congruences", help="list every congruence")
    p.add_argument("table")
    p.set_defaults(fn=_cmd_congruences)

    p = sub.add_parser("separate", help="minimal-index separating congruence")
    p.add_argument("table")
    p.add_argument("element", type=int)
    p.add_argument("members", type=int, nargs="+")
    p.set_defaults(fn=_cmd_separate)

    p = sub.add_parser("classify", help="four separability verdicts for an ambient")
    p.add_argument("ambient", help="z, n, a table file, or a certified presentation")
    p.add_argument("--gens", default=None)
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("kl", help="stabilizer-lattice parameters of an element")
    p.add_argument("ambient", help="z, n, nxz, a table file, or a presentation")
    p.add_argument("--element", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(fn=_cmd_kl)

    p = sub.add_parser("abelian", help="abelian-group separability classifier")
    asub = p.add_subparsers(dest="abelian_cmd", required=True)
    pc = asub.add_parser("classify")
    pc.add_argument("descriptor", nargs="+")
    pc.set_defaults(fn=_cmd_abelian)

    p = sub.add_parser("gallery", help="example semigroups and replayable arguments")
    gsub = p.add_subparsers(dest="gallery_cmd", required=True)
    gsub.add_parser("list").set_defaults(fn=_cmd_gallery)
    pb = gsub.add_parser("build")
    pb.add_argument("name", choices=("construction", "reesmatrix", "squarefree", "zerogroup"))
    pb.add_argument("--t", default="z3")
    pb.add_argument("--g", default="z3")
    pb.add_argument("--p", default="e")
    pb.add_argument("--n", type=int, default=3)
    pb.set_defaults(fn=_cmd_gallery)
    pr = gsub.add_parser("replay")
    pr.add_argument("system", choices=("sqfree", "eg62"))
    pr.add_argument("--colors", required=True)
    pr.set_defaults(fn=_cmd_gallery)
    pn = gsub.add_parser("nxz")
    pn.add_argument("--gens", required=True, help="comma-separated a:z pairs")
    pn.add_argument("--x", required=True, help="a:z pair")
    pn.set_defaults(fn=_cmd_gallery)
    pz = gsub.add_parser("zcyclic")
    pz.add_argument("--nmax", type=int, default=10)
    pz.set_defaults(fn=_cmd_gallery)
    pu = gsub.add_parser("unitcheck")
    pu.add_argument("table")
    pu.set_defaults(fn=_cmd_gallery)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
