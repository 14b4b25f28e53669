import itertools
import random

import pytest

from semisep import commutative as cm
from semisep import congruence as cg
from semisep import core, green
from semisep.errors import ArgumentError, FormatError


# -- lattice helpers -----------------------------------------------------------

def test_hnf_basics():
    assert cm.hnf_rows([(1, 1)], 2) == ((1, 1),)
    assert cm.hnf_rows([(2, 2), (3, 3)], 2) == ((1, 1),)
    assert cm.hnf_rows([(4,)], 1) == ((4,),)
    assert cm.hnf_rows([], 3) == ()
    assert cm.hnf_rows([(2, 0), (0, 3)], 2) == ((2, 0), (0, 3))
    # HNF is idempotent
    rows = cm.hnf_rows([(6, 4, 1), (2, 0, 8), (0, 10, 2)], 3)
    assert cm.hnf_rows(rows, 3) == rows


def test_in_lattice():
    basis = cm.hnf_rows([(2, 0), (0, 3)], 2)
    assert cm.in_lattice(basis, (4, 6))
    assert not cm.in_lattice(basis, (1, 0))
    assert cm.in_lattice((), (0, 0))
    assert not cm.in_lattice((), (1, 0))


def test_kernel_of_linear_form():
    ker = cm.kernel_of_linear_form((1, -1))
    assert ker == ((1, 1),)
    ker2 = cm.kernel_of_linear_form((2, -3))
    assert len(ker2) == 1
    assert sum(a * b for a, b in zip((2, -3), ker2[0])) == 0
    ker3 = cm.kernel_of_linear_form((0, 0))
    assert ker3 == ((1, 0), (0, 1))
    ker4 = cm.kernel_of_linear_form((1, 0, -1))
    assert len(ker4) == 2
    for row in ker4:
        assert row[0] - row[2] == 0


# -- presentations and the engine ------------------------------------------------

def mono_pres(*pairs):
    return cm.CommPresentation.make(1, [((a,), (b,)) for a, b in pairs])


def test_presentation_text_round_trip():
    pres = cm.CommPresentation.make(2, [((2, 0), (1, 1))])
    text = cm.format_presentation_text(pres)
    assert cm.parse_presentation_text(text) == pres
    with pytest.raises(FormatError):
        cm.parse_presentation_text("rel 1 = 2\n")


def test_enumerate_monogenic_certified():
    pres = mono_pres((3, 5))
    elements, cert = cm.enumerate_elements(pres, 10)
    assert elements == ((1,), (2,), (3,), (4,))
    assert cert is not None
    assert cert.count == 4
    assert cert.periods == ((3, 2),)


def test_enumerate_free_monogenic_uncertified():
    pres = cm.CommPresentation.make(1, [])
    elements, cert = cm.enumerate_elements(pres, 6)
    assert cert is None
    assert elements == tuple((i,) for i in range(1, 7))


def test_enumerate_idempotent():
    pres = mono_pres((1, 2))
    elements, cert = cm.enumerate_elements(pres, 6)
    assert cert is not None and cert.count == 1
    assert elements == ((1,),)


def test_certified_table_matches_monogenic():
    engine = cm.NFEngine(mono_pres((3, 5)), 10)
    expected = core.monogenic_semigroup(3, 2)
    assert engine.table.table == expected.table


def test_word_problem_monogenic():
    pres = mono_pres((3, 5))
    assert cm.word_problem(pres, (3,), (7,), 10) == cm.EQUAL
    assert cm.word_problem(pres, (3,), (4,), 10) == cm.DISTINCT
    assert cm.word_problem(pres, (2,), (2,), 10) == cm.EQUAL


def test_word_problem_free_two_generators():
    pres = cm.CommPresentation.make(2, [])
    assert cm.word_problem(pres, (1, 0), (0, 1), 5) == cm.DISTINCT  # weight invariant
    assert cm.word_problem(pres, (1, 1), (1, 1), 5) == cm.EQUAL


def test_word_problem_unknown_without_certificate():
    # a = a*b^2 collapses nothing at reachable scale, but no generator is
    # periodic, so only invariants can answer; equal-degree pairs stay unknown
    pres = cm.CommPresentation.make(2, [((1, 0), (1, 2))])
    assert cm.word_problem(pres, (1, 0), (1, 2), 6) == cm.EQUAL  # box chain
    assert cm.word_problem(pres, (2, 0), (1, 0), 6) == cm.DISTINCT  # a-degree invariant
    assert cm.word_problem(pres, (1, 1), (1, 3), 6) == cm.EQUAL  # via translation
    assert cm.word_problem(pres, (0, 1), (0, 3), 6) == cm.UNKNOWN


def test_two_generator_certified_engine():
    # a^2 = a^3, b^2 = b^3, and ab = a^2 : a small commutative band-like quotient
    pres = cm.CommPresentation.make(2, [((2, 0), (3, 0)), ((0, 2), (0, 3)), ((1, 1), (2, 0))])
    engine = cm.NFEngine(pres, 8)
    assert engine.certificate is not None
    q = engine.table
    assert core.validate_associativity(q.table) is None
    assert q.is_commutative()
    # relations hold in the table
    for l, r in pres.relations:
        assert engine.eval_in_table(l) == engine.eval_in_table(r)
    # count cross-check by direct closure of the generator images
    assert set(core.closure(q, q.generators)) == set(q.elements())


def test_engine_validates_bound():
    with pytest.raises(ArgumentError):
        cm.NFEngine(mono_pres((3, 5)), 3)


def test_certified_decisions_agree_with_table():
    pres = cm.CommPresentation.make(2, [((2, 0), (3, 0)), ((0, 2), (0, 3)), ((1, 1), (2, 0))])
    engine = cm.NFEngine(pres, 8)
    assert engine.certificate is not None
    rng = random.Random(3)
    for _ in range(200):
        u = tuple(rng.randint(0, 6) for _ in range(2))
        v = tuple(rng.randint(0, 6) for _ in range(2))
        if not any(u) or not any(v):
            continue
        verdict = engine.word_problem(u, v)
        same = engine.eval_in_table(u) == engine.eval_in_table(v)
        assert verdict == (cm.EQUAL if same else cm.DISTINCT)
    # element count equals the closure of the generator images
    assert engine.certificate.count == len(
        core.closure(engine.table, engine.table.generators)
    )


# -- archimedean decomposition ----------------------------------------------------

def test_arch_group_single_component():
    z6 = core.cyclic_group(6)
    dec = cm.archimedean_decomposition(z6)
    assert len(dec.components) == 1


def test_arch_semilattice_components():
    chain = core.semilattice_chain(2)
    dec = cm.archimedean_decomposition(chain)
    assert dec.components == (frozenset({0}), frozenset({1}))
    assert dec.semilattice.table == chain.table


def test_arch_group_with_zero():
    s = core.adjoin_zero(core.cyclic_group(2))
    dec = cm.archimedean_decomposition(s)
    assert dec.components == (frozenset({0, 1}), frozenset({2}))
    for comp in dec.components:
        idems = [x for x in comp if s.mul(x, x) == x]
        assert len(idems) <= 1


def test_arch_rejects_non_commutative():
    with pytest.raises(ArgumentError):
        cm.archimedean_decomposition(core.left_zero_semigroup(2))


# -- stabilizer characterization -----------------------------------------------------

def test_stab_characterization_minimal():
    m = core.mult_mod(4)
    assert cm.stab_characterization_check(m, {0}, 0)


def test_stab_characterization_units():
    m = core.mult_mod(4)
    assert cm.stab_characterization_check(m, {1, 3}, 1)


def test_stab_characterization_semilattice():
    chain = core.semilattice_chain(2)
    assert cm.stab_characterization_check(chain, {1}, 1)
    with pytest.raises(ArgumentError):
        cm.stab_characterization_check(chain, {0}, 1)  # H_1 is not above H_0


# -- Dickson scan ---------------------------------------------------------------------

def brute_minimal(points):
    return [
        v for v in points
        if not any(u != v and all(a <= b for a, b in zip(u, v)) for u in points)
    ]


def test_dickson_single_generator():
    up = lambda v: all(a >= b for a, b in zip(v, (1, 1)))
    assert cm.dickson_generators(up, (4, 4)) == ((1, 1),)


def test_dickson_incomparable_pair():
    def oracle(v):
        return (v[0] >= 2 and v[1] >= 0) or (v[0] >= 0 and v[1] >= 3)

    assert cm.dickson_generators(oracle, (5, 5)) == ((2, 0), (0, 3))


def test_dickson_matches_bruteforce():
    seeds = [(1, 2, 0), (0, 1, 2), (2, 0, 1)]

    def oracle(v):
        return any(all(a >= b for a, b in zip(v, s)) for s in seeds)

    got = cm.dickson_generators(oracle, (3, 3, 3))
    box = list(itertools.product(range(4), repeat=3))
    true_points = [v for v in box if oracle(v)]
    assert sorted(got) == sorted(brute_minimal(true_points))


def test_dickson_upward_check():
    flaky = lambda v: v == (1, 1)
    with pytest.raises(ArgumentError):
        cm.dickson_generators(flaky, (3, 3))


def test_dickson_antichain_and_domination():
    def oracle(v):
        return sum(v) >= 3

    gens = cm.dickson_generators(oracle, (4, 4))
    for u in gens:
        for v in gens:
            if u != v:
                assert not all(a <= b for a, b in zip(u, v))
    for v in itertools.product(range(5), repeat=2):
        if oracle(v):
            assert any(all(a <= b for a, b in zip(u, v)) for u in gens)


# -- KL parameters ---------------------------------------------------------------------

def test_kl_integers_ambient():
    rep = cm.kl_parameters(cm.Z_AMBIENT, 0, (1, -1))
    assert rep.k_s == 2
    assert rep.m_s == 1
    assert rep.G_s_basis == ((1, 1),)
    assert rep.W_s_gens == ((1, 1),)
    assert not rep.strongly_separable_at_s
    assert rep.exact


def test_kl_naturals_ambient():
    rep = cm.kl_parameters(cm.N_AMBIENT, 1, (1,))
    assert rep.k_s == 0 and rep.m_s == 0
    assert rep.strongly_separable_at_s
    assert rep.C_s == () and rep.W_s_gens == ()


def test_kl_nxz_ambient():
    rep = cm.kl_parameters(cm.NXZ_AMBIENT, (1, 0), ((1, 0), (0, 1), (0, -1)))
    assert rep.k_s == 2
    assert rep.m_s == 1
    assert not rep.strongly_separable_at_s


def test_kl_symbolic_generation_checks():
    with pytest.raises(ArgumentError):
        cm.kl_parameters(cm.Z_AMBIENT, 0, (1,))  # no negatives
    with pytest.raises(ArgumentError):
        cm.kl_parameters(cm.N_AMBIENT, 1, (2,))
    with pytest.raises(ArgumentError):
        cm.kl_parameters(cm.NXZ_AMBIENT, (1, 0), ((1, 0), (0, 1)))


def test_kl_finite_z4():
    z4 = core.cyclic_group(4)
    rep = cm.kl_parameters(z4, 1, (1,))
    assert rep.C_s == (1,)
    assert rep.k_s == 1
    assert rep.m_s == 1
    assert rep.G_s_basis == ((4,),)
    assert rep.W_s_gens == ((4,),)
    assert rep.strongly_separable_at_s


def test_kl_finite_always_full_rank():
    for S, A in (
        (core.mult_mod(4), (2, 3)),
        (core.cyclic_group(6), (1,)),
        (core.monogenic_semigroup(2, 3), (0,)),
    ):
        if set(core.closure(S, A)) != set(S.elements()):
            continue
        for s in S.elements():
            rep = cm.kl_parameters(S, s, A)
            assert rep.m_s == rep.k_s


def test_hclass_finiteness():
    z = cm.hclass_finiteness(cm.Z_AMBIENT, 0, (1, -1))
    assert z.status == "infinite"
    assert z.witness.m_s < z.witness.k_s
    n = cm.hclass_finiteness(cm.N_AMBIENT, 1, (1,))
    assert n.status == "finite" and n.size == 1
    nxz = cm.hclass_finiteness(cm.NXZ_AMBIENT, (1, 0), ((1, 0), (0, 1), (0, -1)))
    assert nxz.status == "infinite"
    z4 = cm.hclass_finiteness(core.cyclic_group(4), 1, (1,))
    assert z4.status == "finite" and z4.size == 4


def test_theorem43_classify():
    z = cm.theorem43_classify(cm.Z_AMBIENT)
    assert not z.weakly_separable and not z.strongly_separable
    assert not z.completely_separable and not z.hclasses_all_finite
    assert z.residually_finite
    assert z.witness is not None and z.witness.m_s < z.witness.k_s
    n = cm.theorem43_classify(cm.N_AMBIENT)
    assert n.completely_separable and n.hclasses_all_finite
    fin = cm.theorem43_classify(core.mult_mod(5))
    assert fin.completely_separable and fin.residually_finite
    with pytest.raises(ArgumentError):
        cm.theorem43_classify(cm.NXZ_AMBIENT)


# -- the separating congruence ----------------------------------------------------------

def test_separating_congruence_z4():
    z4 = core.cyclic_group(4)
    rep = cm.separating_congruence(z4, 1)
    assert rep.case == "group"
    cls = [x for x in z4.elements() if rep.congruence_on_ambient.same(x, 1)]
    assert cls == [1]


def test_separating_congruence_monogenic_nongroup():
    s = core.monogenic_semigroup(2, 1)  # a, a^2 with a^2 = a^3
    rep = cm.separating_congruence(s, 0)
    assert rep.case in ("non-group", "no-stabilizer-generators")
    assert [x for x in s.elements() if rep.congruence_on_ambient.same(x, 0)] == [0]


def test_separating_congruence_mult_mod4():
    m = core.mult_mod(4)
    rep = cm.separating_congruence(m, 2)
    assert rep.case == "non-group"
    assert [x for x in m.elements() if rep.congruence_on_ambient.same(x, 2)] == [2]
    # cross-check against plain enumeration
    cert = cg.min_index_separating(m, 2, set(m.elements()) - {2})
    assert cert.congruence.index <= rep.congruence_on_ambient.index


def test_separating_congruence_every_element_small():
    for S in (
        core.mult_mod(4),
        core.mult_mod(6),
        core.cyclic_group(6),
        core.monogenic_semigroup(3, 2),
        core.semilattice_chain(4),
        core.adjoin_zero(core.cyclic_group(3)),
    ):
        for h in S.elements():
            rep = cm.separating_congruence(S, h)
            assert [x for x in S.elements() if rep.congruence_on_ambient.same(x, h)] == [h]
            # the produced congruence really is one: appears in the lattice
            if S.order <= 7:
                lattice = [c.class_of for c in cg.all_congruences(S)]
                assert rep.congruence_on_ambient.class_of in lattice


def test_separating_congruence_rejects_non_commutative():
    with pytest.raises(ArgumentError):
        cm.separating_congruence(core.left_zero_semigroup(2), 0)
