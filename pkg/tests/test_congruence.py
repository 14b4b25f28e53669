import pytest

from semisep import congruence as cg
from semisep import core
from semisep.errors import ArgumentError, ResourceError


def test_principal_trivial_pair():
    z4 = core.cyclic_group(4)
    c = cg.principal_congruence(z4, 1, 1)
    assert c.index == 4


def test_principal_z4_half():
    z4 = core.cyclic_group(4)
    c = cg.principal_congruence(z4, 0, 2)
    assert c.classes() == ((0, 2), (1, 3))


def test_principal_left_zero_universal():
    lz = core.left_zero_semigroup(2)
    c = cg.principal_congruence(lz, 0, 1)
    assert c.index == 1


def test_congruence_from_pairs():
    z12 = core.cyclic_group(12)
    c = cg.congruence_from_pairs(z12, [(0, 4)])
    assert c.index == 4
    z4 = core.cyclic_group(4)
    assert cg.congruence_from_pairs(z4, [(1, 1)]).index == 4
    assert cg.congruence_from_pairs(z4, [(a, b) for a in range(4) for b in range(4)]).index == 1
    assert cg.congruence_from_pairs(z4, []).index == 4  # empty join is equality


def test_all_congruences_counts():
    one = core.FiniteSemigroup.from_table([[0]])
    assert len(cg.all_congruences(one)) == 1
    z5 = core.cyclic_group(5)
    assert len(cg.all_congruences(z5)) == 2
    chain = core.semilattice_chain(2)
    assert len(cg.all_congruences(chain)) == 2


def test_all_congruences_matches_partition_filter():
    for S in (
        core.cyclic_group(4),
        core.cyclic_group(6),
        core.mult_mod(4),
        core.semilattice_chain(3),
        core.left_zero_semigroup(3),
        core.null_semigroup(3),
        core.monogenic_semigroup(2, 2),
    ):
        fast = [c.class_of for c in cg.all_congruences(S)]
        slow = [c.class_of for c in cg.partition_filter_congruences(S)]
        assert fast == slow


def test_principal_is_least_containing_pair():
    for S in (core.cyclic_group(6), core.mult_mod(4), core.semilattice_chain(3)):
        lattice = cg.all_congruences(S)
        for a in S.elements():
            for b in range(a + 1, S.order):
                p = cg.principal_congruence(S, a, b)
                containing = [c for c in lattice if c.same(a, b)]
                assert p.class_of in [c.class_of for c in containing]
                for c in containing:
                    # p refines every congruence containing the pair
                    assert all(
                        c.same(x, y)
                        for x in S.elements()
                        for y in S.elements()
                        if p.same(x, y)
                    )


def test_enumeration_cap():
    with pytest.raises(ResourceError):
        cg.all_congruences(core.cyclic_group(13))
    with pytest.raises(ResourceError):
        cg.partition_filter_congruences(core.cyclic_group(9))


def test_quotient():
    z4 = core.cyclic_group(4)
    iso, _ = cg.quotient(z4, cg.equality_congruence(z4))
    assert iso.order == 4
    one, _ = cg.quotient(z4, cg.universal_congruence(z4))
    assert one.order == 1
    c = cg.congruence_from_pairs(z4, [(0, 2)])
    q, proj = cg.quotient(z4, c)
    assert q.order == 2
    assert q.table == core.cyclic_group(2).table
    assert proj(0) == proj(2)


def test_quotient_kills_exactly_generated_pairs():
    z12 = core.cyclic_group(12)
    pairs = [(0, 4), (1, 5)]
    c = cg.congruence_from_pairs(z12, pairs)
    _, proj = cg.quotient(z12, c)
    for a, b in pairs:
        assert proj(a) == proj(b)


def test_separates():
    z4 = core.cyclic_group(4)
    eq = cg.equality_congruence(z4)
    assert cg.separates(eq, 1, {0})
    uni = cg.universal_congruence(z4)
    assert not cg.separates(uni, 1, {0})
    c = cg.congruence_from_pairs(z4, [(0, 2)])
    assert cg.separates(c, 1, {0})  # class {1,3} misses 0
    with pytest.raises(ArgumentError):
        cg.separates(eq, 0, {0})


def test_min_index_separating_z4():
    z4 = core.cyclic_group(4)
    cert = cg.min_index_separating(z4, 2, {0})
    assert cert.congruence.index == 4  # only equality separates 2 from 0
    cert13 = cg.min_index_separating(z4, 1, {0})
    assert cert13.congruence.index == 2


def test_min_index_separating_semilattice():
    chain = core.semilattice_chain(2)
    cert = cg.min_index_separating(chain, 0, {1})
    assert cert.congruence.index == 2


def test_min_index_always_succeeds():
    for S in (core.mult_mod(4), core.null_semigroup(2), core.left_zero_semigroup(3)):
        for x in S.elements():
            T = set(S.elements()) - {x}
            cert = cg.min_index_separating(S, x, T)
            assert cg.separates(cert.congruence, x, T)


def test_rees_congruence():
    m = core.mult_mod(4)
    whole = cg.rees_congruence(m, range(4))
    assert whole.index == 1
    zero_only = cg.rees_congruence(m, [0])
    assert zero_only.index == 4
    c = cg.rees_congruence(m, [0, 2])
    assert c.index == 3
    with pytest.raises(ArgumentError):
        cg.rees_congruence(core.cyclic_group(4), [0, 2])


def test_every_congruence_passes_compatibility():
    for S in (core.mult_mod(4), core.semilattice_chain(3)):
        for c in cg.all_congruences(S):
            assert c.compatibility_violation() is None
