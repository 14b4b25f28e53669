import pytest

from semisep import core, green
from semisep.errors import ArgumentError


def brute_hclasses(S):
    """Oracle: literal definition over S^1 with a formal identity."""
    def right(x):
        return frozenset({x} | {S.mul(x, t) for t in S.elements()})

    def left(x):
        return frozenset({x} | {S.mul(t, x) for t in S.elements()})

    keys = {}
    for x in S.elements():
        keys.setdefault((right(x), left(x)), []).append(x)
    return sorted((frozenset(v) for v in keys.values()), key=min)


def test_group_is_single_group_hclass():
    z5 = core.cyclic_group(5)
    gs = green.green_relations(z5)
    assert gs.h_classes == (frozenset(range(5)),)
    assert gs.group_flags == (True,)
    assert gs.j_classes == (frozenset(range(5)),)


def test_left_zero_relations():
    lz = core.left_zero_semigroup(2)
    gs = green.green_relations(lz)
    assert gs.r_classes == (frozenset({0}), frozenset({1}))
    assert gs.l_classes == (frozenset({0, 1}),)
    assert gs.h_classes == (frozenset({0}), frozenset({1}))
    assert gs.j_classes == (frozenset({0, 1}),)
    assert green.green_relations(lz).h_classes == tuple(brute_hclasses(lz))


def test_hclasses_match_oracle_on_assorted_tables():
    for S in (core.mult_mod(6), core.monogenic_semigroup(3, 2),
              core.null_semigroup(3), core.semilattice_chain(3)):
        assert list(green.green_relations(S).h_classes) == brute_hclasses(S)


def test_mult_mod4_hclasses():
    m = core.mult_mod(4)
    gs = green.green_relations(m)
    assert gs.h_classes == (frozenset({0}), frozenset({1, 3}), frozenset({2}))
    assert gs.group_flags == (True, True, False)


def test_is_group_hclass():
    m = core.mult_mod(4)
    assert green.is_group_hclass(m, {0})
    assert green.is_group_hclass(m, {1, 3})
    assert not green.is_group_hclass(m, {2})
    with pytest.raises(ArgumentError):
        green.is_group_hclass(m, {1})  # not a whole H-class


def test_hclass_power_witness():
    z4 = core.cyclic_group(4)
    assert green.hclass_power_witness(z4, set(range(4)), 5) == 2
    m = core.mult_mod(4)
    assert green.hclass_power_witness(m, {2}, 8) is None
    chain = core.semilattice_chain(2)
    assert green.hclass_power_witness(chain, {1}, 4) == 2
    # witness implies group H-class
    for S in (z4, m, chain):
        gs = green.green_relations(S)
        for H in gs.h_classes:
            w = green.hclass_power_witness(S, H, 6)
            if w is not None:
                assert green.is_group_hclass(S, H)


def test_right_stabilizer_group_and_zero():
    z4 = core.cyclic_group(4)
    stab = green.right_stabilizer(z4, set(range(4)))
    assert stab.members == frozenset(range(4))  # group has identity, S^1 = S
    m = core.mult_mod(4)
    stab0 = green.right_stabilizer(m, {0})
    assert stab0.members == frozenset(range(4))


def test_schutzenberger_of_group_hclass_is_regular_representation():
    z4 = core.cyclic_group(4)
    g = green.schutzenberger_group(z4, set(range(4)))
    assert g.order == 4
    assert g.is_abelian() and g.is_cyclic()
    # base-point orbit bijection: perms act like the group itself
    assert set(g.perms) == {tuple((i + k) % 4 for i in range(4)) for k in range(4)}


def test_schutzenberger_orders_on_kernel():
    s = core.monogenic_semigroup(3, 2)  # kernel {a^3, a^4} is a 2-group
    gs = green.green_relations(s)
    for H, flag in zip(gs.h_classes, gs.group_flags):
        g = green.schutzenberger_group(s, H)
        assert g.order == len(H)
    kernel = frozenset({2, 3})
    assert green.is_group_hclass(s, kernel)
    assert green.schutzenberger_group(s, kernel).order == 2


def test_hclass_order_semilattice_and_mult_mod4():
    chain = core.semilattice_chain(2)  # e=0 above f=1
    order = green.hclass_order(chain)
    i_e = next(i for i, c in enumerate(order.classes) if 0 in c)
    i_f = next(i for i, c in enumerate(order.classes) if 1 in c)
    assert order.leq(i_f, i_e) and not order.leq(i_e, i_f)
    m = core.mult_mod(4)
    om = green.hclass_order(m)
    assert om.minimal is not None
    assert om.classes[om.minimal] == frozenset({0})


def test_hclass_order_rejects_non_commutative():
    with pytest.raises(ArgumentError):
        green.hclass_order(core.left_zero_semigroup(2))


def test_h_is_congruence_on_commutative():
    for S in (core.mult_mod(6), core.monogenic_semigroup(2, 3)):
        gs = green.green_relations(S)
        idx = gs.h_index_of
        for a in S.elements():
            for b in S.elements():
                if idx[a] != idx[b]:
                    continue
                for c in S.elements():
                    assert idx[S.mul(a, c)] == idx[S.mul(b, c)]
                    assert idx[S.mul(c, a)] == idx[S.mul(c, b)]


def test_induced_map_identity_is_iso():
    z4 = core.cyclic_group(4)
    ident = core.HomMap.checked(list(range(4)), z4, z4)
    theta = green.induced_schutz_map(z4, z4, ident, set(range(4)), 0)
    assert theta.is_injective()
    assert theta.image_order() == 4


def test_induced_map_constant_has_trivial_image():
    z4 = core.cyclic_group(4)
    one = core.FiniteSemigroup.from_table([[0]])
    const = core.HomMap.checked([0, 0, 0, 0], z4, one)
    theta = green.induced_schutz_map(z4, one, const, set(range(4)), 0)
    assert theta.image_order() == 1


def test_induced_map_mod2_reduction():
    z4, z2 = core.cyclic_group(4), core.cyclic_group(2)
    red = core.HomMap.checked([0, 1, 0, 1], z4, z2)
    theta = green.induced_schutz_map(z4, z2, red, set(range(4)), 0)
    assert theta.source.order == 4
    assert theta.target.order == 2
    assert theta.image_order() == 2
