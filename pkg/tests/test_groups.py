from itertools import permutations

import pytest

from brpic.errors import (ElementOutOfRange, InvalidAction, MalformedTable,
                          NoIdentity, NoInverse, NotASubgroup, NotAssociative)
from brpic.groups import (all_subgroups, closure_witness, conjugate_subgroup,
                          cyclic_group, double_coset,
                          double_coset_union_closure, generated_subgroup,
                          group_from_json, make_subgroup, named_group, orbits,
                          permutation_group, perm_from_cycles, stabilizer,
                          symmetric_group, trivial_subgroup, validate_action,
                          validate_group, whole_group)


def test_validate_accepts_cyclic_table():
    g = validate_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert g.order == 3 and g.is_abelian()
    assert [g.inv(a) for a in g.elements()] == [0, 2, 1]


def test_identity_moved_to_zero():
    # identity sits at index 1 here
    g = validate_group([[1, 0], [0, 1]], labels=["a", "e"])
    assert g.labels == ("e", "a")
    assert g.mul(1, 1) == 0


@pytest.mark.parametrize("table, err", [
    ([], MalformedTable),
    ([[0, 1], [1]], MalformedTable),
    ([[0, 5], [1, 0]], MalformedTable),
    ([[1, 1], [1, 1]], NoIdentity),
    ([[0, 1, 2], [1, 1, 1], [2, 1, 0]], NoInverse),
])
def test_validate_rejects(table, err):
    with pytest.raises(err):
        validate_group(table)


def test_non_associative_loop_rejected():
    # a Latin square with identity that is not a group (order 5 loop)
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        validate_group(t)


def test_permutation_json_gives_s3():
    g, action = group_from_json({"degree": 3, "generators": [[[0, 1, 2]], [[0, 1]]]})
    assert g.order == 6 and not g.is_abelian()
    assert action.set_size == 3
    assert len(orbits(action)) == 1


def test_perm_from_cycles_out_of_range():
    with pytest.raises(MalformedTable):
        perm_from_cycles([(0, 3)], 3)


def test_named_groups():
    assert [named_group(n).order for n in ("1", "C2", "C3", "V4", "S3", "Q8")] == [1, 2, 3, 4, 6, 8]
    assert named_group("Q8").exponent() == 4
    with pytest.raises(MalformedTable):
        named_group("A5")


def test_make_subgroup_checks_closure():
    s3 = symmetric_group(3)
    with pytest.raises(NotASubgroup):
        make_subgroup(s3, [0, 1])  # a 3-cycle without its square
    with pytest.raises(ElementOutOfRange):
        s3.check_element(6)


def test_all_subgroups_of_s3():
    # Lagrange-admissible orders 1, 2, 2, 2, 3, 6
    sizes = sorted(H.order for H in all_subgroups(symmetric_group(3)))
    assert sizes == [1, 2, 2, 2, 3, 6]


def _brute_double_coset(G, g, P):
    return {P.mul(P.mul(a, g), b) for a in G for b in G}


@pytest.mark.parametrize("name", ["S3", "Q8", "V4", "C4"])
def test_double_coset_size_formula(name):
    P = named_group(name)
    for H in all_subgroups(P):
        for g in P.elements():
            dc = double_coset(H, g, P)
            assert set(dc) == _brute_double_coset(H, g, P)
            inter = set(H) & set(conjugate_subgroup(H, g))
            assert len(dc) * len(inter) == H.order ** 2


def test_double_cosets_partition_the_group():
    P = symmetric_group(3)
    for H in all_subgroups(P):
        cosets = {double_coset(H, g, P) for g in P.elements()}
        assert sum(len(c) for c in cosets) == P.order


def test_union_closure_and_witness():
    P = symmetric_group(3)
    G = generated_subgroup(P, [next(a for a in P.elements() if P.element_order(a) == 2)])
    outside = next(a for a in P.elements() if a not in G)
    res = double_coset_union_closure(G, [0, outside])
    assert res.closed and len(res.H) == 6
    only = double_coset_union_closure(G, [outside])
    assert not only.closed and only.witness == (0, 0)
    assert closure_witness(P, list(P.elements())) is None


def test_trivial_and_whole():
    P = named_group("Q8")
    assert trivial_subgroup(P).elements == (0,)
    assert whole_group(P).index() == 1


def test_action_validation():
    c3 = cyclic_group(3)
    good = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    act = validate_action(c3, good)
    assert stabilizer(act, 0).elements == (0,)
    with pytest.raises(InvalidAction):
        validate_action(c3, [(0, 1, 2), (2, 0, 1), (2, 0, 1)])
    with pytest.raises(InvalidAction):
        validate_action(c3, good[:2])


def test_orbits_restricted_to_stabilizer():
    g, act = permutation_group([perm_from_cycles([(0, 1, 2)], 3),
                                perm_from_cycles([(0, 1)], 3)], 3)
    G = stabilizer(act, 0)
    assert orbits(act, G) == [(0,), (1, 2)]


def test_s3_table_matches_composition():
    perms = list(permutations(range(3)))
    g, act = permutation_group(perms, 3)
    for a in g.elements():
        for b in g.elements():
            pa, pb = act.images[a], act.images[b]
            assert act.images[g.mul(a, b)] == tuple(pa[x] for x in pb)
