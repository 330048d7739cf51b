from itertools import product
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from brpic.abelian import AbelianGroup, Homomorphism
from brpic.cohomology import cohomology, trivial_module
from brpic.errors import (H3Obstruction, MalformedMap, NotDivisible,
                          UnknownPostnikovClass)
from brpic.fieldtable import COMPLEX
from brpic.fusion import algebra_profile
from brpic.groups import named_group
from brpic.seqkit import (UNDETERMINED, ExactSequenceInstance,
                          all_homomorphisms, classify_vecR_extensions,
                          count_Qminus_Z2_extensions, find_exact_realization,
                          sequence_from_json, solve_brpic, verify_exactness)


def test_solve_examples():
    qm = solve_brpic([2], [2, 2], [2], [2, 2], True)
    assert (qm.order, qm.iso_type) == (4, (2, 2)) and qm.br_part == 1
    qp = solve_brpic([2], [2], [2], [], True)
    assert (qp.order, qp.iso_type) == (2, (2,))
    vr = solve_brpic([], [], [2], [], True)
    assert vr.order == 2


def test_undetermined_extension():
    res = solve_brpic([], [], [2], [2], True)
    assert res.order == 4 and res.iso_type == UNDETERMINED


def test_not_divisible():
    with pytest.raises(NotDivisible):
        solve_brpic([4], [2], [2], [], True)
    with pytest.raises(NotDivisible):
        solve_brpic([], [3], [2], [], True)


def test_h3_obstruction_bounds():
    with pytest.raises(H3Obstruction) as info:
        solve_brpic([2], [2], [2], [2, 2], False)
    assert (info.value.lower, info.value.upper) == (2, 8)


def _seq(nodes, maps, **kw):
    return ExactSequenceInstance.build(nodes, maps, **kw)


def test_short_exact_sequence():
    # 0 -> Z/2 -> Z/4 -> Z/2 -> 0
    s = _seq([[2], [4], [2]], [[[2]], [[1]]], surjective_end=True)
    assert verify_exactness(s).exact


def test_failures_name_nodes():
    s = _seq([[2], [4], [2]], [[[0]], [[1]]], surjective_end=True)
    rep = verify_exactness(s)
    assert rep.failing_nodes() == ["A0", "A1"]
    assert rep.to_json()["exact"] is False


def test_map_validation():
    with pytest.raises(MalformedMap):
        _seq([[2], [4]], [[[1]]])          # order-2 generator to an order-4 element
    with pytest.raises(MalformedMap):
        _seq([[2], [2], [2]], [[[1]]])


def test_sequence_json_roundtrip():
    s = _seq([[2], [2, 2], [2], [2], [], []],
             [[[1], [0]], [[0, 1]], [[0]], [], []])
    again = sequence_from_json(s.to_json())
    assert again == s


def _brute_hom_count(a, b):
    return prod(gcd(d, e) for d in a for e in b)


@given(st.lists(st.sampled_from([2, 3, 4, 6]), max_size=2),
       st.lists(st.sampled_from([2, 3, 4]), max_size=2))
@settings(max_examples=40, deadline=None)
def test_homomorphism_count(a, b):
    homs = list(all_homomorphisms(AbelianGroup(a), AbelianGroup(b)))
    assert len(homs) == _brute_hom_count(a, b)
    assert len({h.matrix for h in homs}) == len(homs)


@pytest.mark.parametrize("nodes", [
    [[2], [2, 2], [2], [2, 2], [2, 2], []],
    [[2], [2], [2], [2], [], []],
    [[], [], [2], [2], [], []],
])
def test_realization_is_exact(nodes):
    inst = find_exact_realization(nodes)
    assert inst is not None and verify_exactness(inst).exact


def test_no_realization_when_orders_clash():
    # Z/2 cannot inject into the trivial group
    assert find_exact_realization([[2], [], [2]], surjective_end=True) is None


def _hom_to_z2(G):
    count = 0
    for f in product((0, 1), repeat=G.order):
        if all(f[G.mul(a, b)] == (f[a] + f[b]) % 2 for a in G.elements() for b in G.elements()):
            count += 1
    return count


@pytest.mark.parametrize("name", ["1", "C2", "C3", "V4", "S3"])
def test_classification_count(name):
    G = named_group(name)
    h3 = cohomology(G, trivial_module(G, 0, (2,)), 3).order
    recs = classify_vecR_extensions(G)
    assert len(recs) == _hom_to_z2(G) * h3
    assert len({(r.f, r.phi) for r in recs}) == len(recs)


def test_c2_quaternionic_records():
    recs = classify_vecR_extensions(named_group("C2"))
    quat = [r for r in recs if any(r.f)]
    assert len(recs) == 4 and len(quat) == 2
    for r in quat:
        assert r.fusion.N[1][1][0] == 4
        assert str(algebra_profile(r.fusion)) == "[R] + [H]"


def test_classify_refuses_other_fields():
    with pytest.raises(UnknownPostnikovClass):
        classify_vecR_extensions(named_group("C2"), COMPLEX)


def test_qminus_extension_count():
    assert count_Qminus_Z2_extensions() == 4
    assert count_Qminus_Z2_extensions(suppress_h3=True) == 2


def test_homomorphism_kernel_image():
    h = Homomorphism(AbelianGroup([4]), AbelianGroup([2]), [[1]])
    assert h.kernel() == [(0,), (2,)] and h.is_surjective() and not h.is_injective()
