import copy
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from brpic.errors import (AssociativityFailure, DimensionBalanceFailure,
                          DualityFailure, GradingFailure, InvalidEndLabel,
                          MissingGrading, SchemaError, UnitFailure,
                          UnsupportedField)
from brpic.fieldtable import COMPLEX
from brpic.fusion import (BrauerRingElement, FusionRingData, algebra_profile,
                          aut_tensor_id, fpdim_is_multiplicative, fpdims,
                          fusion_from_json, invertible_objects, perron_root,
                          pointed_ring, profile_twist, relabel,
                          twist_obstruction, validate_fusion_ring)
from brpic.groups import named_group

SAMPLES = ["q_minus.json", "z_q_minus.json", "z_q_plus.json", "rep_r_q8.json"]


@pytest.fixture(params=SAMPLES)
def ring(request, sample):
    return validate_fusion_ring(fusion_from_json(sample(request.param)))


def _load(sample, name, edit=None):
    d = copy.deepcopy(sample(name))
    if edit:
        edit(d)
    return validate_fusion_ring(fusion_from_json(d))


def test_samples_validate(ring):
    assert ring.N[ring.unit][ring.unit][ring.unit] == 1


def test_y_squared_three_fails(sample):
    def edit(d):
        d["N"][1][1][0] = 3
    with pytest.raises(DimensionBalanceFailure):
        _load(sample, "q_minus.json", edit)


@pytest.mark.parametrize("edit, err", [
    (lambda d: d.__setitem__("ends", ["R", "Q"]), InvalidEndLabel),
    (lambda d: d.__setitem__("ends", ["H", "H"]), UnitFailure),
    (lambda d: d.__setitem__("dual", [0, 0]), DualityFailure),
    (lambda d: d["N"][0][1].__setitem__(1, 2), UnitFailure),
    (lambda d: d["N"][1][1].__setitem__(1, 1), GradingFailure),
    (lambda d: d["N"][1].pop(), SchemaError),
    (lambda d: d.pop("simples"), SchemaError),
])
def test_axiom_violations(sample, edit, err):
    with pytest.raises(err):
        _load(sample, "q_minus.json", edit)


def test_plain_associativity_failure():
    N = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
         [[0, 1, 0], [0, 1, 1], [2, 0, 2]],
         [[0, 0, 1], [1, 1, 2], [0, 2, 0]]]
    d = FusionRingData(("1", "a", "b"), 0, tuple(tuple(map(tuple, m)) for m in N),
                       (0, 2, 1), ("R", "R", "R"))
    with pytest.raises(AssociativityFailure) as info:
        validate_fusion_ring(d)
    assert not isinstance(info.value, DimensionBalanceFailure)


def test_profiles(sample):
    q8 = _load(sample, "rep_r_q8.json")
    prof = algebra_profile(q8)
    assert str(prof) == "4[R] + [H]"
    assert profile_twist(prof, "H") == BrauerRingElement.parse("4[H] + [R]")
    assert twist_obstruction(q8, "H")
    for name in ("q_minus.json",):
        q = _load(sample, name)
        p = algebra_profile(q)
        assert p == BrauerRingElement.parse("[R] + [H]")
        assert profile_twist(p, "H") == p
        assert not twist_obstruction(q, "H")
    assert str(algebra_profile(_load(sample, "z_q_plus.json"))) == "2[R] + [C]"


def test_brauer_products():
    one = lambda lab: BrauerRingElement.parse(f"[{lab}]")
    assert str(profile_twist(one("C"), "C")) == "2[C]"
    assert str(profile_twist(one("C"), "H")) == "[C]"
    assert str(profile_twist(one("H"), "H")) == "[R]"
    assert str(profile_twist(BrauerRingElement.parse("[R] + [C]"), "C")) == "3[C]"
    with pytest.raises(UnsupportedField):
        profile_twist(one("C"), "H", COMPLEX)
    with pytest.raises(InvalidEndLabel):
        profile_twist(one("R"), "O")


profiles = st.builds(lambda r, c, h: BrauerRingElement.from_counts({"R": r, "C": c, "H": h}),
                     st.integers(0, 9), st.integers(0, 9), st.integers(0, 9))


@given(profiles)
def test_h_twist_is_an_involution(p):
    assert profile_twist(profile_twist(p, "H"), "H") == p
    assert profile_twist(p, "R") == p


@given(profiles)
def test_parse_roundtrip(p):
    assert BrauerRingElement.parse(str(p)) == p


def test_relabel_invariance(ring):
    base = (algebra_profile(ring), sorted(map(str, fpdims(ring))),
            invertible_objects(ring).invariant_factors)
    for order in permutations(range(ring.rank)):
        r = validate_fusion_ring(relabel(ring, list(order)))
        assert (algebra_profile(r), sorted(map(str, fpdims(r))),
                invertible_objects(r).invariant_factors) == base


def test_invertibles_closed(ring):
    inv = invertible_objects(ring)
    idx = set(inv.indices)
    for i in idx:
        assert ring.dual[i] in idx
        for j in idx:
            (k, m), = ring.product(i, j).items()
            assert m == 1 and k in idx


def test_invertible_groups(sample):
    q8 = invertible_objects(_load(sample, "rep_r_q8.json"))
    assert q8.labels == ("1", "a", "b", "ab") and q8.invariant_factors == (2, 2)
    zq = invertible_objects(_load(sample, "z_q_minus.json"))
    assert zq.labels == ("1", "M") and zq.invariant_factors == (2,)


def test_fpdims(ring):
    dims = fpdims(ring)
    assert all(d.lo >= 1 for d in dims)
    assert all(d.hi - d.lo <= Fraction(1, 10 ** 12) for d in dims)
    assert fpdim_is_multiplicative(ring, dims)


def test_fpdim_exact_values(sample):
    assert [str(d) for d in fpdims(_load(sample, "q_minus.json"))] == ["1", "2"]
    assert [str(d) for d in fpdims(_load(sample, "z_q_plus.json"))] == ["1", "1", "2"]


def test_irrational_perron_root():
    # Fibonacci matrix, root (1 + sqrt 5) / 2
    iv = perron_root([[0, 1], [1, 1]])
    assert not iv.exact
    assert iv.lo * iv.lo - iv.lo - 1 <= 0 <= iv.hi * iv.hi - iv.hi - 1


def test_aut_tensor_id(sample):
    assert aut_tensor_id(_load(sample, "z_q_minus.json")) == [2, 2]
    assert aut_tensor_id(_load(sample, "z_q_plus.json")) == [2]
    with pytest.raises(MissingGrading):
        aut_tensor_id(_load(sample, "q_minus.json", lambda d: d.pop("grading")))


def test_pointed_ring_quaternionic():
    d = validate_fusion_ring(pointed_ring(named_group("C2"), f=[0, 1]))
    assert d.N[1][1][0] == 4 and str(algebra_profile(d)) == "[R] + [H]"
    assert fusion_from_json(d.to_json()) == d
