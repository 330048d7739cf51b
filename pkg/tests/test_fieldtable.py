import pytest

from brpic.abelian import AbelianGroup, format_group, parse_factors, table_group_invariants
from brpic.errors import SchemaError, UnsupportedField
from brpic.fieldtable import (COMPLEX, NONTRIVIAL_UNKNOWN, REALS, brauer_group,
                              field_from_json, finite_field, gm_column, h1_gm,
                              h3_gm, h3_is_trivial, postnikov_k4_trivial)
from brpic.groups import named_group


def test_brauer_groups():
    assert brauer_group(REALS) == [2]
    assert brauer_group(COMPLEX) == []
    assert brauer_group(finite_field(9)) == []


def test_hilbert_90_and_h3():
    for f in (REALS, COMPLEX, finite_field(4)):
        assert h1_gm(f) == [] and h3_is_trivial(f)


def test_gm_column_reals():
    col = gm_column(REALS)
    assert col.h0 == "R^x" and col.h2 == (2,) and col.h3 == ()


@pytest.mark.parametrize("data", ["R", {"kind": "C"}, {"kind": {"Fq": 5}},
                                  {"kind": {"abstract": {"name": "Q_p", "br": [0], "h3": []}}}])
def test_field_json_roundtrip(data):
    f = field_from_json(data)
    assert field_from_json(f.to_json()) == f


def test_bad_fields():
    with pytest.raises(SchemaError):
        finite_field(6)
    with pytest.raises(SchemaError):
        field_from_json({"kind": "Q"})


def test_abstract_field_unknowns():
    f = field_from_json({"kind": {"abstract": {"name": "K", "h3": NONTRIVIAL_UNKNOWN}}})
    assert h3_gm(f) == NONTRIVIAL_UNKNOWN and not h3_is_trivial(f)
    with pytest.raises(UnsupportedField):
        brauer_group(f)
    assert not postnikov_k4_trivial(f)


def test_postnikov_known_for_reals():
    assert postnikov_k4_trivial(REALS)


@pytest.mark.parametrize("text, want", [("2,2", [2, 2]), ("2x3", [6]), ("trivial", []),
                                        ("Z/4 x Z/2", [2, 4]), ("", [])])
def test_parse_factors(text, want):
    assert parse_factors(text) == want


def test_format_group():
    assert format_group([2, 2, 2]) == "(Z/2)^3"
    assert format_group([], 1) == "Z"
    assert format_group([4], 2) == "Z^2 x Z/4"
    assert format_group([]) == "trivial"


@pytest.mark.parametrize("name, want", [("V4", [2, 2]), ("C4", [4]), ("C3", [3]), ("1", [])])
def test_table_group_invariants(name, want):
    assert list(table_group_invariants(named_group(name))) == want


def test_abelian_group_elements():
    A = AbelianGroup([2, 3])
    assert A.order == 6 and len(A.elements()) == 6 and A.is_cyclic()
    with pytest.raises(ValueError):
        AbelianGroup([0])
