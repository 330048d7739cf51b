import copy
import json
import time

import pytest

from brpic import catalog as cat
from brpic.errors import SchemaError, ValidationError


@pytest.fixture(scope="module")
def raw():
    with open(cat.default_catalog_path(), encoding="utf-8") as fh:
        data = json.load(fh)
    return data if isinstance(data, list) else data["entries"]


def _write(tmp_path, entries):
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(entries))
    return str(p)


def _entry(raw, eid):
    return copy.deepcopy(next(e for e in raw if e["id"] == eid))


def test_builtin_catalog_loads():
    entries = cat.catalog_load()
    assert len(entries) >= 7
    ids = {e.id for e in entries}
    assert {"Q_minus", "Q_plus", "Bim_C", "Vec_C_over_R", "Rep_R_Q8", "Z_Q_plus", "Z_Q_minus"} <= ids


def test_empty_file(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    assert cat.catalog_load(str(p)) == []


def test_broken_associativity_names_entry(tmp_path, raw):
    e = _entry(raw, "Q_minus")
    e["fusion"]["N"][1][1][0] = 3
    with pytest.raises(ValidationError) as info:
        cat.catalog_load(_write(tmp_path, [e]))
    assert info.value.entry_id == "Q_minus"
    assert "Q_minus" in str(info.value)


def test_duplicate_ids(tmp_path, raw):
    e = _entry(raw, "Vec_R")
    with pytest.raises(SchemaError):
        cat.catalog_load(_write(tmp_path, [e, e]))


def test_not_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(SchemaError):
        cat.catalog_load(str(p))


def test_default_report_passes_fast():
    t = time.perf_counter()
    report = cat.verify_paper()
    assert time.perf_counter() - t < 10
    failing = [c.line() for c in report.checks if not c.passed]
    assert report.passed, failing


def test_one_line_per_expectation():
    entries = cat.catalog_load()
    report = cat.verify_paper(entries)
    per_entry = [(c.entry, c.name) for c in report.checks if c.entry != "properties"]
    assert per_entry == [(e.id, k) for e in entries for k in e.expected]
    assert len(report.render().splitlines()) == len(report.checks) + 1


def test_fault_aut_br_z2(tmp_path, raw):
    e = _entry(raw, "Q_minus")
    e["sequence"]["aut_br"] = [2]
    report = cat.verify_paper(_write(tmp_path, [e]))
    bad = {c.name for c in report.checks if not c.passed}
    assert "brpic" in bad and not report.passed


def test_fault_jc_marked_braided(tmp_path, raw):
    e = _entry(raw, "Q_minus")
    e["expected"]["braided_cocycles"]["value"]["J^c"] = True
    report = cat.verify_paper(_write(tmp_path, [e]))
    assert [c.name for c in report.checks if not c.passed] == ["braided_cocycles"]


def test_unknown_key_fails_loudly(tmp_path, raw):
    e = _entry(raw, "Vec_R")
    e["expected"]["no_such_check"] = {"value": 1}
    report = cat.verify_paper(_write(tmp_path, [e]))
    line = next(c for c in report.checks if c.name == "no_such_check")
    assert not line.passed and line.line().startswith("FAIL")


def test_env_var_override(tmp_path, raw, monkeypatch):
    path = _write(tmp_path, [_entry(raw, "Vec_R")])
    monkeypatch.setenv(cat.ENV_VAR, path)
    assert [e.id for e in cat.catalog_load()] == ["Vec_R"]


def test_property_checks():
    assert cat.check_double_coset_sizes()
    assert cat.check_smith_identity(20)
    groups = cat._catalog_groups(cat.catalog_load())
    assert cat.check_dd_zero(groups)
