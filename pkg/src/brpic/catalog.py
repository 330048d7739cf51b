"""Curated catalog of categories and scenarios, and the reproduction report.

Each catalog entry carries an ``expected`` map from check names to values
(with a short mathematical note).  ``verify_paper`` runs the registered
checker for every key and records one line per expectation; a key without
a checker is a failing line, never a silent skip.
"""

import json
import os
import random
from dataclasses import dataclass, field
from importlib import resources

from .cohomology import (cocycle_from_function, dd_is_zero,
                         cohomology, cohomology_class, is_cocycle,
                         is_symmetric_cocycle, pw_sign_identity_check,
                         pw_sign_terms, reduce_unit_coefficients,
                         trivial_module, unit_cohomology)
from .errors import BrpicError, SchemaError, ValidationError
from .fieldtable import COMPLEX, REALS, brauer_group, h3_is_trivial
from .fusion import (BrauerRingElement, aut_tensor_id, algebra_profile,
                     fpdim_is_multiplicative, fpdims, fusion_from_json,
                     invertible_objects, profile_twist, twist_obstruction,
                     validate_fusion_ring)
from .galois import (embeddings_from_json, factor_orbit_map,
                     faithfulness_check, grouped_idempotents,
                     lagrange_idempotents, polynomial_faithfulness,
                     scenario_from_json, tensor_unit_decomposition)
from .groups import (abelian_group, all_subgroups, double_coset, named_group,
                     symmetric_group)
from .seqkit import (classify_vecR_extensions, count_Qminus_Z2_extensions,
                     find_exact_realization, sequence_from_json, solve_brpic,
                     verify_exactness)
from .smith import matmul, smith_normal_form

ENV_VAR = "BRPIC_CATALOG"


def default_catalog_path():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return str(resources.files("brpic") / "data" / "catalog.json")


# -- entries ---------------------------------------------------------------

@dataclass(frozen=True)
class Expectation:
    value: object
    note: str = ""


@dataclass
class CatalogEntry:
    id: str
    description: str = ""
    fusion: object = None
    center: object = None
    cocycles: dict = field(default_factory=dict)      # name -> Cocycle on the grading group
    scenario: object = None
    embeddings: object = None
    sequence: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)      # name -> Expectation
    raw: dict = field(default_factory=dict, repr=False)

    def grading_group(self):
        if self.center is None or self.center.grading is None:
            return None
        return abelian_group(self.center.grading.group)


def _grade_element(group_factors, coords):
    """Index of a coordinate tuple in abelian_group(factors) (lexicographic)."""
    idx = 0
    for c, d in zip(coords, group_factors):
        idx = idx * d + c % d
    return idx


def _bilinear_cocycle(factors, B):
    """(x, y) -> x^T B y mod 2 on Z/d1 x ... x Z/dk."""
    from itertools import product
    elems = list(product(*(range(d) for d in factors)))
    grp = abelian_group(factors)

    def fn(a, b):
        x, y = elems[a], elems[b]
        return sum(x[i] * B[i][j] * y[j] for i in range(len(x)) for j in range(len(y))) % 2
    return cocycle_from_function(grp, 2, fn)


def _parse_entry(d):
    if not isinstance(d, dict) or "id" not in d:
        raise SchemaError("every catalog entry needs an 'id'")
    e = CatalogEntry(id=str(d["id"]), description=d.get("description", ""), raw=d)
    try:
        if d.get("fusion") is not None:
            e.fusion = validate_fusion_ring(fusion_from_json(d["fusion"]))
        if d.get("center") is not None:
            e.center = validate_fusion_ring(fusion_from_json(d["center"]))
            for name, spec in d["center"].get("cocycles", {}).items():
                if e.center.grading is None:
                    raise SchemaError("cocycles need a graded center")
                cyc = _bilinear_cocycle(e.center.grading.group, spec["bilinear"])
                grp = e.grading_group()
                if not is_cocycle(grp, trivial_module(grp, 0, (2,)), cyc):
                    raise SchemaError(f"{name} is not a 2-cocycle")
                e.cocycles[name] = cyc
        if d.get("galois") is not None:
            g = d["galois"]
            e.scenario = scenario_from_json(g["scenario"])
            if g.get("embeddings") is not None:
                e.embeddings = embeddings_from_json(g["embeddings"], e.scenario)
        seq = dict(d.get("sequence") or {})
        for key in ("instance", "fault"):
            if seq.get(key) is not None:
                seq[key] = sequence_from_json(seq[key])
        e.sequence = seq
        exp = d.get("expected", {})
        if not isinstance(exp, dict):
            raise SchemaError("'expected' must be an object")
        for k, v in exp.items():
            if isinstance(v, dict) and "value" in v:
                e.expected[k] = Expectation(v["value"], v.get("note", ""))
            else:
                e.expected[k] = Expectation(v)
    except SchemaError as exc:
        raise ValidationError(e.id, exc) from None
    except BrpicError as exc:
        raise ValidationError(e.id, exc) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(e.id, SchemaError(f"malformed entry: {exc!r}")) from None
    return e


def catalog_load(path=None):
    """Load and validate every entry; an empty file is an empty catalog."""
    path = path or default_catalog_path()
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        return []
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"catalog is not valid JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("entries")
    if not isinstance(data, list):
        raise SchemaError("catalog must be a list of entries or {'entries': [...]}")
    entries = [_parse_entry(d) for d in data]
    ids = [e.id for e in entries]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise SchemaError(f"duplicate entry ids {sorted(dup)}")
    return entries


def find_entry(entries, entry_id):
    for e in entries:
        if e.id == entry_id:
            return e
    raise SchemaError(f"no catalog entry {entry_id!r}")


# -- checkers --------------------------------------------------------------
#
# A checker maps (entry, expected value) to the computed value, already in
# a JSON-friendly form that is compared with == against the expectation.

CHECKERS = {}


def checker(name, compare=None):
    def deco(fn):
        CHECKERS[name] = (fn, compare)
        return fn
    return deco


def _need(obj, what):
    if obj is None:
        raise SchemaError(f"entry has no {what}")
    return obj


def _profile_eq(a, b):
    return BrauerRingElement.parse(str(a)) == BrauerRingElement.parse(str(b))


@checker("profile", _profile_eq)
def _(e, want):
    return str(algebra_profile(_need(e.fusion, "fusion data")))


@checker("profile_twist_H", _profile_eq)
def _(e, want):
    f = _need(e.fusion, "fusion data")
    return str(profile_twist(algebra_profile(f), "H", f.base_field))


@checker("profile_twist_C", _profile_eq)
def _(e, want):
    f = _need(e.fusion, "fusion data")
    return str(profile_twist(algebra_profile(f), "C", f.base_field))


@checker("twist_obstruction_H")
def _(e, want):
    return twist_obstruction(_need(e.fusion, "fusion data"), "H")


@checker("fpdims")
def _(e, want):
    return [str(d) for d in fpdims(_need(e.fusion, "fusion data"))]


@checker("fpdim_multiplicative")
def _(e, want):
    return fpdim_is_multiplicative(_need(e.fusion, "fusion data"))


def _inv_json(data):
    inv = invertible_objects(data)
    return {"labels": list(inv.labels), "group": list(inv.invariant_factors)}


@checker("invertible_objects")
def _(e, want):
    return _inv_json(_need(e.fusion, "fusion data"))


@checker("center_invertible_objects")
def _(e, want):
    return _inv_json(_need(e.center, "center"))


@checker("center_aut_tensor_id")
def _(e, want):
    return aut_tensor_id(_need(e.center, "center"))


@checker("tensorator_group")
def _(e, want):
    grp = _need(e.grading_group(), "graded center")
    return list(unit_cohomology(grp, e.center.base_field, 2).invariant_factors)


@checker("associator_torsor")
def _(e, want):
    f = _need(e.fusion, "fusion data")
    grp = abelian_group(_need(f.grading, "grading").group)
    return list(unit_cohomology(grp, f.base_field, 3).invariant_factors)


@checker("braided_cocycles")
def _(e, want):
    grp = _need(e.grading_group(), "graded center")
    return {name: is_symmetric_cocycle(c, grp) for name, c in sorted(e.cocycles.items())}


@checker("cocycle_basis")
def _(e, want):
    """The listed cocycles' classes span H^2 and are independent."""
    grp = _need(e.grading_group(), "graded center")
    m = trivial_module(grp, 0, (2,))
    h2 = cohomology(grp, m, 2)
    rows = [list(cohomology_class(grp, m, c)) for _, c in sorted(e.cocycles.items())]
    if not rows or any(d != 2 for d in h2.invariant_factors):
        return False
    # rank over F_2
    rows = [[x % 2 for x in r] for r in rows]
    rank, col = 0, 0
    ncol = len(rows[0])
    while rank < len(rows) and col < ncol:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is not None:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
            rank += 1
        col += 1
    return rank == len(rows) == len(h2.invariant_factors)


@checker("a_twist_end_label")
def _(e, want):
    """f^2 picks up the tensorator value on (M, M); a negative square makes
    End(1 x 1) contain a square root of -1, hence C."""
    spec = _need(e.raw.get("a_twist"), "a_twist data")
    c = e.center
    grades = [c.grading.grades[c.index(lab)] for lab in spec["objects"]]
    args = [_grade_element(c.grading.group, g) for g in grades]
    sign = -1 if e.cocycles[spec["cocycle"]](*args)[0] % 2 else 1
    return "C" if sign < 0 else "R"


def _brpic_inputs(e):
    seq = e.sequence
    fld = e.fusion.base_field if e.fusion is not None else REALS
    if e.center is not None:
        inv = list(invertible_objects(e.center).invariant_factors)
        aut_t = aut_tensor_id(e.center)
    else:
        inv = aut_t = []
    inv = seq.get("inv", inv)
    aut_t = seq.get("aut_t", aut_t)
    br = seq.get("br", brauer_group(fld))
    aut_br = seq["aut_br"]
    h3 = seq.get("h3_trivial", h3_is_trivial(fld))
    return inv, aut_t, br, aut_br, h3


@checker("brpic")
def _(e, want):
    res = solve_brpic(*_brpic_inputs(e))
    return res.to_json()


@checker("br_to_brpic_zero")
def _(e, want):
    return solve_brpic(*_brpic_inputs(e)).br_part == 1


@checker("exact")
def _(e, want):
    return verify_exactness(_need(e.sequence.get("instance"), "sequence instance")).exact


@checker("fault_failing_nodes")
def _(e, want):
    return verify_exactness(_need(e.sequence.get("fault"), "fault instance")).failing_nodes()


@checker("realization_exact")
def _(e, want):
    inv, aut_t, br, aut_br, h3 = _brpic_inputs(e)
    res = solve_brpic(inv, aut_t, br, aut_br, h3)
    inst = find_exact_realization([inv, aut_t, br, list(res.iso_type), aut_br, []])
    return inst is not None and verify_exactness(inst).exact


@checker("qminus_extension_count")
def _(e, want):
    return count_Qminus_Z2_extensions()


@checker("pw_sign_identity")
def _(e, want):
    return pw_sign_identity_check()


@checker("vecr_extension_counts")
def _(e, want):
    return {name: len(classify_vecR_extensions(named_group(name))) for name in sorted(want)}


@checker("vecr_quaternionic_skeleton")
def _(e, want):
    """Profiles and Y (x) Y multiplicities of the records with f nontrivial."""
    recs = classify_vecR_extensions(named_group(want["group"]))
    out = set()
    for r in recs:
        if not any(r.f):
            continue
        g = r.f.index(1)
        d = r.fusion
        out.add((str(algebra_profile(d)), d.N[g][d.dual[g]][d.unit]))
    if len(out) != 1:
        return {"group": want["group"], "profile": sorted(p for p, _ in out), "square": None}
    p, sq = out.pop()
    return {"group": want["group"], "profile": p, "square": sq}


@checker("galois_faithful")
def _(e, want):
    return faithfulness_check(_need(e.scenario, "scenario"), _need(e.embeddings, "embeddings")).faithful


@checker("fixed_field_degree")
def _(e, want):
    return faithfulness_check(e.scenario, _need(e.embeddings, "embeddings")).fixed_field_index


@checker("polynomial_faithfulness_agrees")
def _(e, want):
    a = faithfulness_check(e.scenario, e.embeddings).faithful
    return a == polynomial_faithfulness(e.scenario, e.embeddings)


@checker("tensor_unit_decomposition")
def _(e, want):
    return tensor_unit_decomposition(_need(e.scenario, "scenario"))


@checker("factor_orbit_map")
def _(e, want):
    return factor_orbit_map(_need(e.scenario, "scenario"))


@checker("idempotents_verified")
def _(e, want):
    # both functions raise on any violated identity
    lagrange_idempotents(_need(e.scenario, "scenario"))
    grouped_idempotents(e.scenario)
    return True


@checker("lagrange_idempotents")
def _(e, want):
    return [[c.to_json() for c in p.coeffs] for p in lagrange_idempotents(e.scenario)]


# -- global property checks ------------------------------------------------

def _catalog_groups(entries):
    groups = {"C2": named_group("C2")}
    for e in entries:
        if e.center is not None and e.center.grading is not None:
            groups[f"Z{list(e.center.grading.group)}"] = e.grading_group()
        if e.fusion is not None and e.fusion.grading is not None:
            groups[f"Z{list(e.fusion.grading.group)}"] = abelian_group(e.fusion.grading.group)
        if e.scenario is not None:
            groups[f"Gamma[{e.id}]"] = e.scenario.gamma
    return groups


def check_dd_zero(groups, max_degree=4):
    for grp in groups.values():
        modules = [trivial_module(grp, 0, (2,)), trivial_module(grp, 1),
                   reduce_unit_coefficients(REALS, 1, grp)]
        if grp.order > 1:
            modules.append(reduce_unit_coefficients(COMPLEX, 1, grp))
        for m in modules:
            for n in range(max_degree):
                if grp.order ** (n + 2) > 10 ** 5:
                    break
                if not dd_is_zero(n, grp, m):
                    return False
    return True


def random_integer_matrices(count=200, max_dim=8, bound=9, seed=20240601):
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
        yield [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def check_smith_identity(count=200):
    for A in random_integer_matrices(count):
        sf = smith_normal_form(A, len(A[0]))
        if matmul(matmul(sf.U, A), sf.V) != sf.D:
            return False
        diag = sf.diagonal
        for i in range(len(sf.D)):
            for j in range(len(sf.D[0])):
                if i != j and sf.D[i][j]:
                    return False
        nz = [d for d in diag if d]
        if diag != nz + [0] * (len(diag) - len(nz)):
            return False
        if any(d < 0 for d in nz) or any(b % a for a, b in zip(nz, nz[1:])):
            return False
    return True


def check_double_coset_sizes():
    G = symmetric_group(3)
    for H in all_subgroups(G):
        for g in G.elements():
            conj = {G.mul(G.mul(g, h), G.inv(g)) for h in H}
            inter = len(set(H) & conj)
            if len(double_coset(H, g, G)) * inter != H.order ** 2:
                return False
    return True


# -- report ----------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    entry: str
    name: str
    computed: object
    expected: object
    note: str
    passed: bool

    def to_json(self):
        return {"entry": self.entry, "check": self.name, "computed": self.computed,
                "expected": self.expected, "note": self.note, "passed": self.passed}

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        s = f"{status}  {self.entry}.{self.name}: computed {_fmt(self.computed)}"
        if not self.passed:
            s += f", expected {_fmt(self.expected)}"
        if self.note:
            s += f"  [{self.note}]"
        return s


def _fmt(v):
    return json.dumps(v, sort_keys=True) if not isinstance(v, str) else v


@dataclass(frozen=True)
class RunReport:
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def render(self):
        lines = [c.line() for c in self.checks]
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"{'OK' if self.passed else 'FAILED'}: {n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def run_check(entry, name, exp):
    if name not in CHECKERS:
        return CheckResult(entry.id, name, None, exp.value, exp.note, False)
    fn, compare = CHECKERS[name]
    try:
        got = fn(entry, exp.value)
    except BrpicError as exc:
        return CheckResult(entry.id, name, f"error: {exc.name}: {exc}", exp.value, exp.note, False)
    ok = compare(got, exp.value) if compare else got == exp.value
    return CheckResult(entry.id, name, got, exp.value, exp.note, bool(ok))


def verify_paper(catalog=None):
    """Run every catalog expectation plus the global property checks."""
    entries = catalog if isinstance(catalog, list) else catalog_load(catalog)
    results = []
    for e in entries:
        for name in e.expected:
            results.append(run_check(e, name, e.expected[name]))
    groups = _catalog_groups(entries)
    props = [
        ("pw_sign_terms_exhaustive", len(pw_sign_terms()) == 16 and pw_sign_identity_check(),
         "all 16 binary tuples give an even exponent"),
        ("bar_dd_zero_deg_le_4", check_dd_zero(groups), "d o d = 0 on catalog groups"),
        ("smith_reconstruction_200", check_smith_identity(), "U A V = D on 200 seeded matrices"),
        ("double_coset_sizes_S3", check_double_coset_sizes(),
         "|GgG| |G n gGg^-1| = |G|^2 on all subgroups of S3"),
    ]
    for name, ok, note in props:
        results.append(CheckResult("properties", name, ok, True, note, ok))
    return RunReport(tuple(results))
