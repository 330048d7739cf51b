"""Fusion rings whose simples carry endomorphism division-algebra labels.

``N[i][j][k]`` is the multiplicity of simple k in ``X_i (x) X_j``.  Over R
the labels are "R", "C", "H" with real dimensions 1, 2, 4.  Multiplicities
and endomorphism dimensions are tied together: Hom(X_i (x) X_j, X_k) has
real dimension ``N[i][j][k] * dim End(X_k)``, and moving X_j across to its
dual must not change that dimension.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import table_group_invariants
from .errors import (AssociativityFailure, DimensionBalanceFailure,
                     DualityFailure, GradingFailure, InvalidEndLabel,
                     MissingGrading, NonGroupClosure, SchemaError, UnitFailure,
                     UnsupportedField)
from .fieldtable import REALS, BaseField, field_from_json
from .groups import validate_group

REAL_LABELS = ("R", "C", "H")
REAL_DIMS = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class Grading:
    group: tuple                   # invariant factors of the grading group
    grades: tuple                  # per simple, coordinate tuple


@dataclass(frozen=True)
class FusionRingData:
    simples: tuple
    unit: int
    N: tuple
    dual: tuple
    ends: tuple
    base_field: BaseField = REALS
    grading: Grading = None
    split_unit: bool = True
    end_dims: tuple = None

    @property
    def rank(self):
        return len(self.simples)

    def index(self, label):
        return self.simples.index(label)

    def end_dim(self, i):
        if self.end_dims is not None:
            return self.end_dims[i]
        if self.base_field.kind == "R":
            return REAL_DIMS[self.ends[i]]
        if self.base_field.kind == "C":
            return 1
        return None

    def product(self, i, j):
        """X_i (x) X_j as a {k: multiplicity} dict."""
        return {k: c for k, c in enumerate(self.N[i][j]) if c}

    def to_json(self):
        d = {"base_field": self.base_field.to_json()["kind"],
             "simples": list(self.simples), "unit": self.unit,
             "N": [[list(r) for r in m] for m in self.N], "dual": list(self.dual),
             "ends": [list(e) if isinstance(e, tuple) else e for e in self.ends]}
        if self.grading is not None:
            d["grading"] = {"group": list(self.grading.group),
                            "grades": [list(g) for g in self.grading.grades]}
        if not self.split_unit:
            d["split_unit"] = False
        if self.end_dims is not None:
            d["end_dims"] = list(self.end_dims)
        return d


def _as_label(x):
    return tuple(x) if isinstance(x, list) else x


def fusion_from_json(data):
    try:
        fld = field_from_json(data.get("base_field", "R"))
        grading = None
        if data.get("grading") is not None:
            g = data["grading"]
            grading = Grading(tuple(g["group"]), tuple(tuple(x) for x in g["grades"]))
        return FusionRingData(
            simples=tuple(data["simples"]), unit=data.get("unit", 0),
            N=tuple(tuple(tuple(r) for r in m) for m in data["N"]),
            dual=tuple(data["dual"]), ends=tuple(_as_label(e) for e in data["ends"]),
            base_field=fld, grading=grading, split_unit=data.get("split_unit", True),
            end_dims=tuple(data["end_dims"]) if data.get("end_dims") else None)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed fusion data: {exc}") from None


def base_label(fld):
    if fld.kind in ("R", "C"):
        return fld.kind
    return ("K", "0")


def validate_fusion_ring(data):
    """Check shape, unit, duality, end labels, associativity, dimension
    balance and grading.  Returns the data unchanged or raises the first
    violated axiom."""
    n = data.rank
    if n == 0:
        raise SchemaError("no simple objects")
    if len(data.N) != n or any(len(m) != n or any(len(r) != n for r in m) for m in data.N):
        raise SchemaError(f"N must be {n}x{n}x{n}")
    for m in data.N:
        for r in m:
            for c in r:
                if not isinstance(c, int) or c < 0:
                    raise SchemaError(f"structure constant {c!r} is not a nonnegative integer")
    if len(data.dual) != n or len(data.ends) != n:
        raise SchemaError("dual and ends need one entry per simple")
    if data.end_dims is not None and len(data.end_dims) != n:
        raise SchemaError("end_dims needs one entry per simple")

    fld = data.base_field
    for i, e in enumerate(data.ends):
        if fld.kind == "R" and e not in REAL_LABELS:
            raise InvalidEndLabel(f"{e!r} is not a real division algebra label")
        if fld.kind == "C" and e != "C":
            raise InvalidEndLabel(f"{e!r}: every division algebra over C is C")
        if fld.kind in ("Fq", "abstract") and not (isinstance(e, tuple) and len(e) == 2):
            raise InvalidEndLabel(f"{e!r} must be a (center extension, Brauer class) pair")

    u = data.unit
    if not 0 <= u < n:
        raise UnitFailure(f"unit index {u} out of range")
    for j in range(n):
        for k in range(n):
            want = int(j == k)
            if data.N[u][j][k] != want or data.N[j][u][k] != want:
                raise UnitFailure(f"unit does not act trivially on simple {j}")
    if data.split_unit and data.ends[u] != base_label(fld):
        raise UnitFailure(f"End(unit) is {data.ends[u]!r}, not the base field")

    for i in range(n):
        di = data.dual[i]
        if not 0 <= di < n or data.dual[di] != i:
            raise DualityFailure(f"dual is not an involution at {i}")
        for j in range(n):
            if (data.N[i][j][u] > 0) != (j == di):
                raise DualityFailure(f"unit occurs in X_{i} (x) X_{j} iff j is the dual of {i}"
                                     f" fails")

    N = data.N
    for i in range(n):
        for j in range(n):
            Nij = N[i][j]
            for l in range(n):
                for m in range(n):
                    lhs = sum(Nij[k] * N[k][l][m] for k in range(n) if Nij[k])
                    rhs = sum(N[j][l][k] * N[i][k][m] for k in range(n) if N[j][l][k])
                    if lhs != rhs:
                        raise AssociativityFailure((i, j, l, m),
                                                   f"{lhs} != {rhs} copies of simple {m}")

    dims = [data.end_dim(i) for i in range(n)]
    if all(d is not None for d in dims):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    h = N[i][j][k] * dims[k]
                    right = N[k][data.dual[j]][i] * dims[i]
                    left = N[data.dual[i]][k][j] * dims[j]
                    if h != right or h != left:
                        raise DimensionBalanceFailure(
                            (i, j, k),
                            f"dim Hom(X_{i} X_{j}, X_{k}) = {h} but moving X_{j} across "
                            f"gives {right} and moving X_{i} across gives {left}")

    if data.grading is not None:
        gr = data.grading
        if len(gr.grades) != n:
            raise GradingFailure("need one grade per simple")
        for g in gr.grades:
            if len(g) != len(gr.group):
                raise GradingFailure(f"grade {g} has the wrong number of coordinates")
        add = lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, gr.group))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if N[i][j][k] and gr.grades[k] != add(gr.grades[i], gr.grades[j]):
                        raise GradingFailure(f"X_{k} in X_{i} (x) X_{j} has the wrong grade")
    return data


# -- Brauer ring over R ----------------------------------------------------

@dataclass(frozen=True)
class BrauerRingElement:
    terms: tuple            # sorted (label, multiplicity) pairs, multiplicity > 0

    @classmethod
    def from_counts(cls, counts):
        order = {lab: i for i, lab in enumerate(REAL_LABELS)}
        items = [(k, v) for k, v in counts.items() if v > 0]
        items.sort(key=lambda kv: (order.get(kv[0], len(order)), str(kv[0])))
        return cls(tuple(items))

    @classmethod
    def parse(cls, text):
        """Parse '4[R] + [H]'."""
        counts = Counter()
        for part in text.replace(" ", "").split("+"):
            if not part:
                continue
            mult, _, rest = part.partition("[")
            counts[rest.rstrip("]")] += int(mult) if mult else 1
        return cls.from_counts(counts)

    def counts(self):
        return dict(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join((f"{m}" if m != 1 else "") + f"[{lab}]" for lab, m in self.terms)


# product of classes in B(R): (result label, number of factors)
_REAL_PRODUCT = {
    ("R", "R"): ("R", 1), ("R", "C"): ("C", 1), ("R", "H"): ("H", 1),
    ("C", "R"): ("C", 1), ("C", "C"): ("C", 2), ("C", "H"): ("C", 1),
    ("H", "R"): ("H", 1), ("H", "C"): ("C", 1), ("H", "H"): ("R", 1),
}


def algebra_profile(data):
    """Multiset of endomorphism-algebra labels of the simples."""
    return BrauerRingElement.from_counts(Counter(data.ends))


def profile_twist(profile, D, base_field=REALS):
    """Multiply a profile by [D] in B(R), term by term.

    C (x)_R C splits as C x C, so C . C contributes two copies of C.
    """
    if base_field.kind != "R":
        raise UnsupportedField("Brauer ring products are only tabulated over R")
    if D not in REAL_LABELS:
        raise InvalidEndLabel(f"{D!r} is not a real division algebra label")
    out = Counter()
    for lab, m in profile.terms:
        res, k = _REAL_PRODUCT[(lab, D)]
        out[res] += m * k
    return BrauerRingElement.from_counts(out)


def twist_obstruction(data, D):
    """True when [D] certainly acts nontrivially on the bimodule (the profile
    moves); False means the profile test is inconclusive."""
    prof = algebra_profile(data)
    return profile_twist(prof, D, data.base_field) != prof


# -- invertible objects and Aut(id) ---------------------------------------

@dataclass(frozen=True)
class InvertibleObjects:
    labels: tuple
    indices: tuple
    table: tuple
    invariant_factors: tuple

    def to_json(self):
        return {"labels": list(self.labels), "invariant_factors": list(self.invariant_factors)}


def invertible_objects(data):
    """Simples X with X (x) X* = 1 exactly and split End(X), with the group
    structure induced by the fusion product."""
    u = data.unit
    base = base_label(data.base_field) if data.base_field.kind != "abstract" else None
    inv = []
    for i in range(data.rank):
        di = data.dual[i]
        if data.product(i, di) != {u: 1}:
            continue
        if base is not None and data.ends[i] != base:
            continue
        if base is None and data.ends[i] != data.ends[u]:
            continue
        inv.append(i)
    pos = {x: a for a, x in enumerate(inv)}
    table = []
    for i in inv:
        row = []
        for j in inv:
            prod_ = data.product(i, j)
            if len(prod_) != 1 or list(prod_.values())[0] != 1 or list(prod_)[0] not in pos:
                raise NonGroupClosure(f"X_{i} (x) X_{j} is not a single invertible simple")
            row.append(pos[list(prod_)[0]])
        table.append(row)
    g = validate_group(table, [data.simples[i] for i in inv])
    if not g.is_abelian():
        raise NonGroupClosure("invertible objects do not commute")
    return InvertibleObjects(tuple(data.simples[i] for i in inv), tuple(inv),
                             g.table, tuple(table_group_invariants(g)))


def aut_tensor_id(data):
    """Invariant factors of Hom(grading group, Z/2): the torsion of R^x is {+-1}."""
    if data.base_field.kind != "R":
        raise UnsupportedField("Aut_tensor(id) is only computed over R")
    if data.grading is None:
        raise MissingGrading("no grading group supplied")
    twos = sum(1 for d in data.grading.group if d % 2 == 0)
    return [2] * twos


# -- Frobenius-Perron dimensions ------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    @property
    def exact(self):
        return self.lo == self.hi

    def __mul__(self, other):
        c = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return RationalInterval(min(c), max(c))

    def __add__(self, other):
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, k):
        return RationalInterval(self.lo * k, self.hi * k)

    def overlaps(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def __str__(self):
        return str(self.lo) if self.exact else f"[{self.lo}, {self.hi}]"


def fusion_matrix(data, i):
    """Left multiplication by X_i: entry (k, j) = N[i][j][k]."""
    n = data.rank
    return [[data.N[i][j][k] for j in range(n)] for k in range(n)]


def perron_root(matrix, width=Fraction(1, 10 ** 12)):
    """Largest real eigenvalue of a nonnegative integer matrix, as an exact
    rational point or a certified interval of the given width."""
    import sympy

    M = sympy.Matrix(matrix)
    t = sympy.Symbol("t")
    poly = sympy.Poly(M.charpoly(t).as_expr(), t)
    intervals = poly.intervals(eps=sympy.Rational(width.numerator, width.denominator))
    (lo, hi), _ = max(intervals, key=lambda iv: iv[0][1])
    return RationalInterval(Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q)))


def fpdims(data):
    return [perron_root(fusion_matrix(data, i)) for i in range(data.rank)]


def fpdim_is_multiplicative(data, dims=None):
    dims = dims or fpdims(data)
    for i in range(data.rank):
        for j in range(data.rank):
            lhs = dims[i] * dims[j]
            rhs = RationalInterval(Fraction(0), Fraction(0))
            for k, c in data.product(i, j).items():
                rhs = rhs + dims[k].scale(c)
            if not lhs.overlaps(rhs):
                return False
            if lhs.exact and rhs.exact and lhs.lo != rhs.lo:
                return False
    return True


def relabel(data, order):
    """Reorder simples: new simple a is old simple order[a]."""
    pos = {old: new for new, old in enumerate(order)}
    n = data.rank
    N = tuple(tuple(tuple(data.N[order[a]][order[b]][order[c]] for c in range(n))
                    for b in range(n)) for a in range(n))
    grading = None
    if data.grading is not None:
        grading = Grading(data.grading.group, tuple(data.grading.grades[o] for o in order))
    return FusionRingData(
        simples=tuple(data.simples[o] for o in order), unit=pos[data.unit], N=N,
        dual=tuple(pos[data.dual[o]] for o in order), ends=tuple(data.ends[o] for o in order),
        base_field=data.base_field, grading=grading, split_unit=data.split_unit,
        end_dims=tuple(data.end_dims[o] for o in order) if data.end_dims else None)


def pointed_ring(group, ends=None, f=None, base_field=REALS, labels=None):
    """X_g (x) X_h = 4^(f(g) f(h)) X_gh with End(X_g) = H where f(g) = 1."""
    n = group.order
    f = f or [0] * n
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for g in group.elements():
        for h in group.elements():
            N[g][h][group.mul(g, h)] = 4 ** (f[g] * f[h])
    ends = ends or tuple("H" if f[g] else "R" for g in group.elements())
    labels = labels or tuple(f"X_{group.label(g)}" for g in group.elements())
    return FusionRingData(tuple(labels), 0, tuple(tuple(tuple(r) for r in m) for m in N),
                          tuple(group.inv(g) for g in group.elements()), tuple(ends),
                          base_field)
