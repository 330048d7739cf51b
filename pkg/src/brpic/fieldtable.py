"""Curated Galois-cohomology invariants H^n(K; G_m) of supported base fields.

Nothing here is computed: every value is a table fact with a short note
on why it holds.
"""

from dataclasses import dataclass, field

from .errors import SchemaError, UnsupportedField

NONTRIVIAL_UNKNOWN = "nontrivial-unknown"


def _is_prime_power(q):
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@dataclass(frozen=True)
class BaseField:
    kind: str                      # "R", "C", "Fq", "abstract"
    q: int = None
    name: str = None
    br: tuple = None               # invariant factors, abstract fields only
    h3: object = None              # tuple of factors or NONTRIVIAL_UNKNOWN
    postnikov_k4_trivial: bool = None

    def __post_init__(self):
        if self.kind not in ("R", "C", "Fq", "abstract"):
            raise SchemaError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fq" and not (isinstance(self.q, int) and _is_prime_power(self.q)):
            raise SchemaError(f"finite field order {self.q!r} is not a prime power")
        if self.kind == "abstract" and not self.name:
            raise SchemaError("abstract field needs a name")

    @property
    def label(self):
        if self.kind == "Fq":
            return f"F{self.q}"
        if self.kind == "abstract":
            return self.name
        return self.kind

    def __str__(self):
        return self.label

    def to_json(self):
        if self.kind in ("R", "C"):
            return {"kind": self.kind}
        if self.kind == "Fq":
            return {"kind": {"Fq": self.q}}
        d = {"name": self.name}
        if self.br is not None:
            d["br"] = list(self.br)
        if self.h3 is not None:
            d["h3"] = self.h3 if self.h3 == NONTRIVIAL_UNKNOWN else list(self.h3)
        return {"kind": {"abstract": d}}


REALS = BaseField("R")
COMPLEX = BaseField("C")


def finite_field(q):
    return BaseField("Fq", q=q)


def field_from_json(data):
    """Accepts "R", {"kind": "R"}, {"kind": {"Fq": 5}} or
    {"kind": {"abstract": {"name": ..., "br": [...], "h3": [...] | "nontrivial-unknown"}}}."""
    if isinstance(data, str):
        data = {"kind": data}
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError(f"bad field descriptor {data!r}")
    kind = data["kind"]
    if kind in ("R", "C"):
        return BaseField(kind)
    if isinstance(kind, dict) and "Fq" in kind:
        return finite_field(kind["Fq"])
    if isinstance(kind, dict) and "abstract" in kind:
        a = kind["abstract"]
        h3 = a.get("h3")
        if isinstance(h3, list):
            h3 = tuple(h3)
        br = a.get("br")
        return BaseField("abstract", name=a.get("name"),
                         br=tuple(br) if br is not None else None, h3=h3,
                         postnikov_k4_trivial=a.get("postnikov_k4_trivial"))
    raise SchemaError(f"bad field kind {kind!r}")


@dataclass(frozen=True)
class TableEntry:
    value: object
    note: str


@dataclass(frozen=True)
class GmColumn:
    h0: str
    h1: tuple = field(default=())
    h2: tuple = ()
    h3: object = ()


# Br(R) is generated by the class of the quaternions.  Br(C) vanishes since
# C is algebraically closed.  Finite division rings are commutative
# (Wedderburn), so Br(F_q) vanishes.
_BRAUER = {
    "R": TableEntry((2,), "Br(R) = Z/2, generated by [H]"),
    "C": TableEntry((), "algebraically closed"),
    "Fq": TableEntry((), "Wedderburn: finite division rings are fields"),
}

_H3 = {
    "R": TableEntry((), "H^3(Gal(C/R); C^x) = 0 by periodicity: S^1/S^1"),
    "C": TableEntry((), "algebraically closed"),
    "Fq": TableEntry((), "absolute Galois group has cohomological dimension 1"),
}


def brauer_group(field):
    """Invariant factors of Br(K)."""
    if field.kind == "abstract":
        if field.br is None:
            raise UnsupportedField(f"no Brauer group supplied for {field.name}")
        from .smith import canonical_factors
        return canonical_factors(field.br)
    return list(_BRAUER[field.kind].value)


def brauer_note(field):
    if field.kind == "abstract":
        return "supplied by caller"
    return _BRAUER[field.kind].note


def h1_gm(field):
    """Always trivial (Hilbert 90)."""
    return []


def h3_gm(field):
    """Invariant factors of H^3(K; G_m), or NONTRIVIAL_UNKNOWN."""
    if field.kind == "abstract":
        if field.h3 is None:
            raise UnsupportedField(f"no H^3 data supplied for {field.name}")
        if field.h3 == NONTRIVIAL_UNKNOWN:
            return NONTRIVIAL_UNKNOWN
        from .smith import canonical_factors
        return canonical_factors(field.h3)
    return list(_H3[field.kind].value)


def h3_is_trivial(field):
    v = h3_gm(field)
    return v != NONTRIVIAL_UNKNOWN and not v


def h0_description(field):
    return {"R": "R^x", "C": "C^x"}.get(field.kind, f"{field.label}^x")


def gm_column(field):
    return GmColumn(h0=h0_description(field), h1=tuple(h1_gm(field)),
                    h2=tuple(brauer_group(field)),
                    h3=h3_gm(field) if h3_gm(field) == NONTRIVIAL_UNKNOWN
                    else tuple(h3_gm(field)))


def postnikov_k4_trivial(field):
    """Whether the k-invariant of BrPic(Vec_K) is known to vanish.

    Known for R because graded extensions of Vec_R with a quaternionic
    component exist (the Tambara-Yamagami real forms Q_+ and Q_-); for C it
    holds trivially since Br(C) = 0.
    """
    if field.kind in ("R", "C"):
        return True
    if field.kind == "Fq":
        return True
    return bool(field.postnikov_k4_trivial)


# C(x, y, z) has nontrivial H^3(K; G_m); the group itself is not tabulated.
RATIONAL_FUNCTIONS_C3 = BaseField("abstract", name="C(x,y,z)", h3=NONTRIVIAL_UNKNOWN)
