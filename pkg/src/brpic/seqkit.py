"""Exact sequences of finite abelian groups, order chasing for BrPic, and
the classification of graded extensions of Vec_R.

The sequence handled here is

    Inv(Z) -> Aut_tensor(Id) -> Br(K) -> BrPic(C) -> Aut_br(Z) -> H^3(K; G_m)

with every node a finite abelian group given by invariant factors.
"""

from dataclasses import dataclass, field
from itertools import product
from math import prod

from .abelian import AbelianGroup, Homomorphism, format_group
from .cohomology import (cocycle_representatives, cohomology,
                         pw_sign_identity_check, trivial_module)
from .errors import (H3Obstruction, MalformedMap, NotACocycle, NotDivisible,
                     SchemaError, TooLarge, UnknownPostnikovClass)
from .fieldtable import REALS, postnikov_k4_trivial
from .fusion import algebra_profile, pointed_ring, validate_fusion_ring

UNKNOWN = "UNKNOWN"
UNDETERMINED = "UNDETERMINED"
ENUMERATION_BOUND = 10 ** 4
SEQUENCE_NAMES = ("Inv", "Aut_tensor", "Br", "BrPic", "Aut_br", "H3")


def _as_group(x):
    if x is None or x == UNKNOWN:
        return None
    return x if isinstance(x, AbelianGroup) else AbelianGroup(tuple(x))


@dataclass(frozen=True)
class ExactSequenceInstance:
    nodes: tuple                   # AbelianGroup or None for an unknown node
    maps: tuple                    # Homomorphism nodes[i] -> nodes[i+1], or None
    names: tuple = ()
    left_exact_start: bool = True
    surjective_end: bool = False

    @classmethod
    def build(cls, nodes, maps, names=(), left_exact_start=True, surjective_end=False):
        groups = [_as_group(n) for n in nodes]
        if len(maps) != len(groups) - 1:
            raise MalformedMap(f"{len(groups)} nodes need {len(groups) - 1} maps")
        homs = []
        for i, m in enumerate(maps):
            if groups[i] is None or groups[i + 1] is None:
                homs.append(None)
            elif isinstance(m, Homomorphism):
                homs.append(m)
            elif m is None:
                raise MalformedMap(f"map {i} between known nodes is missing")
            else:
                homs.append(Homomorphism(groups[i], groups[i + 1], m))
        if not names:
            names = SEQUENCE_NAMES if len(groups) == 6 else [f"A{i}" for i in range(len(groups))]
        names = tuple(names)
        return cls(tuple(groups), tuple(homs), names, left_exact_start, surjective_end)

    def to_json(self):
        return {"nodes": [UNKNOWN if g is None else list(g.factors) for g in self.nodes],
                "maps": [None if m is None else [list(r) for r in m.matrix] for m in self.maps],
                "names": list(self.names), "left_exact_start": self.left_exact_start,
                "surjective_end": self.surjective_end}


def sequence_from_json(data):
    try:
        return ExactSequenceInstance.build(
            data["nodes"], data["maps"], data.get("names", ()),
            data.get("left_exact_start", True), data.get("surjective_end", False))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed sequence: {exc}") from None


@dataclass(frozen=True)
class NodeCheck:
    index: int
    name: str
    passed: bool
    witness: tuple = None          # offending element on failure
    detail: str = ""


@dataclass(frozen=True)
class ExactnessReport:
    checks: tuple

    @property
    def exact(self):
        return all(c.passed for c in self.checks)

    def failing_nodes(self):
        return [c.name for c in self.checks if not c.passed]

    def to_json(self):
        return {"exact": self.exact,
                "checks": [{"node": c.name, "index": c.index, "passed": c.passed,
                            "witness": None if c.witness is None else list(c.witness),
                            "detail": c.detail} for c in self.checks]}


def verify_exactness(seq):
    """Compare image and kernel at each interior node by enumeration."""
    for g in seq.nodes:
        if g is None:
            raise MalformedMap("cannot check exactness across an unknown node")
        if g.order > ENUMERATION_BOUND:
            raise TooLarge(f"node of order {g.order} exceeds {ENUMERATION_BOUND}")
    checks = []
    if seq.left_exact_start and seq.maps:
        ker = seq.maps[0].kernel()
        bad = next((x for x in ker if any(x)), None)
        checks.append(NodeCheck(0, seq.names[0], bad is None, bad,
                                "" if bad is None else "first map is not injective"))
    for i in range(1, len(seq.nodes) - 1):
        im = set(seq.maps[i - 1].image())
        ker = set(seq.maps[i].kernel())
        extra = sorted(im - ker)
        missing = sorted(ker - im)
        if extra:
            checks.append(NodeCheck(i, seq.names[i], False, extra[0],
                                    "image element not in the kernel"))
        elif missing:
            checks.append(NodeCheck(i, seq.names[i], False, missing[0],
                                    "kernel element not in the image"))
        else:
            checks.append(NodeCheck(i, seq.names[i], True))
    if seq.surjective_end and seq.maps:
        last = seq.maps[-1]
        im = set(last.image())
        bad = next((y for y in last.target.elements() if y not in im), None)
        checks.append(NodeCheck(len(seq.nodes) - 1, seq.names[-1], bad is None, bad,
                                "" if bad is None else "last map is not surjective"))
    return ExactnessReport(tuple(checks))


# -- order chase -----------------------------------------------------------

@dataclass(frozen=True)
class BrPicResult:
    order: int
    iso_type: object               # tuple of invariant factors or UNDETERMINED
    br_part: int                   # |Br / im(Aut_tensor)|, the kernel of BrPic -> Aut_br
    aut_br_part: int

    def __str__(self):
        t = self.iso_type if self.iso_type == UNDETERMINED else format_group(self.iso_type)
        return f"order {self.order}, type {t}"

    def to_json(self):
        return {"order": self.order,
                "iso_type": self.iso_type if self.iso_type == UNDETERMINED
                else list(self.iso_type)}


def _squarefree(n):
    return all(n % (p * p) for p in range(2, int(n ** 0.5) + 1))


def solve_brpic(inv, aut_t, br, aut_br, h3_trivial):
    """Order (and when forced, isomorphism type) of BrPic from its neighbours.

    Exactness gives |im(Aut_t -> Br)| = |aut_t| / |inv|, so the part of
    BrPic coming from Br has order |br| |inv| / |aut_t|; when H^3 vanishes
    BrPic surjects onto Aut_br.
    """
    inv, aut_t, br, aut_br = (_as_group(x) for x in (inv, aut_t, br, aut_br))
    if aut_t.order % inv.order:
        raise NotDivisible(f"|Inv| = {inv.order} does not divide |Aut_tensor| = {aut_t.order}")
    im = aut_t.order // inv.order
    if br.order % im:
        raise NotDivisible(f"image of order {im} does not fit in Br of order {br.order}")
    br_part = br.order // im
    if not h3_trivial:
        raise H3Obstruction(br_part, br_part * aut_br.order)
    order = br_part * aut_br.order
    if br_part == 1:
        iso = tuple(aut_br.invariants())
    elif aut_br.order == 1:
        if im == 1:
            iso = tuple(br.invariants())
        elif br.is_cyclic() or _squarefree(br_part):
            iso = (br_part,)
        else:
            iso = UNDETERMINED
    else:
        iso = UNDETERMINED
    return BrPicResult(order, iso, br_part, aut_br.order)


# -- exhaustive realization ------------------------------------------------

def all_homomorphisms(source, target):
    """Every homomorphism, one matrix per choice of generator images."""
    choices = []
    for d in source.factors:
        choices.append([y for y in target.elements()
                        if all((d * c) % e == 0 for c, e in zip(y, target.factors))])
    for imgs in product(*choices):
        matrix = tuple(tuple(imgs[j][i] for j in range(source.rank))
                       for i in range(target.rank))
        yield Homomorphism(source, target, matrix)


def find_exact_realization(nodes, names=(), surjective_end=True, bound=10 ** 5):
    """Search for maps making ``nodes`` an exact sequence with an injective
    first map.  Returns an ExactSequenceInstance or None."""
    groups = [_as_group(n) for n in nodes]
    budget = [bound]

    def extend(i, maps):
        if i == len(groups) - 1:
            if surjective_end and maps and not maps[-1].is_surjective():
                return None
            return maps
        for h in all_homomorphisms(groups[i], groups[i + 1]):
            budget[0] -= 1
            if budget[0] < 0:
                raise TooLarge("realization search exceeded its budget")
            ker = set(h.kernel())
            if i == 0:
                ok = ker == {groups[0].zero()}
            else:
                ok = ker == set(maps[-1].image())
            if ok:
                found = extend(i + 1, maps + [h])
                if found is not None:
                    return found
        return None

    maps = extend(0, [])
    if maps is None:
        return None
    return ExactSequenceInstance.build(groups, maps, names, True, surjective_end)


# -- graded extensions of Vec_R -------------------------------------------

@dataclass(frozen=True)
class ExtensionRecord:
    f: tuple                       # f(g) in {0, 1} per group element
    phi: tuple                     # class coordinates in H^3(G; Z/2)
    fusion: object

    def to_json(self):
        return {"f": list(self.f), "phi": list(self.phi),
                "profile": str(algebra_profile(self.fusion)),
                "fusion": self.fusion.to_json()}


def classify_vecR_extensions(group, field=REALS):
    """One record per pair (f in Hom(G, Z/2), phi in H^3(G; Z/2)).

    X_g has End = H exactly when f(g) = 1, and X_g (x) X_h = 4^(f(g) f(h)) X_gh.
    """
    if field.kind != "R" or not postnikov_k4_trivial(field):
        raise UnknownPostnikovClass(f"no splitting of the classifying space known over {field}")
    z2 = trivial_module(group, 0, (2,), "Z/2")
    homs = cocycle_representatives(group, z2, 1)
    h3 = cohomology(group, z2, 3)
    phis = list(product(*(range(d) for d in h3.invariant_factors)))
    out = []
    for hom in homs:
        f = tuple(hom.values[(g,)][0] % 2 for g in group.elements())
        data = validate_fusion_ring(pointed_ring(group, f=f, base_field=field))
        for phi in phis:
            out.append(ExtensionRecord(f, phi, data))
    return out


def count_Qminus_Z2_extensions(suppress_h3=False):
    """Z/2-graded extensions of Q_- by torsors: H^2(Z/2; Z/2) for the
    tensorators times H^3(Z/2; Z/2) for the associators, once the
    obstruction in degree four is known to vanish."""
    from .groups import cyclic_group

    if not pw_sign_identity_check():
        raise NotACocycle("the degree-four obstruction does not vanish")
    g = cyclic_group(2)
    z2 = trivial_module(g, 0, (2,), "Z/2")
    n = cohomology(g, z2, 2).order
    if not suppress_h3:
        n *= cohomology(g, z2, 3).order
    return n
