"""Splitting-field scenarios and the double-coset faithfulness criterion.

A scenario has two layers.  The group layer (Gamma, its action on the
conjugates of theta, the distinguished root) decides everything about
faithfulness.  The optional concrete layer realizes the splitting field as
Q[x]/(m) and lets the Lagrange idempotents be computed and checked exactly.
"""

from dataclasses import dataclass
from itertools import product

from .errors import (ClosureFailure, CoefficientNotFixed, InvalidScenario,
                     RepeatedRoot)
from .groups import (GroupAction, Subgroup, double_coset_union_closure,
                     group_from_json, is_transitive, orbits, stabilizer,
                     validate_action)
from .numberfield import (NumberField, Poly, rational_poly_eval,
                          solve_rational, to_fraction)


@dataclass(frozen=True)
class ConcreteLayer:
    field: NumberField
    roots: tuple
    f: tuple                       # rational coefficients, ascending
    generator_images: tuple        # image of the field generator, per element of Gamma

    def apply(self, g, a):
        """Apply the automorphism for group element g to a field element."""
        return a.substitute(self.generator_images[g])


@dataclass(frozen=True)
class GaloisScenario:
    gamma: object
    root_action: GroupAction
    theta_index: int = 0
    concrete: ConcreteLayer = None
    name: str = ""

    @property
    def n_roots(self):
        return self.root_action.set_size

    def root_of(self, g):
        """Index i with g(theta) = theta_i."""
        return self.root_action.images[g][self.theta_index]


@dataclass(frozen=True)
class EmbeddingData:
    objects: tuple                 # (label, rho) pairs in input order
    unit: str = None

    def rhos(self):
        return [r for _, r in self.objects]


def _span_monomials(field, roots, target_rank):
    """Monomials in the roots whose values form a Q-basis of the field."""
    n = len(roots)
    basis_rows = {}            # pivot -> reduced row
    chosen = []
    powers = [[field.one()] for _ in roots]
    max_exp = field.degree

    def power(i, k):
        while len(powers[i]) <= k:
            powers[i].append(powers[i][-1] * roots[i])
        return powers[i][k]

    for total in range(0, n * max_exp + 1):
        for exps in product(range(max_exp + 1), repeat=n):
            if sum(exps) != total:
                continue
            val = field.one()
            for i, k in enumerate(exps):
                if k:
                    val = val * power(i, k)
            row = val.vector()
            for p, b in basis_rows.items():
                if row[p]:
                    c = row[p]
                    row = [x - c * y for x, y in zip(row, b)]
            piv = next((j for j, x in enumerate(row) if x), None)
            if piv is None:
                continue
            lead = row[piv]
            row = [x / lead for x in row]
            for p in list(basis_rows):
                if basis_rows[p][piv]:
                    c = basis_rows[p][piv]
                    basis_rows[p] = [x - c * y for x, y in zip(basis_rows[p], row)]
            basis_rows[piv] = row
            chosen.append((exps, val))
            if len(chosen) == target_rank:
                return chosen
    return chosen


def derive_generator_images(field, roots, action):
    """Images of the field generator under each automorphism, recovered from
    the permutation of the roots (the field must be generated by the roots)."""
    chosen = _span_monomials(field, roots, field.degree)
    if len(chosen) < field.degree:
        raise InvalidScenario("roots do not generate the field; supply generator_images")
    cols = [v.vector() for _, v in chosen]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(field.degree)]
    coeffs = solve_rational(rows, field.gen().vector())
    images = []
    for g in action.group.elements():
        perm = action.images[g]
        acc = field.zero()
        for c, (exps, _) in zip(coeffs, chosen):
            if c == 0:
                continue
            term = field([c])
            for i, k in enumerate(exps):
                if k:
                    term = term * roots[perm[i]] ** k
            acc = acc + term
        images.append(acc)
    return tuple(images)


def _validate_concrete(gamma, action, concrete):
    F = concrete.field
    for i, r in enumerate(concrete.roots):
        if not rational_poly_eval(concrete.f, r).is_zero():
            raise InvalidScenario(f"root {i} is not a root of f")
    for g, img in enumerate(concrete.generator_images):
        if not rational_poly_eval(F.modulus, img).is_zero():
            raise InvalidScenario(f"image of the generator under element {g} is not a root of m")
        for i, r in enumerate(concrete.roots):
            if concrete.apply(g, r) != concrete.roots[action.images[g][i]]:
                raise InvalidScenario(
                    f"element {g} does not map root {i} to root {action.images[g][i]}")
    for g in gamma.elements():
        for h in gamma.elements():
            lhs = concrete.generator_images[gamma.mul(g, h)]
            rhs = concrete.apply(g, concrete.generator_images[h])
            if lhs != rhs:
                raise InvalidScenario(f"automorphisms do not compose at ({g}, {h})")


def make_scenario(gamma, images, theta_index=0, concrete=None, declared_G=None, name=""):
    action = validate_action(gamma, images) if not isinstance(images, GroupAction) else images
    if not is_transitive(action):
        raise InvalidScenario("Gamma does not act transitively on the roots")
    if not 0 <= theta_index < action.set_size:
        raise InvalidScenario(f"theta index {theta_index} out of range")
    if concrete is not None:
        if len(concrete["roots"]) != action.set_size:
            raise InvalidScenario("number of root values does not match the action")
        F = NumberField(concrete["modulus"])
        roots = tuple(F(r) for r in concrete["roots"])
        f = tuple(to_fraction(c) for c in concrete["f"])
        if "generator_images" in concrete:
            gen_imgs = tuple(F(c) for c in concrete["generator_images"])
            if len(gen_imgs) != gamma.order:
                raise InvalidScenario("need one generator image per element of Gamma")
        else:
            gen_imgs = derive_generator_images(F, roots, action)
        layer = ConcreteLayer(F, roots, f, gen_imgs)
        _validate_concrete(gamma, action, layer)
    else:
        layer = None
    sc = GaloisScenario(gamma, action, theta_index, layer, name)
    if declared_G is not None:
        derived = derive_stabilizer(sc).elements
        if tuple(sorted(declared_G)) != derived:
            raise InvalidScenario(f"declared G {sorted(declared_G)} differs from the "
                                  f"stabilizer of theta {list(derived)}")
    return sc


def scenario_from_json(data):
    gamma, natural = group_from_json(data["gamma"])
    if "root_action" in data:
        images = data["root_action"]
    elif natural is not None:
        images = natural
    else:
        raise InvalidScenario("root_action is required for table-format Gamma")
    return make_scenario(gamma, images, data.get("theta", 0), data.get("concrete"),
                         data.get("G"), data.get("name", ""))


def embeddings_from_json(data, scenario=None):
    objs = data["objects"]
    pairs = tuple((str(k), int(v)) for k, v in objs.items())
    emb = EmbeddingData(pairs, data.get("unit"))
    if scenario is not None:
        check_embeddings(scenario, emb)
    return emb


def check_embeddings(scenario, emb):
    if not emb.objects:
        raise InvalidScenario("no embedding data")
    for label, r in emb.objects:
        scenario.gamma.check_element(r)
    if emb.unit is not None:
        d = dict(emb.objects)
        if emb.unit not in d:
            raise InvalidScenario(f"unit label {emb.unit!r} has no embedding")
        if d[emb.unit] not in derive_stabilizer(scenario):
            raise InvalidScenario("the unit object's embedding must lie in G")


# -- group layer ----------------------------------------------------------

def derive_stabilizer(scenario):
    """G = Gal(E/L) = the stabilizer of theta, since L = K(theta)."""
    return stabilizer(scenario.root_action, scenario.theta_index)


def factor_orbit_map(scenario):
    """J(i) in 1..m: label of the G-orbit of root i; orbits are numbered by
    their smallest member, so J(theta) is 1 when theta is root 0."""
    G = derive_stabilizer(scenario)
    J = [0] * scenario.n_roots
    for j, orb in enumerate(orbits(scenario.root_action, G), start=1):
        for i in orb:
            J[i] = j
    return J


def tensor_unit_decomposition(scenario):
    """Degrees of the factors f_j of f over L (the G-orbit sizes); one
    simple summand of the unit of C x C^mp per factor."""
    G = derive_stabilizer(scenario)
    return [len(o) for o in orbits(scenario.root_action, G)]


@dataclass(frozen=True)
class FaithfulnessReport:
    faithful: bool
    H: tuple
    H_is_group: bool
    fixed_field_index: int = None
    witness: tuple = None

    def to_json(self):
        return {"faithful": self.faithful, "H": list(self.H), "H_is_group": self.H_is_group,
                "fixed_field_index": self.fixed_field_index,
                "witness": list(self.witness) if self.witness else None}


def faithfulness_check(scenario, embeddings, strict=True):
    """H = union of G rho_X G; the action is faithful iff H = Gamma.

    For a rigid monoidal category H is a subgroup; when it is not, the
    embedding data is inconsistent and ClosureFailure is raised (or, with
    ``strict=False``, reported with H_is_group False).
    """
    check_embeddings(scenario, embeddings)
    G = derive_stabilizer(scenario)
    res = double_coset_union_closure(G, embeddings.rhos())
    if not res.closed:
        if strict:
            raise ClosureFailure(res.witness, res.H)
        return FaithfulnessReport(False, res.H, False, None, res.witness)
    order = scenario.gamma.order
    return FaithfulnessReport(len(res.H) == order, res.H, True, order // len(res.H))


# -- concrete layer -------------------------------------------------------

def _require_concrete(scenario):
    if scenario.concrete is None:
        raise InvalidScenario("scenario has no concrete field data")
    return scenario.concrete


def lagrange_idempotents(scenario):
    """p_i(x) = prod_{k != i} (x - theta_k) / (theta_i - theta_k), checked to
    satisfy p_i(theta_k) = delta_ik and sum p_i = 1."""
    layer = _require_concrete(scenario)
    F, roots = layer.field, layer.roots
    n = len(roots)
    for i in range(n):
        for k in range(i + 1, n):
            if roots[i] == roots[k]:
                raise RepeatedRoot(f"roots {i} and {k} coincide")
    ps = []
    for i in range(n):
        p = Poly(F, [1])
        for k in range(n):
            if k != i:
                p = p * Poly.linear_factor(roots[k]) * (roots[i] - roots[k]).inverse()
        ps.append(p)
    for i, p in enumerate(ps):
        for k, r in enumerate(roots):
            if p(r) != (1 if i == k else 0):
                raise ArithmeticError(f"p_{i}(theta_{k}) has the wrong value")
    total = Poly(F, [])
    for p in ps:
        total = total + p
    if total != 1:
        raise ArithmeticError("Lagrange idempotents do not sum to 1")
    return ps


def grouped_idempotents(scenario):
    """P_j = sum of p_i over the orbit J^-1(j); checked against
    P_j(theta_k) = delta_{j, J(k)}, sum P_j = 1, and G-invariance of every
    coefficient."""
    layer = _require_concrete(scenario)
    ps = lagrange_idempotents(scenario)
    J = factor_orbit_map(scenario)
    m = max(J)
    F = layer.field
    Ps = []
    for j in range(1, m + 1):
        P = Poly(F, [])
        for i, ji in enumerate(J):
            if ji == j:
                P = P + ps[i]
        Ps.append(P)
    for j, P in enumerate(Ps, start=1):
        for k, r in enumerate(layer.roots):
            if P(r) != (1 if J[k] == j else 0):
                raise ArithmeticError(f"P_{j}(theta_{k}) has the wrong value")
    total = Poly(F, [])
    for P in Ps:
        total = total + P
    if total != 1:
        raise ArithmeticError("grouped idempotents do not sum to 1")
    G = derive_stabilizer(scenario)
    for j, P in enumerate(Ps, start=1):
        for g in G:
            for d, c in enumerate(P.coeffs):
                if layer.apply(g, c) != c:
                    raise CoefficientNotFixed(
                        f"coefficient {d} of P_{j} is moved by element {g} of G")
    return Ps


def polynomial_faithfulness(scenario, embeddings):
    """Faithfulness via idempotents: for every j some X has P_j(rho_X(theta)) = 1."""
    layer = _require_concrete(scenario)
    Ps = grouped_idempotents(scenario)
    values = [layer.roots[scenario.root_of(r)] for r in embeddings.rhos()]
    return all(any(P(v) == 1 for v in values) for P in Ps)
