"""Cohomology of finite groups with coefficients in finitely generated modules.

Cochains are normalized (they vanish whenever an argument is the identity)
and live in ``M^(N_n)`` where ``N_n = (|G|-1)^n``.  A module with torsion is
handled as a quotient of a free module, so every computation reduces to
Smith normal forms of integer matrices:

    Z^n = {x : d x lies in the relation lattice of C^(n+1)}
    H^n = Z^n / (im d + relations of C^n)
"""

from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod

from .errors import (InvalidModule, NotAbelian, NotACocycle, TooLarge,
                     UnsupportedField)
from .fieldtable import BaseField
from .smith import (identity, invariant_factors, matvec, smith_normal_form,
                    transpose)

DEFAULT_SIZE_BOUND = 10 ** 6


# -- modules ---------------------------------------------------------------

@dataclass(frozen=True)
class GModule:
    """Z^free_rank + Z/d1 + ... with a (left) action by integer matrices.

    ``action[g]`` acts on column vectors of coordinates (free part first).
    """
    free_rank: int
    torsion: tuple
    action: tuple
    name: str = ""

    @property
    def ngens(self):
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self):
        return (0,) * self.free_rank + tuple(self.torsion)

    def reduce(self, v):
        return tuple(x % d if d else x for x, d in zip(v, self.moduli))

    def act(self, g, v):
        return self.reduce(matvec(self.action[g], v))

    def is_trivial_action(self):
        I = tuple(tuple(r) for r in identity(self.ngens))
        return all(self._reduced_matrix(A) == self._reduced_matrix(I) for A in self.action)

    def _reduced_matrix(self, A):
        return tuple(tuple(x % d if d else x for x in row) for row, d in zip(A, self.moduli))

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion),
                "action": {str(g): [list(r) for r in A]
                           for g, A in enumerate(self.action) if g != 0}}


def _check_module(group, free_rank, torsion, action):
    r = free_rank + len(torsion)
    moduli = (0,) * free_rank + tuple(torsion)
    for d in torsion:
        if d < 2:
            raise InvalidModule(f"torsion invariant factor {d} must be >= 2")
    for a, b in zip(torsion, torsion[1:]):
        if b % a:
            raise InvalidModule(f"torsion factors {list(torsion)} are not a divisibility chain")
    if len(action) != group.order:
        raise InvalidModule("need one action matrix per group element")

    def red(A):
        return tuple(tuple(x % d if d else x for x in row) for row, d in zip(A, moduli))

    for g, A in enumerate(action):
        if len(A) != r or any(len(row) != r for row in A):
            raise InvalidModule(f"action matrix of element {g} is not {r}x{r}")
        # image of a torsion generator of order d must be killed by d
        for j, dj in enumerate(moduli):
            if dj == 0:
                continue
            for i, di in enumerate(moduli):
                if (A[i][j] * dj) % di if di else A[i][j]:
                    raise InvalidModule(
                        f"action of element {g} sends torsion generator {j} "
                        f"to an element of the wrong order")
    if red(action[0]) != red(identity(r)):
        raise InvalidModule("identity does not act as the identity matrix")
    for g in group.elements():
        for h in group.elements():
            lhs = red(action[group.mul(g, h)])
            rhs = red([[sum(action[g][i][k] * action[h][k][j] for k in range(r))
                        for j in range(r)] for i in range(r)])
            if lhs != rhs:
                raise InvalidModule(f"action is not multiplicative at ({g}, {h})")


def make_module(group, free_rank=0, torsion=(), action=None, name=""):
    """Build and validate a module.

    ``action`` may be None (trivial action), a full list of matrices, or a
    dict ``{element: matrix}`` covering a generating set; missing elements
    are filled in by multiplying known matrices.
    """
    torsion = tuple(torsion)
    r = free_rank + len(torsion)
    I = [list(row) for row in identity(r)]
    if action is None:
        mats = [I] * group.order
    elif isinstance(action, dict):
        known = {0: I}
        for k, A in action.items():
            known[group.check_element(int(k))] = [list(row) for row in A]
        changed = True
        while changed and len(known) < group.order:
            changed = False
            for a in list(known):
                for b in list(known):
                    ab = group.mul(a, b)
                    if ab not in known:
                        known[ab] = [[sum(known[a][i][k] * known[b][k][j] for k in range(r))
                                      for j in range(r)] for i in range(r)]
                        changed = True
        if len(known) < group.order:
            raise InvalidModule("action given on elements that do not generate the group")
        mats = [known[g] for g in group.elements()]
    else:
        mats = [[list(row) for row in A] for A in action]
    _check_module(group, free_rank, torsion, mats)
    moduli = (0,) * free_rank + torsion
    mats = tuple(tuple(tuple(x % d if d else x for x in row) for row, d in zip(A, moduli))
                 for A in mats)
    return GModule(free_rank, torsion, mats, name)


def trivial_module(group, free_rank=0, torsion=(), name=""):
    return make_module(group, free_rank, torsion, None, name)


def module_from_json(data, group):
    return make_module(group, data.get("free_rank", 0), data.get("torsion", []),
                       data.get("action"), data.get("name", ""))


def augmentation_quotient_module(group):
    """Z[G]/(Z.N) with N the norm element; basis = images of e_g, g != 1.

    Z[G] is cohomologically trivial in positive degrees, so this module
    shifts degree: H^n(G; Z[G]/N) = H^(n+1)(G; Z) for n >= 1.
    """
    others = [g for g in group.elements() if g != 0]
    pos = {g: i for i, g in enumerate(others)}
    r = len(others)
    mats = []
    for h in group.elements():
        A = [[0] * r for _ in range(r)]
        for g in others:
            hg = group.mul(h, g)
            if hg == 0:
                for i in range(r):
                    A[i][pos[g]] = -1
            else:
                A[pos[hg]][pos[g]] = 1
        mats.append(A)
    return make_module(group, r, (), mats, "Z[G]/(N)")


def reduce_unit_coefficients(field, n, group):
    """A finitely generated module with the same degree-n cohomology as K^x.

    * R^x = {+-1} x R_{>0}; the positive reals are uniquely divisible, so
      Z/2 with trivial action suffices.
    * C^x = S^1 x R_{>0} and S^1 = R/Z, so H^n(G; C^x) = H^(n+1)(G; Z);
      the degree shift is realized by Z[G]/(N).
    * F_q^x is cyclic of order q - 1.
    """
    if n < 1:
        raise ValueError("unit coefficients are only reduced in degrees >= 1")
    if not isinstance(field, BaseField):
        raise UnsupportedField(f"not a field descriptor: {field!r}")
    if field.kind == "R":
        return trivial_module(group, 0, (2,), "R^x ~ Z/2")
    if field.kind == "C":
        m = augmentation_quotient_module(group)
        return GModule(m.free_rank, m.torsion, m.action, "C^x ~ Z[G]/(N) (degree shift)")
    if field.kind == "Fq":
        if field.q == 2:
            return trivial_module(group, 0, (), "F2^x = 1")
        return trivial_module(group, 0, (field.q - 1,), f"F{field.q}^x ~ Z/{field.q - 1}")
    raise UnsupportedField(f"no unit-group data for {field.label}")


# -- bar complex -----------------------------------------------------------

def cochain_tuples(group, n, normalized=True):
    elems = [g for g in group.elements() if g != 0] if normalized else list(group.elements())
    return [tuple(t) for t in product(elems, repeat=n)]


def bar_differential_sparse(n, group, module, normalized=True):
    """Rows of d: C^n -> C^(n+1) as dicts {column: entry}.

    Coordinate ``t * ngens + k`` is generator k of the value at tuple t.
    """
    src = cochain_tuples(group, n, normalized)
    dst = cochain_tuples(group, n + 1, normalized)
    src_index = {t: i for i, t in enumerate(src)}
    r = module.ngens
    moduli = module.moduli
    rows = []
    for tup in dst:
        block = [dict() for _ in range(r)]

        def add(face, sign, matrix=None):
            j = src_index.get(face)
            if j is None:
                return      # face has an identity argument
            base = j * r
            for k in range(r):
                if matrix is None:
                    block[k][base + k] = block[k].get(base + k, 0) + sign
                else:
                    for kk, x in enumerate(matrix[k]):
                        if x:
                            block[k][base + kk] = block[k].get(base + kk, 0) + sign * x

        add(tup[1:], 1, module.action[tup[0]])
        for i in range(1, n + 1):
            prod_ = group.mul(tup[i - 1], tup[i])
            if normalized and prod_ == 0:
                continue
            add(tup[:i - 1] + (prod_,) + tup[i + 1:], (-1) ** i)
        add(tup[:n], (-1) ** (n + 1))
        for k in range(r):
            d = moduli[k]
            rows.append({c: (x % d if d else x) for c, x in block[k].items()
                         if (x % d if d else x)})
    return rows, len(src) * r


def bar_differential(n, group, module, normalized=True):
    """Dense integer matrix of d: C^n -> C^(n+1)."""
    rows, ncols = bar_differential_sparse(n, group, module, normalized)
    out = []
    for row in rows:
        dense = [0] * ncols
        for c, x in row.items():
            dense[c] = x
        out.append(dense)
    return out


def sparse_compose(A_rows, B_rows):
    """Rows of A @ B for sparse row dicts."""
    out = []
    for row in A_rows:
        acc = {}
        for k, a in row.items():
            for j, b in B_rows[k].items():
                acc[j] = acc.get(j, 0) + a * b
        out.append({j: x for j, x in acc.items() if x})
    return out


def dd_is_zero(n, group, module):
    """d^(n+1) o d^n vanishes once each row is read modulo its coordinate."""
    a, _ = bar_differential_sparse(n, group, module)
    b, _ = bar_differential_sparse(n + 1, group, module)
    r = module.ngens
    moduli = module.moduli
    for i, row in enumerate(sparse_compose(b, a)):
        d = moduli[i % r]
        if any((x % d if d else x) for x in row.values()):
            return False
    return True


# -- cohomology ------------------------------------------------------------

@dataclass(frozen=True)
class CohomologyGroup:
    invariant_factors: tuple = ()
    free_rank: int = 0
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def order(self):
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        from .abelian import format_group
        return format_group(self.invariant_factors, self.free_rank)

    def to_json(self):
        return {"invariant_factors": list(self.invariant_factors),
                "free_rank": self.free_rank, "metadata": dict(self.metadata)}


class _LatticeSolver:
    """Solves K c = t for a fixed basis K (list of independent vectors)."""

    def __init__(self, basis, dim):
        self.k = len(basis)
        self.dim = dim
        if self.k:
            self.sf = smith_normal_form(transpose(basis), self.k)

    def solve(self, target):
        if self.k == 0:
            if any(target):
                raise NotACocycle("vector is not in the lattice")
            return []
        y = matvec(self.sf.U, target)
        z = []
        for i, yi in enumerate(y):
            if i < self.k:
                d = self.sf.D[i][i]
                if yi % d:
                    raise NotACocycle("vector is not in the lattice")
                z.append(yi // d)
            elif yi:
                raise NotACocycle("vector is not in the lattice")
        return matvec(self.sf.V, z)


class _UniformSolver:
    """Coordinates in the lattice spanned by the columns scale_j * V e_j,
    j in ``kept``; the remaining coordinates of V^-1 t must vanish."""

    def __init__(self, V_inv, kept, scales, e):
        keep = set(kept)
        self.rows = [V_inv[j] for j in kept]
        self.others = [V_inv[j] for j in range(len(V_inv)) if j not in keep]
        self.scales = scales

    def solve(self, target):
        nz = [(i, b) for i, b in enumerate(target) if b]
        for row in self.others:
            if sum(row[i] * b for i, b in nz):
                raise NotACocycle("vector is not in the lattice")
        out = []
        for row, s in zip(self.rows, self.scales):
            y = sum(row[i] * b for i, b in nz)
            if y % s:
                raise NotACocycle("vector is not in the lattice")
            out.append(y // s)
        return out


class _Complex:
    """Everything needed to name and enumerate classes in H^n(G; M)."""

    def __init__(self, group, module, n):
        self.group, self.module, self.n = group, module, n
        r = module.ngens
        moduli = module.moduli
        self.tuples = cochain_tuples(group, n)
        m_n = len(self.tuples) * r
        self.dim = m_n

        # cocycle lattice: x with d x in relations(C^(n+1))
        d_rows, _ = bar_differential_sparse(n, group, module)
        if not d_rows:
            K = [[int(i == j) for i in range(m_n)] for j in range(m_n)]
            self.solver = _LatticeSolver(K, m_n)
        elif len(set(moduli)) == 1:
            K, self.solver = self._uniform_cocycle_lattice(d_rows, m_n, moduli[0])
        else:
            torsion_rows = [i for i in range(len(d_rows)) if moduli[i % r]]
            width = m_n + len(torsion_rows)
            big = []
            for i, row in enumerate(d_rows):
                dense = [0] * width
                for c, x in row.items():
                    dense[c] = x
                big.append(dense)
            for t, i in enumerate(torsion_rows):
                big[i][m_n + t] = -moduli[i % r]
            sf = smith_normal_form(big, width, left=False)
            K = [[sf.V[i][j] for i in range(m_n)] for j in range(sf.rank, width)]
            self.solver = _LatticeSolver(K, m_n)
        self.basis = K

        # coboundaries plus relations, in K-coordinates
        gens = []
        if n > 0:
            prev_rows, prev_cols = bar_differential_sparse(n - 1, group, module)
            cols = [[0] * m_n for _ in range(prev_cols)]
            for i, row in enumerate(prev_rows):
                for c, x in row.items():
                    cols[c][i] = x
            gens.extend(cols)
        for i in range(m_n):
            if moduli[i % r]:
                v = [0] * m_n
                v[i] = moduli[i % r]
                gens.append(v)
        k = len(K)
        C = transpose([self.solver.solve(v) for v in gens]) if gens else []
        self.k = k
        if k:
            ncols = len(gens)
            if ncols == 0:
                self.snf_diag = [0] * k
                self.U = identity(k)
                self.U_inv = identity(k)
            else:
                sf = smith_normal_form(C, ncols, inverses=True, right=False)
                diag = sf.diagonal + [0] * (k - min(k, ncols))
                self.snf_diag = diag[:k]
                self.U, self.U_inv = sf.U, sf.U_inv
        else:
            self.snf_diag, self.U, self.U_inv = [], [], []
        # coordinates of H: indices with diagonal entry 0 (free) or > 1
        self.coords = [i for i, d in enumerate(self.snf_diag) if d != 1]

    @staticmethod
    def _uniform_cocycle_lattice(d_rows, m_n, e):
        # every coordinate is Z/e (e = 0: free).  With U d V = S and U
        # unimodular, d x = 0 mod e iff s_i y_i = 0 mod e for y = V^-1 x.
        dense = []
        for row in d_rows:
            v = [0] * m_n
            for c, x in row.items():
                v[c] = x
            dense.append(v)
        sf = smith_normal_form(dense, m_n, inverses=True, left=False)
        diag = sf.diagonal
        kept, scales = [], []
        for j in range(m_n):
            s = diag[j] if j < len(diag) else 0
            if s == 0:
                scale = 1
            elif e == 0:
                continue
            else:
                scale = e // gcd(s, e)
            kept.append(j)
            scales.append(scale)
        K = [[sf.V[i][j] * sc for i in range(m_n)] for j, sc in zip(kept, scales)]
        return K, _UniformSolver(sf.V_inv, kept, scales, e)

    def group_structure(self):
        free = sum(1 for i in self.coords if self.snf_diag[i] == 0)
        return invariant_factors(self.snf_diag), free

    def class_of_vector(self, x):
        c = self.solver.solve(x)
        y = matvec(self.U, c)
        out = []
        for i in self.coords:
            d = self.snf_diag[i]
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def representative(self, coords):
        """Normalized cochain vector for the class with the given coordinates."""
        a = [0] * self.k
        for i, c in zip(self.coords, coords):
            a[i] = c
        w = matvec(self.U_inv, a)
        x = [sum(self.basis[j][t] * w[j] for j in range(self.k)) for t in range(self.dim)]
        return self._reduce(x)

    def _reduce(self, x):
        r = self.module.ngens
        moduli = self.module.moduli
        return [v % moduli[i % r] if moduli[i % r] else v for i, v in enumerate(x)]


def _metadata(module, n):
    md = {"degree": n, "normalized_cochains": True}
    if module.name:
        md["coefficients"] = module.name
    return md


def cohomology(group, module, n):
    """H^n(G; M) as invariant factors plus free rank."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    cx = _Complex(group, module, n)
    factors, free = cx.group_structure()
    return CohomologyGroup(tuple(factors), free, _metadata(module, n))


def unit_cohomology(group, field, n):
    """H^n(G; K^x) with trivial action, n >= 1."""
    return cohomology(group, reduce_unit_coefficients(field, n, group), n)


# -- cocycles --------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    degree: int
    values: dict          # n-tuple of elements -> tuple of module coordinates

    def __call__(self, *args):
        return self.values[tuple(args)]

    def to_json(self):
        def enc(v):
            return v[0] if len(v) == 1 else list(v)
        return {"degree": self.degree,
                "values": [list(t) + [enc(v)] for t, v in sorted(self.values.items())]}


def cocycle_from_function(group, n, fn, ngens=1):
    """Tabulate ``fn(*args)`` (an int for cyclic modules, else a tuple)."""
    vals = {}
    for t in product(group.elements(), repeat=n):
        v = fn(*t)
        vals[t] = (v,) if isinstance(v, int) else tuple(v)
        if len(vals[t]) != ngens:
            raise NotACocycle("value has the wrong number of coordinates")
    return Cocycle(n, vals)


def cocycle_from_json(data):
    n = data["degree"]
    vals = {}
    for entry in data["values"]:
        *args, v = entry
        vals[tuple(args)] = (v,) if isinstance(v, int) else tuple(v)
    return Cocycle(n, vals)


def _vector_from_cocycle(cx, cocycle):
    r = cx.module.ngens
    x = []
    for t in cx.tuples:
        v = cocycle.values.get(t, (0,) * r)
        x.extend(v)
    return x


def is_cocycle(group, module, cocycle):
    """Pointwise check of (d f)(g0..gn) = 0 on all (n+1)-tuples."""
    n = cocycle.degree
    zero = (0,) * module.ngens
    f = lambda t: cocycle.values.get(t, zero)
    for t in product(group.elements(), repeat=n + 1):
        acc = list(module.act(t[0], f(t[1:])))
        for i in range(1, n + 1):
            s = (-1) ** i
            face = t[:i - 1] + (group.mul(t[i - 1], t[i]),) + t[i + 1:]
            acc = [a + s * b for a, b in zip(acc, f(face))]
        s = (-1) ** (n + 1)
        acc = [a + s * b for a, b in zip(acc, f(t[:n]))]
        if any(module.reduce(acc)):
            return False
    return True


def is_normalized(cocycle):
    return all(not any(v) for t, v in cocycle.values.items() if 0 in t)


def cohomology_class(group, module, cocycle):
    """Coordinates of the class of a normalized cocycle in H^n."""
    if not is_normalized(cocycle):
        raise NotACocycle("cochain is not normalized")
    cx = _Complex(group, module, cocycle.degree)
    return cx.class_of_vector(_vector_from_cocycle(cx, cocycle))


def cocycle_representatives(group, module, n, size_bound=DEFAULT_SIZE_BOUND):
    """One normalized cocycle per class of H^n(G; M), in lexicographic order
    of class coordinates (the zero class first)."""
    cx = _Complex(group, module, n)
    factors, free = cx.group_structure()
    if free:
        raise TooLarge(f"H^{n} has free rank {free}; infinitely many classes")
    order = prod(factors)
    if order * group.order ** n > size_bound:
        raise TooLarge(f"{order} classes on {group.order}^{n} tuples exceeds {size_bound}")
    radices = [cx.snf_diag[i] for i in cx.coords]
    r = module.ngens
    zero = (0,) * r
    out = []
    for coords in product(*(range(d) for d in radices)):
        x = cx.representative(coords)
        vals = {t: zero for t in product(group.elements(), repeat=n)}
        for j, t in enumerate(cx.tuples):
            vals[t] = tuple(x[j * r:(j + 1) * r])
        out.append(Cocycle(n, vals))
    return out


def is_symmetric_cocycle(cocycle, group):
    """J(g, h) == J(h, g) for every pair, for scalar 2-cocycles on abelian G.

    For an identity-on-objects autoequivalence whose tensorator is the
    scalar J, compatibility with the braiding is exactly this symmetry.
    """
    if cocycle.degree != 2:
        raise ValueError("need a degree-2 cocycle")
    if not group.is_abelian():
        raise NotAbelian("braided-tensorator symmetry needs an abelian group")
    for v in cocycle.values.values():
        if len(v) != 1:
            raise InvalidModule("cocycle values must lie in a cyclic module")
    return all(cocycle.values[(g, h)] == cocycle.values[(h, g)]
               for g in group.elements() for h in group.elements())


def pw_sign_terms():
    """Exponent f*g*h*k*(g + 2h + k) for all 16 binary tuples."""
    return {(f, g, h, k): f * g * h * k * (g + 2 * h + k)
            for f, g, h, k in product((0, 1), repeat=4)}


def pw_sign_identity_check():
    """True iff (-1)^(fghk(g+2h+k)) = 1 for all f, g, h, k in {0, 1}."""
    return all(e % 2 == 0 for e in pw_sign_terms().values())
