"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` and element 0 is always the
identity.  Products are looked up in ``table[a][b]``.  Permutation groups are
accepted as input and expanded to a table; for permutations the product
``p * q`` means "apply ``q`` first, then ``p``", matching composition of
field automorphisms.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .errors import (ElementOutOfRange, InvalidAction, MalformedTable,
                     NoIdentity, NoInverse, NotASubgroup, NotAssociative)


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    labels: tuple = None
    _inverses: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._inverses is None:
            inv = [None] * len(self.table)
            for a, row in enumerate(self.table):
                inv[a] = row.index(0)
            object.__setattr__(self, "_inverses", tuple(inv))

    @property
    def order(self):
        return len(self.table)

    @property
    def identity(self):
        return 0

    def __len__(self):
        return len(self.table)

    def elements(self):
        return range(len(self.table))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverses[a]

    def power(self, a, k):
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self):
        from math import lcm
        e = 1
        for a in self.elements():
            e = lcm(e, self.element_order(a))
        return e

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements() for b in range(a))

    def label(self, a):
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def check_element(self, a):
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ElementOutOfRange(f"{a!r} is not an element of a group of order {self.order}")
        return a

    def to_json(self):
        d = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._set

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def _set(self):
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def index(self):
        return self.parent.order // self.order


@dataclass(frozen=True)
class GroupAction:
    """Action of ``group`` on ``{0..set_size-1}``; ``images[g][x]`` is g(x)."""
    group: FiniteGroup
    set_size: int
    images: tuple

    def act(self, g, x):
        return self.images[g][x]


def validate_group(table, labels=None):
    """Check the group axioms for a square table and return a FiniteGroup.

    If the identity is not element 0 the elements are re-indexed by swapping
    the identity into position 0.
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("empty table")
    rows = []
    for i, row in enumerate(table):
        row = list(row)
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise MalformedTable(f"entry {x!r} in row {i} out of range")
        rows.append(row)
    if labels is not None and len(labels) != n:
        raise MalformedTable("labels length does not match table")

    e = None
    for c in range(n):
        if all(rows[c][i] == i and rows[i][c] == i for i in range(n)):
            e = c
            break
    if e is None:
        raise NoIdentity()
    if e != 0:
        swap = list(range(n))
        swap[0], swap[e] = e, 0
        rows = [[swap[rows[swap[i]][swap[j]]] for j in range(n)] for i in range(n)]
        if labels is not None:
            labels = [labels[swap[i]] for i in range(n)]

    for a in range(n):
        if not any(rows[a][b] == 0 and rows[b][a] == 0 for b in range(n)):
            raise NoInverse(a)

    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            rab, rb = rows[ab], rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociative((a, b, c))

    return FiniteGroup(tuple(tuple(r) for r in rows),
                       tuple(labels) if labels is not None else None)


# -- permutations ----------------------------------------------------------

def perm_from_cycles(cycles, degree):
    p = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            if not 0 <= x < degree:
                raise MalformedTable(f"point {x} outside degree {degree}")
            p[x] = cyc[(i + 1) % len(cyc)]
    if sorted(p) != list(range(degree)):
        raise MalformedTable(f"cycles {cycles} do not define a permutation")
    return tuple(p)


def perm_to_cycles(p):
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p[x]
        cycles.append(tuple(cyc))
    return cycles


def _compose(p, q):
    # (p * q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def _cycle_label(p):
    cycles = perm_to_cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def permutation_group(generators, degree):
    """Expand permutation generators into a FiniteGroup plus its natural action.

    Elements are numbered in breadth-first order from the identity.
    """
    gens = [tuple(g) for g in generators]
    ident = tuple(range(degree))
    perms = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = _compose(g, p)
            if q not in index:
                index[q] = len(perms)
                perms.append(q)
                queue.append(q)
    table = tuple(tuple(index[_compose(p, q)] for q in perms) for p in perms)
    group = FiniteGroup(table, tuple(_cycle_label(p) for p in perms))
    return group, GroupAction(group, degree, tuple(perms))


def group_from_json(data):
    """Parse either the table format or the permutation-generator format.

    Returns ``(group, action)`` where ``action`` is the natural permutation
    action for permutation input and ``None`` for table input.
    """
    if "table" in data:
        g = validate_group(data["table"], data.get("labels"))
        if "order" in data and data["order"] != g.order:
            raise MalformedTable(f"declared order {data['order']} != table size {g.order}")
        return g, None
    if "generators" in data:
        degree = data["degree"]
        gens = [perm_from_cycles(cycles, degree) for cycles in data["generators"]]
        return permutation_group(gens, degree)
    raise MalformedTable("group JSON needs 'table' or 'degree'/'generators'")


# -- standard groups ------------------------------------------------------

def cyclic_group(n):
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                       tuple(str(a) for a in range(n)))


def direct_product(g1, g2):
    n1, n2 = g1.order, g2.order
    elems = [(a, b) for a in range(n1) for b in range(n2)]
    idx = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(idx[(g1.mul(a, c), g2.mul(b, d))] for (c, d) in elems)
                  for (a, b) in elems)
    labels = tuple(f"({g1.label(a)},{g2.label(b)})" for a, b in elems)
    return FiniteGroup(table, labels)


def abelian_group(invariants):
    """Z/d1 x Z/d2 x ... with elements ordered lexicographically by coordinates."""
    elems = list(product(*(range(d) for d in invariants))) if invariants else [()]
    idx = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(idx[tuple((u + v) % d for u, v, d in zip(x, y, invariants))]
                        for y in elems) for x in elems)
    labels = tuple("(" + ",".join(map(str, x)) + ")" for x in elems) if invariants else ("e",)
    return FiniteGroup(table, labels)


def symmetric_group(n):
    if n < 2:
        return permutation_group([], max(n, 1))[0]
    gens = [perm_from_cycles([tuple(range(n))], n), perm_from_cycles([(0, 1)], n)]
    return permutation_group(gens, n)[0]


def quaternion_group():
    # elements encoded as (sign, unit) with units 1,i,j,k
    mult = {("1", u): (1, u) for u in "1ijk"}
    mult.update({(u, "1"): (1, u) for u in "1ijk"})
    for u in "ijk":
        mult[(u, u)] = (-1, "1")
    mult.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    idx = {x: i for i, x in enumerate(elems)}
    table = []
    for s, u in elems:
        row = []
        for t, v in elems:
            sign, w = mult[(u, v)]
            row.append(idx[(s * t * sign, w)])
        table.append(tuple(row))
    labels = tuple(("" if s == 1 else "-") + u for s, u in elems)
    return FiniteGroup(tuple(table), labels)


NAMED_GROUPS = {
    "1": lambda: cyclic_group(1),
    "trivial": lambda: cyclic_group(1),
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "V4": lambda: abelian_group((2, 2)),
    "C2xC2": lambda: abelian_group((2, 2)),
    "S3": lambda: symmetric_group(3),
    "Q8": quaternion_group,
}


def named_group(name):
    try:
        return NAMED_GROUPS[name]()
    except KeyError:
        raise MalformedTable(f"unknown group name {name!r}") from None


# -- subgroups, cosets, orbits ------------------------------------------

def make_subgroup(parent, elements):
    elems = tuple(sorted(set(elements)))
    for a in elems:
        parent.check_element(a)
    s = set(elems)
    if 0 not in s:
        raise NotASubgroup("subset does not contain the identity")
    for a in elems:
        if parent.inv(a) not in s:
            raise NotASubgroup(f"not closed under inversion at {a}")
        for b in elems:
            if parent.mul(a, b) not in s:
                raise NotASubgroup(f"not closed under multiplication at ({a}, {b})")
    return Subgroup(parent, elems)


def trivial_subgroup(group):
    return Subgroup(group, (0,))


def whole_group(group):
    return Subgroup(group, tuple(group.elements()))


def generated_subgroup(group, gens):
    gens = [group.check_element(g) for g in gens]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(group, tuple(sorted(seen)))


def double_coset(G, g, gamma=None):
    """The set ``G g G`` as a sorted tuple."""
    gamma = gamma or G.parent
    gamma.check_element(g)
    out = {gamma.mul(gamma.mul(a, g), b) for a in G.elements for b in G.elements}
    return tuple(sorted(out))


def left_coset(G, g):
    return tuple(sorted(G.parent.mul(g, h) for h in G.elements))


def right_coset(G, g):
    return tuple(sorted(G.parent.mul(h, g) for h in G.elements))


def conjugate_subgroup(G, g):
    """g G g^-1."""
    P = G.parent
    gi = P.inv(g)
    return Subgroup(P, tuple(sorted(P.mul(P.mul(g, h), gi) for h in G.elements)))


@dataclass(frozen=True)
class ClosureResult:
    H: tuple
    closed: bool
    subgroup: Subgroup = None
    witness: tuple = None


def closure_witness(group, elements):
    """Return None if ``elements`` is a subgroup, else a pair whose product
    (or an element whose inverse) leaves the set."""
    s = set(elements)
    if 0 not in s:
        return (0, 0)
    for a in sorted(s):
        if group.inv(a) not in s:
            return (a, -1)
        for b in sorted(s):
            if group.mul(a, b) not in s:
                return (a, b)
    return None


def double_coset_union_closure(G, reps):
    """Form ``H = union of G r G`` over ``reps`` and report whether it is a subgroup."""
    gamma = G.parent
    H = set()
    for r in reps:
        H.update(double_coset(G, r, gamma))
    H = tuple(sorted(H))
    w = closure_witness(gamma, H)
    if w is None:
        return ClosureResult(H, True, Subgroup(gamma, H), None)
    return ClosureResult(H, False, None, w)


def validate_action(group, images):
    """Check an action given as one permutation (list of images) per element."""
    if len(images) != group.order:
        raise InvalidAction(f"need {group.order} permutations, got {len(images)}")
    images = tuple(tuple(p) for p in images)
    n = len(images[0]) if images else 0
    for g, p in enumerate(images):
        if sorted(p) != list(range(n)):
            raise InvalidAction(f"image of element {g} is not a permutation of 0..{n - 1}")
    if images[0] != tuple(range(n)):
        raise InvalidAction("identity does not act trivially")
    for g in group.elements():
        for h in group.elements():
            if images[group.mul(g, h)] != _compose(images[g], images[h]):
                raise InvalidAction(f"action does not respect the product of {g} and {h}")
    return GroupAction(group, n, images)


def orbits(action, restrict_to=None):
    """Orbits of the (restricted) action, each sorted, listed by smallest member."""
    elems = restrict_to.elements if restrict_to is not None else tuple(action.group.elements())
    seen = set()
    result = []
    for x in range(action.set_size):
        if x in seen:
            continue
        orb = {action.images[g][x] for g in elems}
        seen |= orb
        result.append(tuple(sorted(orb)))
    return result


def stabilizer(action, x):
    return Subgroup(action.group,
                    tuple(g for g in action.group.elements() if action.images[g][x] == x))


def is_transitive(action):
    return len(orbits(action)) <= 1


def generating_set(group):
    """A small generating set, chosen greedily by smallest element index."""
    gens = []
    covered = {0}
    for a in group.elements():
        if a not in covered:
            gens.append(a)
            covered = set(generated_subgroup(group, gens).elements)
    return gens


def all_subgroups(group):
    """Every subgroup, by closure over pairs of cyclic subgroups (desk scale)."""
    found = {(0,)}
    frontier = [(0,)]
    cyclic = {generated_subgroup(group, [a]).elements for a in group.elements()}
    found |= cyclic
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if set(C) <= set(H):
                    continue
                K = generated_subgroup(group, list(H) + list(C)).elements
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return [Subgroup(group, H) for H in sorted(found, key=lambda h: (len(h), h))]
