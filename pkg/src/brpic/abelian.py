"""Finite abelian groups in coordinates, homomorphisms between them, and
invariant factors of abelian table groups."""

from dataclasses import dataclass
from itertools import product
from math import prod

from .errors import MalformedMap, NotAbelian
from .groups import generating_set
from .smith import canonical_factors, invariant_factors, smith_normal_form


@dataclass(frozen=True)
class AbelianGroup:
    """Z/d1 x ... x Z/dk, elements are coordinate tuples."""
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 1:
                raise ValueError(f"factor {d} must be a positive integer")

    @classmethod
    def trivial(cls):
        return cls(())

    @property
    def order(self):
        return prod(self.factors)

    @property
    def rank(self):
        return len(self.factors)

    def elements(self):
        return list(product(*(range(d) for d in self.factors)))

    def zero(self):
        return (0,) * len(self.factors)

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def reduce(self, x):
        return tuple(a % d for a, d in zip(x, self.factors))

    def invariants(self):
        return canonical_factors(self.factors)

    def is_trivial(self):
        return self.order == 1

    def is_cyclic(self):
        return len(self.invariants()) <= 1

    def __str__(self):
        return format_group(self.invariants())


def format_group(factors, free_rank=0):
    """Human-readable name: 'trivial', 'Z/2', '(Z/2)^3', 'Z^2 x Z/4'."""
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    factors = list(factors)
    i = 0
    while i < len(factors):
        j = i
        while j < len(factors) and factors[j] == factors[i]:
            j += 1
        k = j - i
        parts.append(f"Z/{factors[i]}" if k == 1 else f"(Z/{factors[i]})^{k}")
        i = j
    return " x ".join(parts) if parts else "trivial"


def parse_factors(text):
    """Parse '2,2' / '2x2' / '1' / 'trivial' / '' into a factor list."""
    text = text.strip().lower()
    if text in ("", "0", "1", "trivial"):
        return []
    for sep in ("x", "*"):
        text = text.replace(sep, ",")
    out = []
    for part in text.split(","):
        part = part.strip().removeprefix("z/")
        if part:
            out.append(int(part))
    return canonical_factors(out)


@dataclass(frozen=True)
class Homomorphism:
    """Map source -> target; ``matrix[i][j]`` is coordinate i of the image of
    source generator j."""
    source: AbelianGroup
    target: AbelianGroup
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or any(len(r) != self.source.rank for r in m):
            raise MalformedMap(
                f"matrix shape does not match {self.target.rank}x{self.source.rank}")
        for j, dj in enumerate(self.source.factors):
            for i, ei in enumerate(self.target.factors):
                if (dj * m[i][j]) % ei:
                    raise MalformedMap(
                        f"generator {j} has order {dj} but its image coordinate {i} "
                        f"does not have order dividing it (mod {ei})")

    def __call__(self, x):
        return tuple(sum(a * b for a, b in zip(row, x)) % e
                     for row, e in zip(self.matrix, self.target.factors))

    def image(self):
        return sorted({self(x) for x in self.source.elements()})

    def kernel(self):
        z = self.target.zero()
        return sorted(x for x in self.source.elements() if self(x) == z)

    def is_injective(self):
        return len(self.kernel()) == 1

    def is_surjective(self):
        return len(self.image()) == self.target.order


def zero_map(source, target):
    return Homomorphism(source, target, tuple((0,) * source.rank for _ in range(target.rank)))


def table_group_invariants(group):
    """Invariant factors of an abelian FiniteGroup via a presentation by
    Cayley-graph relations e_a + e_s - e_{as}."""
    if not group.is_abelian():
        raise NotAbelian("group is not abelian")
    n = group.order
    if n == 1:
        return []
    rows = [[int(j == 0) for j in range(n)]]
    for s in generating_set(group):
        for a in group.elements():
            r = [0] * n
            r[a] += 1
            r[s] += 1
            r[group.mul(a, s)] -= 1
            rows.append(r)
    return invariant_factors(smith_normal_form(rows, n).diagonal)
