"""Exact arithmetic in Q[x]/(m(x)) and polynomials over it.

Coefficient lists are ascending: ``[c0, c1, c2]`` is c0 + c1 x + c2 x^2.
"""

from fractions import Fraction

from .errors import InvalidScenario


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return Fraction(x)
    raise InvalidScenario(f"not an exact rational: {x!r}")


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        coef = r[-1] / lead
        q[shift] = coef
        for i, bi in enumerate(b):
            r[shift + i] -= coef * bi
        r = _trim(r)
    return _trim(q), r


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def poly_xgcd(a, b):
    """(g, s, t) with s a + t b = g, g monic (or zero)."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if r0:
        lead = r0[-1]
        r0 = [c / lead for c in r0]
        s0 = [c / lead for c in s0]
        t0 = [c / lead for c in t0]
    return r0, s0, t0


def poly_derivative(a):
    return _trim([i * c for i, c in enumerate(a)][1:])


class NumberField:
    """Q[x]/(m) for a monic, squarefree integer polynomial m."""

    def __init__(self, modulus):
        m = [to_fraction(c) for c in modulus]
        m = _trim(m)
        if len(m) < 2:
            raise InvalidScenario("modulus must have degree >= 1")
        if m[-1] != 1 or any(c.denominator != 1 for c in m):
            raise InvalidScenario("modulus must be monic with integer coefficients")
        g, _, _ = poly_xgcd(m, poly_derivative(m))
        if len(g) > 1:
            raise InvalidScenario("modulus is not squarefree")
        self.modulus = tuple(m)
        self.degree = len(m) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.modulus]})"

    def __call__(self, coeffs):
        return NumberFieldElement(self, coeffs)

    def gen(self):
        return self([0, 1]) if self.degree > 1 else self([-self.modulus[0]])

    def one(self):
        return self([1])

    def zero(self):
        return self([])

    def basis(self):
        return [self([0] * i + [1]) for i in range(self.degree)]


class NumberFieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        c = [to_fraction(x) for x in coeffs]
        if len(c) > field.degree:
            _, c = poly_divmod(c, list(field.modulus))
        c = _trim(c)
        self.field = field
        self.coeffs = tuple(c)

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return NumberFieldElement(self.field, [to_fraction(other)])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return NumberFieldElement(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return NumberFieldElement(self.field, poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = poly_xgcd(list(self.coeffs), list(self.field.modulus))
        if len(g) != 1:
            raise ZeroDivisionError("element is a zero divisor")
        return NumberFieldElement(self.field, s)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r, b = self.field.one(), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self.coeffs == self._coerce(other).coeffs
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def is_zero(self):
        return not self.coeffs

    def is_rational(self):
        return len(self.coeffs) <= 1

    def vector(self):
        return list(self.coeffs) + [Fraction(0)] * (self.field.degree - len(self.coeffs))

    def substitute(self, image):
        """Evaluate this residue's polynomial at ``image`` (the image of x
        under a field homomorphism)."""
        acc = image.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * image + c
        return acc

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"NFE({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")


class Poly:
    """Polynomial in an outer variable with coefficients in a NumberField."""

    def __init__(self, field, coeffs):
        self.field = field
        c = [x if isinstance(x, NumberFieldElement) else field([to_fraction(x)]) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def linear_factor(cls, root):
        return cls(root.field, [-root, root.field.one()])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero()
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return Poly(self.field, [x + y for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, NumberFieldElement):
            return Poly(self.field, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return Poly(self.field, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly(self.field, [other]).coeffs
        return NotImplemented

    def __call__(self, value):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def map_coefficients(self, fn):
        return Poly(self.field, [fn(c) for c in self.coeffs])

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            var = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(f"({c})" + (f"*{var}" if var else ""))
        return " + ".join(parts)

    __repr__ = __str__


def rational_poly_eval(coeffs, value):
    """Evaluate a polynomial with rational coefficients at a field element."""
    acc = value.field.zero()
    for c in reversed(coeffs):
        acc = acc * value + to_fraction(c)
    return acc


def solve_rational(rows, rhs):
    """Solve the square-or-tall consistent system rows @ x = rhs over Q.

    Returns one solution or None if inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    A = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = A[i][n]
    return x
