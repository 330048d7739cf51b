"""Smith normal form and exact integer lattice helpers.

Matrices are lists of rows of Python ints, so entries never overflow.
"""

from dataclasses import dataclass


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * n
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def shape(A, ncols=None):
    return len(A), (len(A[0]) if A else (ncols or 0))


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SmithForm:
    U: list
    D: list
    V: list
    U_inv: list = None
    V_inv: list = None

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(A, ncols=None, inverses=False, left=True, right=True):
    """Return U, D, V with ``U A V = D``.

    U and V are unimodular and D is diagonal with nonnegative entries
    d1 | d2 | ... .  The pivot at each step is the nonzero entry of least
    absolute value in the remaining block.  ``ncols`` is only needed for
    matrices with zero rows.  With ``inverses=True`` the inverses of U and V
    are tracked as well.  ``left=False`` or ``right=False`` skips the
    bookkeeping for U (and its inverse) or V; the skipped fields are None.
    """
    m, n = shape(A, ncols)
    D = [list(r) for r in A]
    U = identity(m) if left else []
    V = identity(n) if right else []
    Ui = identity(m) if inverses and left else None
    Vi = identity(n) if inverses and right else None

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        if left:
            U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_addmul(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        rd, rs = D[dst], D[src]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if left:
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]
        if Ui is not None:
            for r in Ui:
                if r[dst]:
                    r[src] -= q * r[dst]

    def col_addmul(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for r in D:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]
        if Vi is not None:
            vs, vd = Vi[src], Vi[dst]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        if left:
            U[i] = [-x for x in U[i]]
        if Ui is not None:
            for r in Ui:
                r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)

        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                if i != t:
                    row_swap(i, t)
                if j != t:
                    col_swap(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    return SmithForm(U if left else None, D, V if right else None, Ui, Vi)


def invariant_factors(diagonal):
    """Nontrivial invariant factors (entries > 1) of a Smith diagonal."""
    return [abs(d) for d in diagonal if abs(d) > 1]


def canonical_factors(orders):
    """Invariant factors of Z/a1 x Z/a2 x ... (entries 0 or 1 dropped)."""
    orders = [abs(a) for a in orders if abs(a) > 1]
    if not orders:
        return []
    D = [[a if i == j else 0 for j in range(len(orders))] for i, a in enumerate(orders)]
    return invariant_factors(smith_normal_form(D).diagonal)


def kernel_basis(A, ncols=None):
    """Columns (returned as a list of vectors) spanning the integer kernel of A.

    The basis spans a saturated sublattice of Z^ncols.
    """
    m, n = shape(A, ncols)
    if m == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    sf = smith_normal_form(A, n)
    r = sf.rank
    return [[sf.V[i][j] for i in range(n)] for j in range(r, n)]


def solve_integer(columns, target, dim=None):
    """Integer coefficients c with sum c_j * columns[j] == target, or None.

    ``columns`` must be linearly independent.
    """
    if not columns:
        return [] if all(x == 0 for x in target) else None
    K = transpose(columns)
    sf = smith_normal_form(K, len(columns))
    y = matvec(sf.U, target)
    k = len(columns)
    z = []
    for i, yi in enumerate(y):
        d = sf.D[i][i] if i < k else 0
        if d == 0:
            if yi != 0:
                return None
            if i < k:
                z.append(0)
        else:
            if yi % d:
                return None
            z.append(yi // d)
    return matvec(sf.V, z)
