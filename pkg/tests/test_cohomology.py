from itertools import product

import pytest

from brpic.cohomology import (Cocycle, cocycle_from_function,
                              cocycle_representatives, cohomology,
                              cohomology_class, dd_is_zero, is_cocycle,
                              is_symmetric_cocycle, make_module,
                              module_from_json, pw_sign_identity_check,
                              pw_sign_terms, reduce_unit_coefficients,
                              trivial_module, unit_cohomology)
from brpic.errors import InvalidModule, NotACocycle, NotAbelian, TooLarge
from brpic.fieldtable import COMPLEX, REALS, finite_field
from brpic.groups import abelian_group, named_group


# -- independent oracle: F_p ranks of a pointwise coboundary ---------------

def _coboundary_matrix(G, n, p):
    """d: C^n -> C^(n+1) over F_p for trivial coefficients, unnormalized."""
    src = list(product(G.elements(), repeat=n))
    tgt = list(product(G.elements(), repeat=n + 1))
    col = {t: j for j, t in enumerate(src)}
    rows = []
    for t in tgt:
        row = [0] * len(src)
        row[col[t[1:]]] += 1
        for i in range(1, n + 1):
            face = t[:i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]
            row[col[face]] += (-1) ** i
        row[col[t[:n]]] += (-1) ** (n + 1)
        rows.append([x % p for x in row])
    return rows, len(src)


def _rank_mod_p(rows, p):
    rows = [r[:] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oracle_dim(G, n, p):
    """dim_Fp H^n(G; F_p) = dim ker d_n - rank d_(n-1)."""
    dn, size = _coboundary_matrix(G, n, p)
    ker = size - _rank_mod_p(dn, p)
    prev = _rank_mod_p(_coboundary_matrix(G, n - 1, p)[0], p) if n else 0
    return ker - prev


@pytest.mark.parametrize("name, n, p", [
    ("C2", 1, 2), ("C2", 2, 2), ("C2", 3, 2), ("C3", 2, 3), ("C3", 2, 2),
    ("V4", 1, 2), ("V4", 2, 2), ("S3", 1, 2), ("S3", 2, 2), ("S3", 2, 3), ("C4", 2, 2),
])
def test_matches_fp_rank_oracle(name, n, p):
    G = named_group(name)
    h = cohomology(G, trivial_module(G, 0, (p,)), n)
    assert h.free_rank == 0
    assert all(d == p for d in h.invariant_factors)
    assert len(h.invariant_factors) == oracle_dim(G, n, p)


# -- second oracle: enumerate every normalized cochain ---------------------

def _enumerate_h(G, n, m):
    nontriv = [g for g in G.elements() if g]
    tuples = list(product(nontriv, repeat=n))
    zero = (0,)

    def cochain(vals):
        d = {t: zero for t in product(G.elements(), repeat=n)}
        d.update({t: (v,) for t, v in zip(tuples, vals)})
        return Cocycle(n, d)

    mod = trivial_module(G, 0, (m,))
    Z = [vals for vals in product(range(m), repeat=len(tuples))
         if is_cocycle(G, mod, cochain(vals))]
    # coboundaries of normalized (n-1)-cochains
    prev = list(product(nontriv, repeat=n - 1))
    B = set()
    for vals in product(range(m), repeat=len(prev)):
        f = {t: 0 for t in product(G.elements(), repeat=n - 1)}
        f.update(dict(zip(prev, vals)))
        img = []
        for t in tuples:
            s = f[t[1:]]
            for i in range(1, n):
                s += (-1) ** i * f[t[:i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]]
            s += (-1) ** n * f[t[:n - 1]]
            img.append(s % m)
        B.add(tuple(img))
    return len(Z) // len(B)


@pytest.mark.parametrize("name, n, m", [("C2", 2, 2), ("C3", 2, 3), ("V4", 2, 2),
                                        ("C4", 2, 2), ("C2", 3, 2), ("S3", 1, 2)])
def test_matches_cochain_enumeration(name, n, m):
    G = named_group(name)
    assert cohomology(G, trivial_module(G, 0, (m,)), n).order == _enumerate_h(G, n, m)


# -- known values ----------------------------------------------------------

@pytest.mark.parametrize("name, n, factors, free", [
    ("C3", 0, (), 1), ("C3", 1, (), 0), ("C3", 2, (3,), 0), ("C3", 3, (), 0), ("C3", 4, (3,), 0),
    ("S3", 2, (2,), 0), ("S3", 3, (), 0),
    ("V4", 2, (2, 2), 0), ("V4", 3, (2,), 0),
    ("Q8", 2, (2, 2), 0),
])
def test_integer_coefficients(name, n, factors, free):
    G = named_group(name)
    h = cohomology(G, trivial_module(G, 1), n)
    assert (h.invariant_factors, h.free_rank) == (factors, free)


def test_sign_module(sample):
    G = named_group("C2")
    M = module_from_json(sample("z_sign.json"), G)
    assert [str(cohomology(G, M, n)) for n in range(4)] == ["trivial", "Z/2", "trivial", "Z/2"]


@pytest.mark.parametrize("name, n, want", [
    ("V4", 2, (2, 2, 2)), ("C2", 3, (2,)), ("C2", 2, (2,)), ("S3", 2, (2,)), ("C3", 2, ()),
])
def test_real_units(name, n, want):
    assert unit_cohomology(named_group(name), REALS, n).invariant_factors == want


@pytest.mark.parametrize("name, n, want", [
    # Hom(G, C^x), Schur multipliers, and H^4(C2; Z)
    ("V4", 1, (2, 2)), ("S3", 1, (2,)), ("C3", 1, (3,)),
    ("V4", 2, (2,)), ("S3", 2, ()), ("C4", 2, ()), ("Q8", 2, ()),
    ("C2", 3, (2,)),
])
def test_complex_units(name, n, want):
    h = unit_cohomology(named_group(name), COMPLEX, n)
    assert h.free_rank == 0 and h.invariant_factors == want


def test_finite_field_units():
    C2 = named_group("C2")
    assert unit_cohomology(C2, finite_field(3), 1).invariant_factors == (2,)
    assert unit_cohomology(C2, finite_field(5), 2).invariant_factors == (2,)
    assert unit_cohomology(C2, finite_field(2), 2).is_trivial()


def test_reduce_rejects_degree_zero():
    with pytest.raises(ValueError):
        reduce_unit_coefficients(REALS, 0, named_group("C2"))


def test_negative_degree():
    G = named_group("C2")
    with pytest.raises(ValueError):
        cohomology(G, trivial_module(G, 1), -1)


def test_invalid_modules():
    G = named_group("C2")
    with pytest.raises(InvalidModule):
        make_module(G, 0, (2, 3))                 # not a divisibility chain
    with pytest.raises(InvalidModule):
        make_module(G, 1, (), {1: [[2]]})         # g^2 acts as 4, not 1
    with pytest.raises(InvalidModule):
        make_module(G, 0, (1,))


@pytest.mark.parametrize("name", ["C2", "C3", "V4", "S3", "Q8"])
def test_dd_zero(name):
    G = named_group(name)
    mods = [trivial_module(G, 0, (2,)), trivial_module(G, 1),
            reduce_unit_coefficients(COMPLEX, 1, G)]
    for m in mods:
        for n in range(4):
            if G.order ** (n + 2) > 10 ** 5:
                break
            assert dd_is_zero(n, G, m)


# -- representatives and classes ------------------------------------------

@pytest.mark.parametrize("name, n", [("V4", 2), ("C2", 3), ("S3", 1), ("C3", 2)])
def test_representatives_are_distinct_cocycles(name, n):
    G = named_group(name)
    m = trivial_module(G, 0, (2,)) if name != "C3" else trivial_module(G, 0, (3,))
    reps = cocycle_representatives(G, m, n)
    assert len(reps) == cohomology(G, m, n).order
    classes = [tuple(cohomology_class(G, m, c)) for c in reps]
    assert len(set(classes)) == len(reps)
    assert all(is_cocycle(G, m, c) for c in reps)
    assert not any(classes[0])


def test_coboundary_has_zero_class():
    G = abelian_group((2, 2))
    m = trivial_module(G, 0, (2,))
    f = [0, 1, 1, 0]
    dcob = cocycle_from_function(G, 2, lambda a, b: (f[b] - f[G.mul(a, b)] + f[a]) % 2)
    assert is_cocycle(G, m, dcob)
    assert not any(cohomology_class(G, m, dcob))


def test_non_normalized_rejected():
    G = named_group("C2")
    m = trivial_module(G, 0, (2,))
    with pytest.raises(NotACocycle):
        cohomology_class(G, m, cocycle_from_function(G, 2, lambda a, b: 1))


def test_representatives_refuse_free_part():
    G = named_group("C2")
    with pytest.raises(TooLarge):
        cocycle_representatives(G, trivial_module(G, 1), 0)


def test_symmetric_cocycle():
    G = abelian_group((2, 2))
    sym = cocycle_from_function(G, 2, lambda a, b: (a & 1) * (b & 1))
    asym = cocycle_from_function(G, 2, lambda a, b: ((a >> 1) & 1) * (b & 1))
    assert is_symmetric_cocycle(sym, G) and not is_symmetric_cocycle(asym, G)
    S3 = named_group("S3")
    with pytest.raises(NotAbelian):
        is_symmetric_cocycle(cocycle_from_function(S3, 2, lambda a, b: 0), S3)


def test_pw_sign_identity():
    terms = pw_sign_terms()
    assert len(terms) == 16
    assert all(((-1) ** e) == 1 for e in terms.values())
    assert pw_sign_identity_check()
