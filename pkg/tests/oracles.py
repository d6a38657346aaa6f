"""Independent reference implementations used only by tests.

Everything here is deliberately naive: dense exponent-tuple arithmetic,
reference comparators straight from the textbook definitions, and a
linear-algebra ideal membership decision that never touches the
Groebner machinery it is meant to check.
"""

from itertools import product

from invar.gf import field
from invar.mpoly import PolyRing, Polynomial


def random_poly(ring, rng, nterms=6, maxdeg=4):
    """Random sparse polynomial with exponents below maxdeg per variable."""
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randrange(maxdeg + 1) for _ in range(ring.nvars))
        terms[exps] = rng.randrange(ring.field.order)
    return ring.from_terms({e: ring.field.from_index(c) if ring.field.e > 1 else c
                            for e, c in terms.items()})


# -- reference monomial comparators ------------------------------------------


def grevlex_sort_key(exps):
    return (sum(exps),) + tuple(-exps[i] for i in range(len(exps) - 1, 0, -1))


def lex_sort_key(exps):
    return tuple(exps)


def block_sort_key(exps, k):
    return (grevlex_sort_key(exps[:k]), grevlex_sort_key(exps[k:]))


# -- dense reference arithmetic ------------------------------------------------


def naive_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    unpack = ring.order.unpack
    acc = {}
    for kf, cf in f.terms.items():
        ef = unpack(kf)
        for kg, cg in g.terms.items():
            eg = unpack(kg)
            e = tuple(a + b for a, b in zip(ef, eg))
            prod = ring._cmul(cf, cg)
            cur = acc.get(e)
            if cur is None:
                acc[e] = prod
            else:
                s = ring._cadd(cur, prod)
                if s is None:
                    del acc[e]
                else:
                    acc[e] = s
    return Polynomial(ring, {ring.order.pack(e): c for e, c in acc.items()})


def eval_by_substitution(f: Polynomial, point):
    """Term-by-term evaluation using only field element arithmetic."""
    L = point[0].spec
    unpack = f.ring.order.unpack
    total = L.zero
    for key, c in f.terms.items():
        exps = unpack(key)
        if f.ring.field.e == 1:
            acc = L.element(c)
        else:
            acc = f.ring.coeff_element(c)
        for x, a in zip(point, exps):
            for _ in range(a):
                acc = acc * x
        total = total + acc
    return total


# -- linear-algebra ideal membership -------------------------------------------


def membership_by_linear_algebra(f, gens, degree_cap=12):
    """Decide homogeneous ideal membership over a prime field by row
    reduction: f (homogeneous of degree d) lies in (gens) iff it is a
    GF(p) linear combination of m*g for generators g and monomials m
    with deg(m*g) = d.  Exact but exponential in variables; keep the
    degree and variable count small.
    """
    ring = f.ring
    assert ring.field.e == 1, "prime fields only"
    p = ring.field.p
    d = f.total_degree()
    if f.is_zero():
        return True
    assert f.is_homogeneous(), "homogeneous targets only"
    assert d <= degree_cap
    unpack, pack = ring.order.unpack, ring.order.pack

    def monomials_of_degree(k):
        for exps in product(range(k + 1), repeat=ring.nvars):
            if sum(exps) == k:
                yield exps

    rows = []
    for g in gens:
        if g.is_zero():
            continue
        assert g.is_homogeneous()
        dg = g.total_degree()
        if dg > d:
            continue
        for m in monomials_of_degree(d - dg):
            shifted = {}
            for key, c in g.terms.items():
                e = tuple(a + b for a, b in zip(unpack(key), m))
                shifted[pack(e)] = c
            rows.append(shifted)

    cols = sorted({k for row in rows for k in row} | set(f.terms), reverse=True)
    col_index = {k: i for i, k in enumerate(cols)}
    matrix = []
    for row in rows:
        vec = [0] * len(cols)
        for k, c in row.items():
            vec[col_index[k]] = c
        matrix.append(vec)
    target = [0] * len(cols)
    for k, c in f.terms.items():
        target[col_index[k]] = c

    # row reduce [matrix | target is solvable] over GF(p)
    pivots = {}
    for vec in matrix:
        vec = vec[:]
        for col, pivot_row in pivots.items():
            if vec[col]:
                factor = vec[col]
                vec = [(a - factor * b) % p for a, b in zip(vec, pivot_row)]
        lead = next((i for i, a in enumerate(vec) if a), None)
        if lead is not None:
            inv = pow(vec[lead], p - 2, p)
            pivots[lead] = [(a * inv) % p for a in vec]
    for col, pivot_row in pivots.items():
        if target[col]:
            factor = target[col]
            target = [(a - factor * b) % p for a, b in zip(target, pivot_row)]
    return not any(target)
