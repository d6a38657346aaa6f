"""Constructions of classical modular invariants.

Dickson invariants of the full linear group, the xi family for the
symplectic group, elementary symmetric polynomials with the Vandermonde
determinant for the alternating group, and exact matrix machinery over
finite fields for invariance checks.

The Dickson invariants c_0, ..., c_{n-1} of GL_n(F_q) are defined by

    prod over v in the F_q-span of x_1..x_n of (T - v)
        = T^(q^n) - c_{n-1} T^(q^{n-1}) + ... + (-1)^n c_0 T,

so c_i is (-1)^(n-i) times the coefficient of T^(q^i).  The production
path runs the additive recursion

    f_0(T) = T,    f_j(T) = f_{j-1}(T)^q - f_{j-1}(X_j)^(q-1) f_{j-1}(T),

whose coefficients stay in the prime field at every step.  The product
over all q^n linear forms is kept as a separate oracle for tiny cases.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product
from typing import Optional, Sequence

from .errors import ContextMismatch, ResourceLimit, UsageError
from .gf import FieldElement, FieldSpec, field
from .mpoly import Polynomial, PolyRing, frobenius_power

TREE_CAP = 64     # refuse the product-of-linear-forms oracle past q^n of this


def xring(spec: FieldSpec, n: int, prefix: str = "x", order="grevlex") -> PolyRing:
    return PolyRing(spec, [f"{prefix}{i}" for i in range(1, n + 1)], order)


def lift_coefficients(f: Polynomial, spec: FieldSpec) -> Polynomial:
    """The same polynomial with prime-field coefficients embedded into an
    extension of the same characteristic."""
    ring = f.ring
    if ring.field == spec:
        return f
    if ring.field.e != 1 or spec.p != ring.field.p:
        raise ContextMismatch("can only lift prime-field coefficients")
    new_ring = PolyRing(spec, ring.names, ring.order)
    pad = (0,) * (spec.e - 1)
    return Polynomial(new_ring, {k: (c,) + pad for k, c in f.terms.items()})


# ---------------------------------------------------------------------------
# Dickson invariants
# ---------------------------------------------------------------------------


def dickson_invariants(n: int, q_spec: FieldSpec,
                       ring: Optional[PolyRing] = None) -> list:
    """c_0, ..., c_{n-1} for GL_n(F_q), as polynomials over GF(p)."""
    if n < 1:
        raise UsageError("need n >= 1")
    q = q_spec.order
    e = q_spec.e
    if ring is None:
        ring = xring(field(q_spec.p), n)
    elif ring.nvars != n:
        raise UsageError("ring has the wrong number of variables")

    # b[k] = coefficient of T^(q^k) in f_j
    b = [ring.one]
    for j in range(1, n + 1):
        xj = ring.gen(j - 1)
        fx = ring.zero
        for k in range(j):
            fx = fx + b[k] * xj ** (q ** k)
        u = fx ** (q - 1)
        nb = []
        for k in range(j + 1):
            term = frobenius_power(b[k - 1], e) if k >= 1 else ring.zero
            if k < j:
                term = term - u * b[k]
            nb.append(term)
        b = nb
    assert b[n] == ring.one
    out = []
    for i in range(n):
        ci = b[i] if (n - i) % 2 == 0 else -b[i]
        out.append(ci)
    return out


def dickson_product_tree(n: int, q_spec: FieldSpec) -> list:
    """Oracle: expand the defining product over all q^n linear forms.

    Exponential in n; guarded by TREE_CAP.  Returns the same list as
    dickson_invariants, over GF(p), after checking that every
    coefficient of the product collapses into the prime field.
    """
    q = q_spec.order
    if q ** n > TREE_CAP:
        raise ResourceLimit(f"q^n = {q ** n} exceeds oracle cap {TREE_CAP}")
    ring = xring(q_spec, n)
    gens = ring.gens()

    # one factor per vector: T - (v . x), held as {T-degree: coefficient}
    factors = []
    for idx in product(range(q), repeat=n):
        ell = ring.zero
        for i, vi in enumerate(idx):
            coeff = q_spec.from_index(vi)
            if coeff:
                ell = ell + gens[i] * coeff
        f = {1: ring.one}
        if ell:
            f[0] = -ell
        factors.append(f)

    while len(factors) > 1:
        nxt = []
        for i in range(0, len(factors) - 1, 2):
            nxt.append(_tmul(factors[i], factors[i + 1]))
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    poly_in_t = factors[0]

    expected = {q ** k for k in range(n + 1)}
    if set(poly_in_t) != expected:
        raise AssertionError("product is not q-linearized")
    prime_ring = xring(field(q_spec.p), n)
    out = []
    for i in range(n):
        coeff_poly = poly_in_t.get(q ** i, ring.zero)
        # (-1)^(n-i) c_i is the T^(q^i) coefficient
        ci = _demote(coeff_poly, prime_ring)
        if (n - i) % 2 == 1:
            ci = -ci
        out.append(ci)
    assert _demote(poly_in_t[q ** n], prime_ring) == prime_ring.one
    return out


def _tmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, fa in a.items():
        for db, fb in b.items():
            d = da + db
            prod = fa * fb
            cur = out.get(d)
            out[d] = prod if cur is None else cur + prod
    return {d: f for d, f in out.items() if not f.is_zero()}


def _demote(f: Polynomial, prime_ring: PolyRing) -> Polynomial:
    """Extension-coefficient polynomial whose coefficients are constants,
    rewritten over the prime field."""
    if f.ring.field.e == 1:
        return Polynomial(prime_ring, dict(f.terms))
    terms = {}
    for k, rep in f.terms.items():
        if any(rep[1:]):
            raise AssertionError("coefficient does not lie in the prime field")
        terms[k] = rep[0]
    return Polynomial(prime_ring, terms)


def dickson_at_point(point: Sequence[FieldElement], q: int) -> list:
    """Values c_0(P), ..., c_{n-1}(P) by running the recursion on field
    elements; nothing is materialized."""
    L = point[0].spec
    n = len(point)
    b = [L.one]
    for j in range(1, n + 1):
        xj = point[j - 1]
        fx = L.zero
        for k in range(j):
            fx = fx + b[k] * xj ** (q ** k)
        u = fx ** (q - 1)
        nb = []
        for k in range(j + 1):
            val = b[k - 1] ** q if k >= 1 else L.zero
            if k < j:
                val = val - u * b[k]
            nb.append(val)
        b = nb
    out = []
    for i in range(n):
        out.append(b[i] if (n - i) % 2 == 0 else -b[i])
    return out


# ---------------------------------------------------------------------------
# Symplectic invariants
# ---------------------------------------------------------------------------


def symplectic_xi(ring: PolyRing, q: int, i: int) -> Polynomial:
    """xi_i = sum over pairs (X_{2k-1} X_{2k}^(q^i) - X_{2k} X_{2k-1}^(q^i));
    an Sp_{2n}(F_q) invariant of degree q^i + 1."""
    if ring.nvars % 2:
        raise UsageError("symplectic constructions need evenly many variables")
    if i < 1:
        raise UsageError("xi index starts at 1")
    gens = ring.gens()
    acc = ring.zero
    qi = q ** i
    for k in range(ring.nvars // 2):
        a, b = gens[2 * k], gens[2 * k + 1]
        acc = acc + a * b ** qi - b * a ** qi
    return acc


def symplectic_xi_value(point: Sequence[FieldElement], q: int, i: int) -> FieldElement:
    L = point[0].spec
    acc = L.zero
    qi = q ** i
    for k in range(len(point) // 2):
        a, b = point[2 * k], point[2 * k + 1]
        acc = acc + a * b ** qi - b * a ** qi
    return acc


def symplectic_relation_sides(ring: PolyRing, q_spec: FieldSpec, i: int,
                              dicksons: Sequence[Polynomial],
                              xis: Sequence[Polynomial]):
    """Materialized sides of the i-th Carlisle-Kropholler relation

        sum_{j=0}^{i-1} (-1)^j xi_{i-j}^(q^j) c_j
            = sum_{j=i+1}^{2n} (-1)^j xi_{j-i}^(q^i) c_j,   c_{2n} = 1,

    for 1 <= i <= n-1.  dicksons lists c_0..c_{2n-1}; xis lists
    xi_1..xi_{2n-1} (index shifted by one).
    """
    m = ring.nvars              # 2n
    e = q_spec.e
    if not 1 <= i <= m // 2 - 1:
        raise UsageError(f"relation index must be in [1, {m // 2 - 1}]")
    lhs = ring.zero
    for j in range(i):
        term = frobenius_power(xis[i - j - 1], e * j) * dicksons[j]
        lhs = lhs + (term if j % 2 == 0 else -term)
    rhs = ring.zero
    for j in range(i + 1, m + 1):
        xi_part = frobenius_power(xis[j - i - 1], e * i)
        term = xi_part * dicksons[j] if j < m else xi_part
        rhs = rhs + (term if j % 2 == 0 else -term)
    return lhs, rhs


def symplectic_relation_values(point: Sequence[FieldElement], q: int, i: int):
    """Numeric twin of symplectic_relation_sides at one point."""
    L = point[0].spec
    m = len(point)
    c = dickson_at_point(point, q)
    xi_val = [symplectic_xi_value(point, q, k) for k in range(1, m)]
    lhs = L.zero
    for j in range(i):
        term = xi_val[i - j - 1] ** (q ** j) * c[j]
        lhs = lhs + (term if j % 2 == 0 else -term)
    rhs = L.zero
    for j in range(i + 1, m + 1):
        xi_part = xi_val[j - i - 1] ** (q ** i)
        term = xi_part * c[j] if j < m else xi_part
        rhs = rhs + (term if j % 2 == 0 else -term)
    return lhs, rhs


def relation_side_degrees(q: int, m: int, i: int):
    """Total degrees of the two relation sides; deg c_j = q^m - q^j and
    deg xi_k = q^k + 1."""
    lhs = max(q ** j * (q ** (i - j) + 1) + (q ** m - q ** j) for j in range(i))
    rhs_terms = []
    for j in range(i + 1, m + 1):
        d = q ** i * (q ** (j - i) + 1)
        if j < m:
            d += q ** m - q ** j
        rhs_terms.append(d)
    return lhs, max(rhs_terms)


# ---------------------------------------------------------------------------
# Matrices over finite fields
# ---------------------------------------------------------------------------


class MatrixGF:
    """Small dense matrix with FieldElement entries."""

    __slots__ = ("spec", "rows")

    def __init__(self, spec: FieldSpec, rows: tuple):
        self.spec = spec
        self.rows = rows

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "MatrixGF":
        n = len(rows)
        out = []
        for row in rows:
            if len(row) != n:
                raise UsageError("matrix must be square")
            out.append(tuple(spec.element(x) for x in row))
        return cls(spec, tuple(out))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "MatrixGF":
        return cls.diagonal(spec, [1] * n)

    @classmethod
    def diagonal(cls, spec: FieldSpec, entries) -> "MatrixGF":
        n = len(entries)
        rows = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(spec, rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, MatrixGF) and self.spec == other.spec
                and self.rows == other.rows)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __mul__(self, other: "MatrixGF") -> "MatrixGF":
        if not isinstance(other, MatrixGF):
            return NotImplemented
        if other.spec != self.spec or other.n != self.n:
            raise ContextMismatch("matrix shapes or fields differ")
        n = self.n
        cols = list(zip(*other.rows))
        rows = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = self.spec.zero
                for a, b in zip(r, c):
                    acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return MatrixGF(self.spec, tuple(rows))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.spec, tuple(zip(*self.rows)))

    def det(self) -> FieldElement:
        n = self.n
        m = [list(r) for r in self.rows]
        det = self.spec.one
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col]), None)
            if pivot is None:
                return self.spec.zero
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det = det * m[col][col]
            inv = m[col][col].inverse()
            for r in range(col + 1, n):
                if m[r][col]:
                    f = m[r][col] * inv
                    for c in range(col, n):
                        m[r][c] = m[r][c] - f * m[col][c]
        return det

    def is_invertible(self) -> bool:
        return bool(self.det())

    def apply_point(self, point: Sequence[FieldElement]) -> tuple:
        """Matrix-vector product; prime-field entries act on points of any
        extension of the same characteristic."""
        if len(point) != self.n:
            raise UsageError("dimension mismatch")
        L = point[0].spec
        if self.spec.e == 1:
            if L.p != self.spec.p:
                raise ContextMismatch("characteristic mismatch")
            out = []
            for row in self.rows:
                acc = L.zero
                for a, x in zip(row, point):
                    if a.rep[0]:
                        acc = acc + a.rep[0] * x
                out.append(acc)
            return tuple(out)
        if L != self.spec:
            raise ContextMismatch("extension matrices act on their own field")
        return tuple(sum((a * x for a, x in zip(row, point)), L.zero)
                     for row in self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"<matrix {self.n}x{self.n} over {self.spec}: {body}>"


def symplectic_form(spec: FieldSpec, n: int) -> MatrixGF:
    """Block-diagonal J with 2x2 blocks [[0, 1], [-1, 0]]."""
    size = 2 * n
    rows = [[0] * size for _ in range(size)]
    for k in range(n):
        rows[2 * k][2 * k + 1] = 1
        rows[2 * k + 1][2 * k] = -1
    return MatrixGF.from_rows(spec, rows)


def is_symplectic(M: MatrixGF) -> bool:
    if M.n % 2:
        return False
    J = symplectic_form(M.spec, M.n // 2)
    return M.transpose() * J * M == J


def symplectic_transvection(spec: FieldSpec, n: int, v: Sequence, lam) -> MatrixGF:
    """I - lam * v (v^T J): fixes the hyperplane orthogonal to v."""
    size = 2 * n
    J = symplectic_form(spec, n)
    vv = [spec.element(x) for x in v]
    if len(vv) != size:
        raise UsageError("vector has the wrong dimension")
    lam = spec.element(lam)
    vtj = [sum((vv[k] * J.rows[k][j] for k in range(size)), spec.zero)
           for j in range(size)]
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            x = spec.one if i == j else spec.zero
            row.append(x - lam * vv[i] * vtj[j])
        rows.append(tuple(row))
    return MatrixGF(spec, tuple(rows))


def random_symplectic(spec: FieldSpec, n: int, rng, factors: int = 12) -> MatrixGF:
    """Product of random symplectic transvections (they generate Sp_2n)."""
    size = 2 * n
    M = MatrixGF.identity(spec, size)
    for _ in range(factors):
        while True:
            v = [spec.random_element(rng) for _ in range(size)]
            if any(v):
                break
        lam = spec.random_element(rng)
        M = M * symplectic_transvection(spec, n, v, lam)
    assert is_symplectic(M)
    return M


def random_invertible(spec: FieldSpec, n: int, rng) -> MatrixGF:
    while True:
        M = MatrixGF(spec, tuple(tuple(spec.random_element(rng) for _ in range(n))
                                 for _ in range(n)))
        if M.is_invertible():
            return M


def apply_matrix(f: Polynomial, M: MatrixGF) -> Polynomial:
    """Substitute X_j -> sum_k M[k][j] X_k.  Prime-field polynomials meet
    extension matrices in a ring over the matrix field."""
    ring = f.ring
    if M.n != ring.nvars:
        raise UsageError("matrix size does not match the variable count")
    if M.spec != ring.field:
        if ring.field.e != 1 or ring.field.p != M.spec.p:
            raise ContextMismatch("incompatible matrix and coefficient fields")
        f = lift_coefficients(f, M.spec)
        ring = f.ring
    gens = ring.gens()
    images = []
    for j in range(ring.nvars):
        form = ring.zero
        for k in range(ring.nvars):
            entry = M.rows[k][j]
            if entry:
                form = form + gens[k] * entry
        images.append(form)
    caches: list[dict] = [{} for _ in range(ring.nvars)]

    def image_power(j: int, a: int) -> Polynomial:
        cache = caches[j]
        got = cache.get(a)
        if got is None:
            got = images[j] ** a
            cache[a] = got
        return got

    unpack = ring.order.unpack
    acc = ring.zero
    for key, c in f.terms.items():
        term = ring.constant(ring.coeff_element(c))
        for j, a in enumerate(unpack(key)):
            if a:
                term = term * image_power(j, a)
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# Alternating group ingredients
# ---------------------------------------------------------------------------


def elementary_symmetric(ring: PolyRing, k: int) -> Polynomial:
    n = ring.nvars
    if not 0 <= k <= n:
        raise UsageError(f"e_k needs 0 <= k <= {n}")
    if k == 0:
        return ring.one
    terms = {}
    for comb in combinations(range(n), k):
        e = [0] * n
        for i in comb:
            e[i] = 1
        terms[tuple(e)] = 1
    return ring.from_terms(terms)


def truncated_monomial_sum(ring: PolyRing, i: int, j: int) -> Polynomial:
    """T_j^i: the sum of all monomials of degree i in X_j, ..., X_n
    (variables indexed from 1)."""
    n = ring.nvars
    if not 1 <= j <= n:
        raise UsageError(f"j must be in [1, {n}]")
    if i < 0:
        raise UsageError("degree must be nonnegative")
    if i == 0:
        return ring.one
    terms = {}
    for comb in combinations_with_replacement(range(j - 1, n), i):
        e = [0] * n
        for v in comb:
            e[v] += 1
        terms[tuple(e)] = 1
    return ring.from_terms(terms)


def vandermonde(ring: PolyRing) -> Polynomial:
    """prod over i < j of (X_j - X_i), the alternating group's extra
    invariant."""
    gens = ring.gens()
    acc = ring.one
    for jj in range(1, ring.nvars):
        for ii in range(jj):
            acc = acc * (gens[jj] - gens[ii])
    return acc


def staircase_monomial(ring: PolyRing, i: int) -> Polynomial:
    """X_i^i * prod_{r=i+1}^{n} X_r^{r-1}, for 1 <= i <= n."""
    n = ring.nvars
    if not 1 <= i <= n:
        raise UsageError(f"i must be in [1, {n}]")
    e = [0] * n
    e[i - 1] = i
    for r in range(i + 1, n + 1):
        e[r - 1] = r - 1
    return ring.monomial(e)
