"""Sparse multivariate polynomials over finite fields.

Terms are stored as a dict mapping packed integer keys to nonzero
coefficients.  Keys are packed so that the natural integer ordering of
keys coincides with the ring's monomial order, and so that monomial
multiplication is key addition up to a constant offset.  This keeps the
hot paths (merging, leading-term lookup, heap reduction) on machine
integers.

Each exponent occupies a 28 bit field inside the key.  Per-variable
exponents are capped at EXP_CAP and term counts during multiplication at
TERM_GUARD; both are module-level and may be adjusted.  Grevlex keys
carry an explicit total-degree field, so exponents stay far away from
the 28 bit boundary for any computation these caps admit.

Coefficients live in GF(p^e): stored as canonical ints in [1, p) when
e = 1 and as coefficient tuples otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import ContextMismatch, ResourceLimit, UsageError
from .gf import FieldElement, FieldSpec, _poly_text

EXP_CAP = 1 << 20
TERM_GUARD = 10 ** 7

_W = 28
_M = 1 << 27
_FMASK = (1 << _W) - 1

_ORDER_KINDS = ("grevlex", "lex", "block")


class TermOrder:
    """Monomial order realized as an order isomorphism into the integers.

    grevlex: key fields are [totdeg][M - a_n][M - a_{n-1}]...[M - a_2],
    most significant first, with bias M = 2^27.  lex: [a_1][a_2]...[a_n].
    block(k): a grevlex key on the first k variables concatenated above a
    grevlex key on the rest, which gives the elimination property for
    the first block.
    """

    __slots__ = ("kind", "n", "block", "offset", "_top_shift")

    def __init__(self, kind: str, n: int, block: int = 0):
        if kind not in _ORDER_KINDS:
            raise UsageError(f"unknown order {kind!r}")
        if n < 1:
            raise UsageError("need at least one variable")
        if kind == "block" and not 1 <= block < n:
            raise UsageError(f"block size {block} must be in [1, {n})")
        self.kind = kind
        self.n = n
        self.block = block if kind == "block" else 0
        self.offset = self._pack_raw((0,) * n)
        self._top_shift = _W * (n - 1)

    # grevlex key of an exponent slice, totdeg field on top
    @staticmethod
    def _grevlex_key(exps: Sequence[int]) -> int:
        key = sum(exps)
        for i in range(len(exps) - 1, 0, -1):
            key = (key << _W) | (_M - exps[i])
        return key

    @staticmethod
    def _grevlex_unpack(key: int, n: int) -> tuple:
        rest = []
        for _ in range(n - 1):
            # bottom field is a_2, then a_3, ..., a_n
            rest.append(_M - (key & _FMASK))
            key >>= _W
        total = key
        return (total - sum(rest),) + tuple(rest)

    def _pack_raw(self, exps: Sequence[int]) -> int:
        if self.kind == "lex":
            key = 0
            for a in exps:
                key = (key << _W) | a
            return key
        if self.kind == "grevlex":
            return self._grevlex_key(exps)
        k = self.block
        hi = self._grevlex_key(exps[:k])
        lo = self._grevlex_key(exps[k:])
        return (hi << (_W * (self.n - k))) | lo

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise UsageError(f"expected {self.n} exponents, got {len(exps)}")
        cap = EXP_CAP
        for a in exps:
            if not 0 <= a < cap:
                raise ResourceLimit(f"exponent {a} outside [0, {cap})")
        return self._pack_raw(exps)

    def unpack(self, key: int) -> tuple:
        if self.kind == "lex":
            out = []
            for _ in range(self.n):
                out.append(key & _FMASK)
                key >>= _W
            return tuple(reversed(out))
        if self.kind == "grevlex":
            return self._grevlex_unpack(key, self.n)
        k = self.block
        lo_width = _W * (self.n - k)
        hi = self._grevlex_unpack(key >> lo_width, k)
        lo = self._grevlex_unpack(key & ((1 << lo_width) - 1), self.n - k)
        return hi + lo

    def mul_key(self, k1: int, k2: int) -> int:
        return k1 + k2 - self.offset

    def quo_key(self, k_num: int, k_den: int) -> int:
        """Key of the monomial quotient; caller guarantees divisibility."""
        return k_num - k_den + self.offset

    def total_degree_of(self, key: int) -> int:
        if self.kind == "grevlex":
            return key >> self._top_shift
        return sum(self.unpack(key))

    def __eq__(self, other):
        return (isinstance(other, TermOrder) and self.kind == other.kind
                and self.n == other.n and self.block == other.block)

    def __hash__(self):
        return hash((self.kind, self.n, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.block})"
        return self.kind


def _valid_name(name: str) -> bool:
    if not name or name == "g":
        return False
    if not (name[0].isalpha() or name[0] == "_"):
        return False
    return all(ch.isalnum() or ch == "_" for ch in name)


class PolyRing:
    """A polynomial ring: coefficient field, variable names, term order.

    The name 'g' is reserved for the extension field generator.
    """

    __slots__ = ("field", "names", "order", "_gens", "_index")

    def __init__(self, field_spec: FieldSpec, names: Sequence[str], order="grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UsageError("duplicate variable names")
        for nm in names:
            if not _valid_name(nm):
                raise UsageError(f"invalid variable name {nm!r}")
        if isinstance(order, TermOrder):
            if order.n != len(names):
                raise UsageError("order arity does not match variable count")
        elif isinstance(order, tuple):
            order = TermOrder("block", len(names), block=order[1])
        else:
            order = TermOrder(order, len(names))
        self.field = field_spec
        self.names = names
        self.order = order
        self._index = {nm: i for i, nm in enumerate(names)}
        self._gens = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    # -- coefficient normalization -------------------------------------------

    def _coeff(self, value):
        """Canonical internal coefficient, or None for zero."""
        F = self.field
        if isinstance(value, FieldElement):
            if value.spec != F:
                raise ContextMismatch(f"coefficient from {value.spec} in ring over {F}")
            if F.e == 1:
                return value.rep[0] or None
            return value.rep if any(value.rep) else None
        if isinstance(value, int):
            v = value % F.p
            if F.e == 1:
                return v or None
            return ((v,) + (0,) * (F.e - 1)) if v else None
        if isinstance(value, tuple) and F.e > 1:
            if len(value) != F.e:
                raise UsageError("coefficient tuple has wrong length")
            rep = tuple(c % F.p for c in value)
            return rep if any(rep) else None
        raise UsageError(f"cannot use {value!r} as a coefficient")

    def coeff_element(self, c) -> FieldElement:
        """Internal coefficient back to a field element."""
        if isinstance(c, int):
            return self.field.element(c)
        return FieldElement(self.field, c)

    # -- construction ----------------------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value) -> "Polynomial":
        c = self._coeff(value)
        if c is None:
            return Polynomial(self, {})
        return Polynomial(self, {self.order.pack((0,) * self.nvars): c})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self._coeff(coeff)
        if c is None:
            return Polynomial(self, {})
        return Polynomial(self, {self.order.pack(exps): c})

    def gens(self) -> tuple:
        if self._gens is None:
            out = []
            for i in range(self.nvars):
                e = [0] * self.nvars
                e[i] = 1
                out.append(self.monomial(e))
            self._gens = tuple(out)
        return self._gens

    def gen(self, name_or_index) -> "Polynomial":
        if isinstance(name_or_index, str):
            if name_or_index not in self._index:
                raise UsageError(f"no variable named {name_or_index!r}")
            return self.gens()[self._index[name_or_index]]
        return self.gens()[name_or_index]

    def from_terms(self, mapping) -> "Polynomial":
        terms = {}
        pack = self.order.pack
        for exps, coeff in mapping.items():
            c = self._coeff(coeff)
            if c is None:
                continue
            key = pack(tuple(exps))
            if key in terms:
                merged = self._cadd(terms[key], c)
                if merged is None:
                    del terms[key]
                else:
                    terms[key] = merged
            else:
                terms[key] = c
        return Polynomial(self, terms)

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    # -- internal coefficient arithmetic ---------------------------------------

    def _cadd(self, c1, c2):
        F = self.field
        if F.e == 1:
            s = (c1 + c2) % F.p
            return s or None
        s = F._vadd(c1, c2)
        return s if any(s) else None

    def _cneg(self, c):
        F = self.field
        if F.e == 1:
            return (-c) % F.p
        return F._vneg(c)

    def _cmul(self, c1, c2):
        F = self.field
        if F.e == 1:
            return (c1 * c2) % F.p
        return F._vmul(c1, c2)

    def _cinv(self, c):
        F = self.field
        if F.e == 1:
            return pow(c, F.p - 2, F.p)
        return F._vinv(c)

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.order == other.order)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}; {self.order!r}]"


class Polynomial:
    """Immutable sparse polynomial; do not mutate .terms."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        tdeg = self.ring.order.total_degree_of
        return max(tdeg(k) for k in self.terms)

    def degree_in(self, var) -> int:
        if not self.terms:
            return -1
        i = self.ring._index[var] if isinstance(var, str) else var
        unpack = self.ring.order.unpack
        return max(unpack(k)[i] for k in self.terms)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        if not self.terms:
            return -1
        unpack = self.ring.order.unpack
        return max(sum(w * a for w, a in zip(weights, unpack(k))) for k in self.terms)

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        if not self.terms:
            return True
        unpack = self.ring.order.unpack
        if weights is None:
            weights = (1,) * self.ring.nvars
        degs = {sum(w * a for w, a in zip(weights, unpack(k))) for k in self.terms}
        return len(degs) == 1

    def leading_key(self) -> int:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        return max(self.terms)

    def leading_exponents(self) -> tuple:
        return self.ring.order.unpack(self.leading_key())

    def leading_coeff(self):
        return self.ring.coeff_element(self.terms[self.leading_key()])

    def leading_monomial(self) -> "Polynomial":
        return Polynomial(self.ring, {self.leading_key(): self.ring._coeff(1)})

    def leading_term(self) -> "Polynomial":
        k = self.leading_key()
        return Polynomial(self.ring, {k: self.terms[k]})

    def coeff_of(self, exps) -> FieldElement:
        key = self.ring.order.pack(tuple(exps))
        c = self.terms.get(key)
        if c is None:
            return self.ring.field.zero
        return self.ring.coeff_element(c)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring._cinv(self.terms[self.leading_key()])
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        cc = self.ring._coeff(c) if not _is_internal_coeff(self.ring, c) else c
        if cc is None:
            return Polynomial(self.ring, {})
        cmul = self.ring._cmul
        return Polynomial(self.ring, {k: cmul(v, cc) for k, v in self.terms.items()})

    def sorted_terms(self, reverse: bool = True):
        """(exponents, coefficient element) pairs, descending by default."""
        unpack = self.ring.order.unpack
        ce = self.ring.coeff_element
        for k in sorted(self.terms, reverse=reverse):
            yield unpack(k), ce(self.terms[k])

    # -- ring operations -----------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch("operands from different rings")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        big, small = (self.terms, o.terms)
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        cadd = self.ring._cadd
        for k, c in small.items():
            cur = out.get(k)
            if cur is None:
                out[k] = c
            else:
                s = cadd(cur, c)
                if s is None:
                    del out[k]
                else:
                    out[k] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        cneg = self.ring._cneg
        return Polynomial(self.ring, {k: cneg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self.__add__(-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return o.__add__(-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.ring._coeff(other)
            if c is None:
                return Polynomial(self.ring, {})
            return self.scale(c)
        o = self._check(other)
        if o is NotImplemented:
            return o
        return _mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise UsageError("negative polynomial power")
        if k == 0:
            return self.ring.one
        if k == 1:
            return self
        # cheap amplification guard; multiplication itself stays unchecked
        unpack = self.ring.order.unpack
        max_exp = max(max(unpack(key)) for key in self.terms) if self.terms else 0
        if max_exp * k >= EXP_CAP:
            raise ResourceLimit(
                f"power {k} would push exponents past {EXP_CAP}")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else _mul(result, base)
            k >>= 1
            if k:
                base = _mul(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.ring.constant(other)
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    # -- evaluation ------------------------------------------------------------------

    def evaluate(self, point: Sequence[FieldElement]) -> FieldElement:
        """Evaluate at a point with coordinates in one field L.

        L must share the characteristic; prime-field coefficients embed
        into any such L, extension coefficients require L to be the
        coefficient field itself.
        """
        ring = self.ring
        if len(point) != ring.nvars:
            raise UsageError(f"expected {ring.nvars} coordinates")
        L = point[0].spec
        for x in point:
            if x.spec != L:
                raise ContextMismatch("point coordinates from different fields")
        if L.p != ring.field.p:
            raise ContextMismatch("point field has different characteristic")
        ext = ring.field.e > 1
        if ext and L != ring.field:
            raise ContextMismatch(
                "extension coefficients require evaluation in the same field")
        unpack = ring.order.unpack
        vmul, vadd, vpow = L._vmul, L._vadd, L._vpow
        caches: list[dict] = [{} for _ in range(ring.nvars)]
        reps = [x.rep for x in point]
        total = L.zero.rep
        for key, c in self.terms.items():
            exps = unpack(key)
            acc = c if ext else ((c % L.p,) + (0,) * (L.e - 1))
            for i, a in enumerate(exps):
                if a:
                    cache = caches[i]
                    pa = cache.get(a)
                    if pa is None:
                        pa = vpow(reps[i], a)
                        cache[a] = pa
                    acc = vmul(acc, pa)
            total = vadd(total, acc)
        return FieldElement(L, total)

    # -- text -------------------------------------------------------------------------

    def text(self) -> str:
        """Canonical text form: terms descending in the ring order."""
        if not self.terms:
            return "0"
        ring = self.ring
        names = ring.names
        unpack = ring.order.unpack
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            exps = unpack(k)
            factors = []
            for nm, a in zip(names, exps):
                if a == 1:
                    factors.append(nm)
                elif a > 1:
                    factors.append(f"{nm}^{a}")
            ctxt = _coeff_text(ring, c)
            if not factors:
                parts.append(ctxt)
            elif ctxt == "1":
                parts.append("*".join(factors))
            else:
                parts.append(ctxt + "*" + "*".join(factors))
        return "+".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        t = self.text()
        if len(t) > 120:
            t = t[:117] + "..."
        return f"<{t}>"


def _is_internal_coeff(ring: PolyRing, c) -> bool:
    if ring.field.e == 1:
        return isinstance(c, int) and 0 < c < ring.field.p
    return isinstance(c, tuple) and len(c) == ring.field.e


def _coeff_text(ring: PolyRing, c) -> str:
    if isinstance(c, int):
        return str(c)
    nz = [i for i, v in enumerate(c) if v]
    if nz == [0]:
        return str(c[0])
    return "(" + _poly_text(c) + ")"


def _mul(a: Polynomial, b: Polynomial) -> Polynomial:
    ring = a.ring
    if len(a.terms) > len(b.terms):
        a, b = b, a
    off = ring.order.offset
    bt = b.terms
    guard = TERM_GUARD
    if ring.field.e == 1:
        p = ring.field.p
        acc: dict = {}
        get = acc.get
        for k1, c1 in a.terms.items():
            base = k1 - off
            for k2, c2 in bt.items():
                k = base + k2
                acc[k] = get(k, 0) + c1 * c2
            if len(acc) > guard:
                raise ResourceLimit(f"product exceeds {guard} terms")
        out = {}
        for k, v in acc.items():
            v %= p
            if v:
                out[k] = v
        return Polynomial(ring, out)
    F = ring.field
    vmul, vadd = F._vmul, F._vadd
    acc = {}
    for k1, c1 in a.terms.items():
        base = k1 - off
        for k2, c2 in bt.items():
            k = base + k2
            prod = vmul(c1, c2)
            cur = acc.get(k)
            acc[k] = prod if cur is None else vadd(cur, prod)
        if len(acc) > guard:
            raise ResourceLimit(f"product exceeds {guard} terms")
    out = {k: v for k, v in acc.items() if any(v)}
    return Polynomial(ring, out)


def frobenius_power(f: Polynomial, m: int) -> Polynomial:
    """f^(p^m), computed termwise: in characteristic p the map x -> x^p
    is additive, so exponents scale by p^m and coefficients are raised
    to the p^m-th power (a no-op over the prime field)."""
    if m < 0:
        raise UsageError("negative Frobenius power")
    if m == 0:
        return f
    ring = f.ring
    q = ring.field.p ** m
    order = ring.order
    ext = ring.field.e > 1
    out = {}
    for key, c in f.terms.items():
        exps = order.unpack(key)
        new_key = order.pack(tuple(a * q for a in exps))
        out[new_key] = ring.field._vpow(c, q) if ext else c
    return Polynomial(ring, out)


class IdentityResult(NamedTuple):
    """Outcome of a randomized polynomial identity test."""
    equal: bool
    bound: Fraction            # probability that agreement was coincidence
    witness: Optional[tuple]   # point where values differ, if any
    points: list               # all points sampled, replayable


def verify_identity_probabilistic(f: Polynomial, g: Polynomial,
                                  trials: int = 20, ext_degree: int = 32,
                                  seed: int = 0, rng=None,
                                  points: Optional[list] = None) -> IdentityResult:
    """Randomized equality check with an exact error bound.

    Exact structural equality short-circuits with bound 0.  Otherwise
    evaluates both sides at points drawn uniformly from L^n where
    L = GF(p^ext_degree); if all trials agree the chance that f != g is
    at most (max(deg f, deg g) / |L|)^trials, returned as a Fraction.
    """
    import random as _random

    from .gf import field as _field

    if f.ring != g.ring:
        raise ContextMismatch("operands from different rings")
    if f == g:
        return IdentityResult(True, Fraction(0), None, [])
    ring = f.ring
    if ring.field.e != 1:
        raise UsageError("probabilistic check expects prime-field coefficients")
    d = max(f.total_degree(), g.total_degree(), 0)
    L = _field(ring.field.p, ext_degree)
    if points is None:
        if rng is None:
            rng = _random.Random(seed)
        points = [tuple(L.random_element(rng) for _ in range(ring.nvars))
                  for _ in range(trials)]
    used = []
    for pt in points:
        used.append(pt)
        if f.evaluate(pt) != g.evaluate(pt):
            return IdentityResult(False, Fraction(1), pt, used)
    bound = Fraction(d, L.order) ** len(used)
    return IdentityResult(True, bound, None, used)
