"""Exact arithmetic in prime fields GF(p) and extension fields GF(p^e).

Extension fields are represented as GF(p)[g]/(modulus) with a monic
irreducible modulus chosen deterministically (lexicographically smallest,
comparing coefficients from the constant term upward), so serialized
elements are portable across runs and machines.

Element representations are canonical coefficient vectors; equality is
structural.  Everything here is immutable after construction and every
operation is pure.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import ContextMismatch, FieldZeroDivision, ResourceLimit, UsageError

ENUM_CAP = 1 << 20

# Build exp/log tables for extension fields up to this order; beyond it,
# multiplication falls back to convolution plus modulus reduction.
_TABLE_CAP = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Univariate polynomial helpers over GF(p).
#
# Polynomials are tuples of coefficients, constant term first, with no
# trailing zero coefficients (the zero polynomial is the empty tuple).
# Only what the irreducibility test needs lives here.
# ---------------------------------------------------------------------------


def _trim(c: Sequence[int]) -> tuple:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_rem(a: Sequence[int], m: tuple, p: int) -> tuple:
    """Remainder of a modulo m; m need not be monic."""
    a = list(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            f = (c * lead_inv) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * m[j]) % p
    return _trim(a[:dm])


def _poly_gcd(a: tuple, b: tuple, p: int) -> tuple:
    while b:
        a, b = b, _poly_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _pth_power_mod(g: tuple, p: int, m: tuple) -> tuple:
    """g(X)^p mod m, using that coefficients in GF(p) are Frobenius-fixed."""
    if not g:
        return ()
    spread = [0] * ((len(g) - 1) * p + 1)
    for i, c in enumerate(g):
        spread[i * p] = c
    return _poly_rem(spread, m, p)


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin test: f of degree e over GF(p) is irreducible iff
    X^{p^e} = X mod f and gcd(X^{p^{e/l}} - X, f) = 1 for every prime l | e.
    """
    f = _trim(tuple(c % p for c in coeffs))
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    if f[0] == 0:
        return False
    x = (0, 1)
    powers = {}
    h = x
    for k in range(1, e + 1):
        h = _pth_power_mod(h, p, f)
        powers[k] = h
    if powers[e] != _poly_rem(x, f, p):
        return False
    for ell in _prime_factors(e):
        g = powers[e // ell]
        diff = list(g) + [0] * (2 - len(g))
        diff[1] = (diff[1] - 1) % p
        if _poly_gcd(_trim(diff), f, p) != (1,):
            return False
    return True


def find_irreducible(p: int, e: int) -> tuple:
    """The lexicographically smallest monic irreducible of degree e over
    GF(p), comparing coefficient vectors from the constant term upward.
    Returned as a full coefficient tuple of length e+1 (monic).
    """
    if not is_prime(p):
        raise UsageError(f"characteristic {p} is not prime")
    if e < 1:
        raise UsageError(f"extension degree must be >= 1, got {e}")
    if e == 1:
        return (0, 1)
    # Candidates with constant term 0 are divisible by X, so start at 1.
    for c0 in range(1, p):
        for tail in product(range(p), repeat=e - 1):
            f = (c0,) + tail + (1,)
            if any(_eval_poly(f, a, p) == 0 for a in range(p)):
                continue
            if is_irreducible(f, p):
                return f
    raise UsageError(f"no irreducible of degree {e} over GF({p})")


def _eval_poly(f: Sequence[int], a: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * a + c) % p
    return acc


def _poly_text(coeffs: Sequence[int], symbol: str = "g") -> str:
    """Compact text form, descending powers: 'g^2+2*g+1'."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(symbol if c == 1 else f"{c}*{symbol}")
        else:
            parts.append(f"{symbol}^{i}" if c == 1 else f"{c}*{symbol}^{i}")
    return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Field specs and elements.
# ---------------------------------------------------------------------------


class FieldSpec:
    """Description of GF(p^e) together with its element arithmetic.

    Elements are coefficient tuples of length e (rep[i] multiplies g^i).
    The enumeration index of an element orders reps lexicographically,
    constant coefficient most significant.
    """

    __slots__ = ("p", "e", "order", "modulus", "_red", "_exp", "_log",
                 "zero", "one", "gen")

    def __init__(self, p: int, e: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise UsageError(f"characteristic {p} is not prime")
        if e < 1:
            raise UsageError(f"extension degree must be >= 1, got {e}")
        self.p = p
        self.e = e
        self.order = p ** e
        if e == 1:
            self.modulus = None
            self._red = None
        else:
            if modulus is None:
                modulus = find_irreducible(p, e)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise UsageError("modulus must be monic of degree e")
            if not is_irreducible(modulus, p):
                raise UsageError("modulus is not irreducible")
            self.modulus = modulus
            # g^e = -(m_0 + m_1 g + ... + m_{e-1} g^{e-1})
            self._red = tuple((-modulus[i]) % p for i in range(e))
        self._exp = None
        self._log = None
        self.zero = FieldElement(self, (0,) * e)
        self.one = FieldElement(self, (1,) + (0,) * (e - 1))
        self.gen = FieldElement(self, (0, 1) + (0,) * (e - 2)) if e > 1 else None
        if e > 1 and self.order <= _TABLE_CAP:
            self._build_tables()

    # -- representation-level arithmetic ------------------------------------

    def _vadd(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _vsub(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _vneg(self, a: tuple) -> tuple:
        p = self.p
        return tuple((-x) % p for x in a)

    def _vmul_raw(self, a: tuple, b: tuple) -> tuple:
        """Convolution followed by reduction via g^e = _red."""
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        red = self._red
        for i in range(2 * e - 2, e - 1, -1):
            c = conv[i] % p
            if c:
                base = i - e
                for j, rj in enumerate(red):
                    conv[base + j] += c * rj
        return tuple(c % p for c in conv[:e])

    def _vmul(self, a: tuple, b: tuple) -> tuple:
        log = self._log
        if log is not None:
            if a == self.zero.rep or b == self.zero.rep:
                return self.zero.rep
            return self._exp[(log[a] + log[b]) % (self.order - 1)]
        return self._vmul_raw(a, b)

    def _vinv(self, a: tuple) -> tuple:
        if not any(a):
            raise FieldZeroDivision(f"inversion of zero in {self}")
        log = self._log
        if log is not None:
            n = self.order - 1
            return self._exp[(n - log[a]) % n]
        return self._vpow(a, self.order - 2)

    def _vpow(self, a: tuple, k: int) -> tuple:
        if k < 0:
            return self._vpow(self._vinv(a), -k)
        result = self.one.rep
        base = a
        while k:
            if k & 1:
                result = self._vmul(result, base)
            base = self._vmul(base, base)
            k >>= 1
        return result

    def _build_tables(self):
        n = self.order - 1
        factors = _prime_factors(n)
        g = None
        for rep in self._iter_reps():
            if not any(rep) or rep == self.one.rep:
                continue
            if all(self._vpow_raw(rep, n // ell) != self.one.rep for ell in factors):
                g = rep
                break
        exp = [self.one.rep]
        cur = self.one.rep
        for _ in range(n - 1):
            cur = self._vmul_raw(cur, g)
            exp.append(cur)
        self._exp = exp
        self._log = {rep: k for k, rep in enumerate(exp)}

    def _vpow_raw(self, a: tuple, k: int) -> tuple:
        result = self.one.rep
        base = a
        while k:
            if k & 1:
                result = self._vmul_raw(result, base)
            base = self._vmul_raw(base, base)
            k >>= 1
        return result

    def _iter_reps(self):
        for digits in product(range(self.p), repeat=self.e):
            yield digits

    # -- element construction ------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Coerce an integer (reduced mod p, embedded as a constant), a rep
        tuple, or an element of this same field."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ContextMismatch(f"element of {value.spec} used in {self}")
            return value
        if isinstance(value, int):
            rep = (value % self.p,) + (0,) * (self.e - 1)
            return FieldElement(self, rep)
        if isinstance(value, tuple):
            if len(value) != self.e:
                raise UsageError(f"rep length {len(value)} != {self.e}")
            return FieldElement(self, tuple(c % self.p for c in value))
        raise UsageError(f"cannot coerce {value!r} into {self}")

    def from_index(self, i: int) -> "FieldElement":
        if not 0 <= i < self.order:
            raise UsageError(f"index {i} out of range for {self}")
        digits = []
        for _ in range(self.e):
            i, d = divmod(i, self.p)
            digits.append(d)
        # index orders reps lexicographically, rep[0] most significant
        return FieldElement(self, tuple(reversed(digits)))

    def index(self, elem: "FieldElement") -> int:
        i = 0
        for d in elem.rep:
            i = i * self.p + d
        return i

    def enumerate_elements(self, cap: int = ENUM_CAP) -> list["FieldElement"]:
        if self.order > cap:
            raise ResourceLimit(
                f"enumeration of {self} ({self.order} elements) exceeds cap {cap}")
        return [FieldElement(self, rep) for rep in self._iter_reps()]

    def random_element(self, rng) -> "FieldElement":
        return self.from_index(rng.randrange(self.order))

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def serialize(self) -> str:
        if self.e == 1:
            return f"{self.p}^1"
        return f"{self.p}^{self.e} {_poly_text(self.modulus)}"


_SPEC_CACHE: dict = {}


def field(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Interned FieldSpec factory; the default modulus is deterministic.

    One instance per (p, e, modulus), whether the modulus was given
    explicitly or resolved to the default.
    """
    if e > 1 and modulus is None:
        spec = _SPEC_CACHE.get((p, e, None))
        if spec is not None:
            return spec
        m = find_irreducible(p, e)
        spec = _SPEC_CACHE.get((p, e, m))
        if spec is None:
            spec = FieldSpec(p, e, m)
            _SPEC_CACHE[(p, e, m)] = spec
        _SPEC_CACHE[(p, e, None)] = spec
        return spec
    key = (p, e, tuple(modulus) if modulus is not None else None)
    spec = _SPEC_CACHE.get(key)
    if spec is None:
        spec = FieldSpec(p, e, modulus)
        _SPEC_CACHE[key] = spec
    return spec


class FieldElement:
    """An element of GF(p^e): a spec plus a canonical coefficient vector."""

    __slots__ = ("spec", "rep")

    def __init__(self, spec: FieldSpec, rep: tuple):
        self.spec = spec
        self.rep = rep

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ContextMismatch(
                    f"mixed fields {self.spec} and {other.spec}")
            return other
        if isinstance(other, int):
            return self.spec.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._vadd(self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._vsub(self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._vsub(o.rep, self.rep))

    def __neg__(self):
        return FieldElement(self.spec, self.spec._vneg(self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._vmul(self.rep, o.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._vmul(self.rep, self.spec._vinv(o.rep)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec._vmul(o.rep, self.spec._vinv(self.rep)))

    def __pow__(self, k: int):
        return FieldElement(self.spec, self.spec._vpow(self.rep, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec._vinv(self.rep))

    def frobenius(self) -> "FieldElement":
        """a^p, the Frobenius endomorphism."""
        return self ** self.spec.p

    def __bool__(self):
        return any(self.rep)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.spec.element(other)
        return (isinstance(other, FieldElement) and self.spec == other.spec
                and self.rep == other.rep)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.spec, self.rep))

    def __str__(self):
        if self.spec.e == 1:
            return str(self.rep[0])
        return _poly_text(self.rep)

    def __repr__(self):
        return f"<{self} in {self.spec}>"
