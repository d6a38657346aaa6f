"""Text and file formats for polynomials.

Polynomial grammar (whitespace-insensitive):

    poly   := [sign] term (sign term)*
    term   := factor ('*' factor)*
    factor := INT | NAME ['^' INT] | '(' gpoly ')'

A parenthesized gpoly in the generator symbol 'g' denotes an extension
field coefficient, e.g. (g^2+2*g+1)*x1.  The canonical printer in
mpoly emits exactly this grammar.

Poly files are line-oriented:

    field: 3^2 g^2+1
    order: grevlex
    vars: x1 x2 x3
    poly: x1^2+2*x2

Membership certificate files additionally carry the target, the basis,
one cofactor per basis element, and the remainder, so the asserted
identity can be rechecked without recomputing anything.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import ParseError, UsageError
from .gf import FieldElement, FieldSpec, field
from .mpoly import Polynomial, PolyRing, TermOrder

_SYMBOL = "g"


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_PUNCT = set("^*+-()")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch in " \t\r\n":
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(("INT", text[i:j], i))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("NAME", text[i:j], i))
                i = j
            elif ch in _PUNCT:
                toks.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        toks.append(("EOF", "", n))
        self.toks = toks
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind: str):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind}, found {t[1]!r}", t[2])
        return t


# ---------------------------------------------------------------------------
# Extension field element text
# ---------------------------------------------------------------------------


def _parse_gpoly(toks: _Tokens, p: int, stop_at_paren: bool) -> dict:
    """Parse a polynomial in the symbol g into {degree: coefficient}."""
    coeffs: dict = {}
    sign = 1
    t = toks.peek()
    if t[0] in "+-":
        toks.next()
        sign = -1 if t[0] == "-" else 1
    while True:
        c, d = _parse_gterm(toks, p)
        coeffs[d] = (coeffs.get(d, 0) + sign * c) % p
        t = toks.peek()
        if t[0] == "+":
            sign = 1
            toks.next()
        elif t[0] == "-":
            sign = -1
            toks.next()
        elif t[0] == "EOF" or (stop_at_paren and t[0] == ")"):
            return coeffs
        else:
            raise ParseError(f"unexpected {t[1]!r} in field element", t[2])


def _parse_gterm(toks: _Tokens, p: int) -> tuple:
    t = toks.next()
    if t[0] == "INT":
        c = int(t[1]) % p
        if toks.peek()[0] == "*":
            toks.next()
            t = toks.next()
        else:
            return c, 0
    else:
        c = 1
    if t[0] != "NAME" or t[1] != _SYMBOL:
        raise ParseError(f"expected {_SYMBOL!r}, found {t[1]!r}", t[2])
    d = 1
    if toks.peek()[0] == "^":
        toks.next()
        d = int(toks.expect("INT")[1])
    return c, d


def parse_element(text: str, spec: FieldSpec) -> FieldElement:
    """Parse 'g^2+2*g+1' style text into an element of spec."""
    toks = _Tokens(text)
    coeffs = _parse_gpoly(toks, spec.p, stop_at_paren=False)
    deg = max(coeffs) if coeffs else 0
    if deg >= spec.e:
        raise ParseError(f"element degree {deg} not below {spec.e}")
    rep = tuple(coeffs.get(i, 0) for i in range(spec.e))
    return FieldElement(spec, rep)


def _parse_modulus(text: str, p: int, e: int) -> tuple:
    toks = _Tokens(text)
    coeffs = _parse_gpoly(toks, p, stop_at_paren=False)
    deg = max(coeffs) if coeffs else 0
    if deg != e:
        raise ParseError(f"modulus degree {deg}, expected {e}")
    return tuple(coeffs.get(i, 0) for i in range(e + 1))


# ---------------------------------------------------------------------------
# Polynomial text
# ---------------------------------------------------------------------------


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    toks = _Tokens(text)
    poly = _parse_poly_expr(toks, ring)
    t = toks.peek()
    if t[0] != "EOF":
        raise ParseError(f"trailing input {t[1]!r}", t[2])
    return poly


def _parse_poly_expr(toks: _Tokens, ring: PolyRing) -> Polynomial:
    F = ring.field
    acc = ring.zero
    sign = 1
    t = toks.peek()
    if t[0] in "+-":
        toks.next()
        sign = -1 if t[0] == "-" else 1
    while True:
        coeff, exps = _parse_term(toks, ring)
        if sign < 0:
            coeff = -coeff
        acc = acc + ring.monomial(exps, coeff)
        t = toks.peek()
        if t[0] == "+":
            sign = 1
            toks.next()
        elif t[0] == "-":
            sign = -1
            toks.next()
        else:
            return acc


def _parse_term(toks: _Tokens, ring: PolyRing):
    F = ring.field
    coeff = F.one
    exps = [0] * ring.nvars
    while True:
        t = toks.next()
        if t[0] == "INT":
            coeff = coeff * int(t[1])
        elif t[0] == "NAME":
            name = t[1]
            if name not in ring._index:
                raise ParseError(f"unknown variable {name!r}", t[2])
            a = 1
            if toks.peek()[0] == "^":
                toks.next()
                a = int(toks.expect("INT")[1])
            exps[ring._index[name]] += a
        elif t[0] == "(":
            if F.e == 1:
                raise ParseError("field element coefficient in a prime field ring", t[2])
            coeffs = _parse_gpoly(toks, F.p, stop_at_paren=True)
            toks.expect(")")
            deg = max(coeffs) if coeffs else 0
            if deg >= F.e:
                raise ParseError(f"coefficient degree {deg} not below {F.e}", t[2])
            rep = tuple(coeffs.get(i, 0) for i in range(F.e))
            coeff = coeff * FieldElement(F, rep)
        else:
            raise ParseError(f"expected a factor, found {t[1]!r}", t[2])
        if toks.peek()[0] == "*":
            toks.next()
        else:
            return coeff, exps


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def _order_text(order: TermOrder) -> str:
    if order.kind == "block":
        return f"block {order.block}"
    return order.kind


def ring_header_lines(ring: PolyRing) -> list:
    return [
        f"field: {ring.field.serialize()}",
        f"order: {_order_text(ring.order)}",
        f"vars: {' '.join(ring.names)}",
    ]


def format_polys(ring: PolyRing, polys: Sequence[Polynomial]) -> str:
    lines = ring_header_lines(ring)
    for f in polys:
        if f.ring != ring:
            raise UsageError("polynomial from a different ring")
        lines.append(f"poly: {f.text()}")
    return "\n".join(lines) + "\n"


def _tagged_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: missing ':' in {line!r}")
        tag, _, payload = line.partition(":")
        yield lineno, tag.strip(), payload.strip()


def parse_field_text(text: str) -> FieldSpec:
    """Parse a field description like "2^1" or "3^2 g^2+1"."""
    parts = text.split(None, 1)
    base = parts[0]
    if "^" not in base:
        raise ParseError(f"field must look like p^e, got {base!r}")
    p_txt, _, e_txt = base.partition("^")
    try:
        p, e = int(p_txt), int(e_txt)
    except ValueError:
        raise ParseError(f"bad field {base!r}") from None
    if e > 1:
        if len(parts) != 2:
            raise ParseError("extension field needs a modulus")
        return field(p, e, _parse_modulus(parts[1], p, e))
    return field(p)


def _parse_header(items):
    """Consume field/order/vars lines; returns (ring, remaining items)."""
    spec = None
    order = None
    names = None
    rest = []
    for lineno, tag, payload in items:
        if tag == "field":
            try:
                spec = parse_field_text(payload)
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        elif tag == "order":
            parts = payload.split()
            if parts[0] == "block":
                if len(parts) != 2:
                    raise ParseError(f"line {lineno}: block order needs a size")
                order = ("block", int(parts[1]))
            elif parts[0] in ("grevlex", "lex") and len(parts) == 1:
                order = parts[0]
            else:
                raise ParseError(f"line {lineno}: unknown order {payload!r}")
        elif tag == "vars":
            names = tuple(payload.split())
        else:
            rest.append((lineno, tag, payload))
    if spec is None or order is None or names is None:
        raise ParseError("file is missing a field, order, or vars line")
    return PolyRing(spec, names, order), rest


def parse_polys_text(text: str):
    ring, rest = _parse_header(_tagged_lines(text))
    polys = []
    for lineno, tag, payload in rest:
        if tag != "poly":
            raise ParseError(f"line {lineno}: unexpected tag {tag!r}")
        try:
            polys.append(parse_poly(payload, ring))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return ring, polys


def write_poly_file(path, ring: PolyRing, polys: Sequence[Polynomial]):
    with open(path, "w") as fh:
        fh.write(format_polys(ring, polys))


def read_poly_file(path):
    with open(path) as fh:
        return parse_polys_text(fh.read())


# ---------------------------------------------------------------------------
# Membership certificates
# ---------------------------------------------------------------------------


def format_certificate(ring: PolyRing, target: Polynomial,
                       basis: Sequence[Polynomial],
                       cofactors: Sequence[Polynomial],
                       remainder: Polynomial) -> str:
    if len(basis) != len(cofactors):
        raise UsageError("one cofactor per basis element")
    lines = ring_header_lines(ring)
    lines.append(f"target: {target.text()}")
    for b in basis:
        lines.append(f"basis: {b.text()}")
    for i, h in enumerate(cofactors):
        lines.append(f"cofactor-of: {i}")
        lines.append(f"poly: {h.text()}")
    lines.append(f"remainder: {remainder.text()}")
    return "\n".join(lines) + "\n"


def parse_certificate_text(text: str) -> dict:
    ring, rest = _parse_header(_tagged_lines(text))
    target = None
    basis = []
    cofactors = {}
    remainder = None
    pending: Optional[int] = None
    for lineno, tag, payload in rest:
        if tag == "target":
            target = parse_poly(payload, ring)
        elif tag == "basis":
            basis.append(parse_poly(payload, ring))
        elif tag == "cofactor-of":
            pending = int(payload)
        elif tag == "poly":
            if pending is None:
                raise ParseError(f"line {lineno}: cofactor poly without an index")
            cofactors[pending] = parse_poly(payload, ring)
            pending = None
        elif tag == "remainder":
            remainder = parse_poly(payload, ring)
        else:
            raise ParseError(f"line {lineno}: unexpected tag {tag!r}")
    if target is None or remainder is None:
        raise ParseError("certificate is missing a target or remainder line")
    if set(cofactors) != set(range(len(basis))):
        raise ParseError("cofactor indices do not match the basis")
    return {
        "ring": ring,
        "target": target,
        "basis": basis,
        "cofactors": [cofactors[i] for i in range(len(basis))],
        "remainder": remainder,
    }
