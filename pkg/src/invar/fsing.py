"""Claim checks for the invariant rings.

Every computational assertion handled by this package is packaged as a
claim with a string id.  Running a claim produces a VerificationReport
whose verdict is one of

    VERIFIED   an exact identity or membership was established,
    PROBABLE   all sampled points agree, with a stated error bound,
    REFUTED    a counterexample or failed membership was found,
    SKIPPED    a resource guard stopped the exact path.

VERIFIED and REFUTED reports carry a replayable witness: a membership
certificate, a set of exponent tuples, or evaluation points with the
values of both sides.  replay_witness re-validates a witness without
re-running any search.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import ContextMismatch, ResourceLimit, UsageError
from .gf import FieldSpec, field, is_prime
from .groebner import (GroebnerBasis, buchberger, frobenius_closure_search,
                       frobenius_power_ideal, ideal_member, normal_form)
from .invariants import (dickson_at_point, dickson_invariants,
                         elementary_symmetric, relation_side_degrees,
                         staircase_monomial, symplectic_relation_sides,
                         symplectic_relation_values, symplectic_xi,
                         symplectic_xi_value, truncated_monomial_sum,
                         vandermonde, xring)
from .mpoly import Polynomial, PolyRing, frobenius_power
from .polyio import (format_certificate, format_polys, parse_certificate_text,
                     parse_element, parse_field_text, parse_poly,
                     parse_polys_text)

VERIFIED = "VERIFIED"
PROBABLE = "PROBABLE"
REFUTED = "REFUTED"
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by every claim check.  All randomness flows from
    seed; verdicts must not depend on it, only witness points may."""
    seed: int = 0
    trials: int = 20
    ext_degree: int = 32
    e_max: int = 4
    alt_nmax: int = 6
    mode: str = "auto"             # exact | probabilistic | auto
    search_cap: int = 10 ** 9      # full-enumeration ceiling
    agree_cap: int = 10 ** 6       # below this, pruned vs full cross-check

    def __post_init__(self):
        if self.trials < 1 or self.ext_degree < 1:
            raise UsageError("trials and ext_degree must be positive")
        if self.e_max < 0 or self.alt_nmax < 2:
            raise UsageError("e_max must be >= 0 and alt_nmax >= 2")
        if self.mode not in ("exact", "probabilistic", "auto"):
            raise UsageError(f"unknown mode {self.mode!r}")


@dataclass
class VerificationReport:
    claim_id: str
    parameters: dict
    verdict: str
    bound: Optional[Fraction] = None
    witness: Optional[dict] = None
    elapsed: float = 0.0
    detail: tuple = ()

    @property
    def ok(self) -> bool:
        return self.verdict in (VERIFIED, PROBABLE)


def _sub_rng(seed: int, label: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _label(claim_id: str, params: dict) -> str:
    core = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{claim_id}|{core}"


def _finish(report: VerificationReport, t0: float) -> VerificationReport:
    report.elapsed = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# The Sp_4 hypersurface presentation
# ---------------------------------------------------------------------------

PRES_VARS = ("a", "b", "u", "v", "w")

# c_0 of the 4-variable Dickson family written in the symplectic
# generators; exponent triples are on (u, v, w) = (xi_1, xi_2, xi_3).
# verify_c0_expression re-derives these from scratch.
C0_XI_TERMS = {
    2: ((1, (5, 0, 0)), (1, (0, 3, 0)), (1, (2, 0, 1))),
    3: ((1, (0, 8, 0)), (1, (3, 4, 1)), (1, (6, 0, 2)),
        (1, (10, 4, 0)), (-1, (13, 0, 1)), (1, (20, 0, 0))),
}


@dataclass(frozen=True)
class Presentation:
    """Invariant ring as generators-and-relations: an ambient polynomial
    ring, relation polynomials, and the section sending each ambient
    variable to the invariant it names."""
    ring: PolyRing
    relations: tuple
    images: dict


def c0_terms_poly(ring: PolyRing, terms) -> Polynomial:
    """The expression sum coeff * u^i v^j w^k inside a ring that has
    variables named u, v, w."""
    iu, iv, iw = (ring.names.index(nm) for nm in ("u", "v", "w"))
    data: dict = {}
    for coeff, (eu, ev, ew) in terms:
        e = [0] * ring.nvars
        e[iu], e[iv], e[iw] = eu, ev, ew
        key = tuple(e)
        data[key] = data.get(key, 0) + coeff
    return ring.from_terms(data)


def sp4_presentation(q: int) -> Presentation:
    """The rank-2 symplectic invariant ring as a hypersurface: variables
    (a, b, u, v, w) mapping to (c_2, c_3, xi_1, xi_2, xi_3), one
    relation  u*c0(u,v,w) - (u^q a - v^q b + w^q)."""
    if q not in (2, 3):
        raise UsageError("presentation data covers q = 2 and q = 3 only")
    spec = field(q)
    amb = PolyRing(spec, PRES_VARS, "grevlex")
    a, b, u, v, w = amb.gens()
    rel = u * c0_terms_poly(amb, C0_XI_TERMS[q]) - (u ** q * a - v ** q * b + w ** q)
    X = xring(spec, 4)
    cs = dickson_invariants(4, spec, X)
    xis = [symplectic_xi(X, q, i) for i in (1, 2, 3)]
    images = {"a": cs[2], "b": cs[3], "u": xis[0], "v": xis[1], "w": xis[2]}
    return Presentation(amb, (rel,), images)


def substitute(f: Polynomial, images: dict) -> Polynomial:
    """Ring map determined by name -> polynomial images (same
    coefficient field on both sides)."""
    ring = f.ring
    target = None
    for g in images.values():
        target = g.ring
        break
    if target is None:
        raise UsageError("empty image map")
    if target.field != ring.field:
        raise ContextMismatch("images live over a different field")
    imgs = []
    for name in ring.names:
        if name not in images:
            raise UsageError(f"no image for variable {name!r}")
        imgs.append(images[name])
    caches: list = [dict() for _ in imgs]

    def power(i: int, k: int) -> Polynomial:
        got = caches[i].get(k)
        if got is None:
            if k == 1:
                got = imgs[i]
            else:
                half = power(i, k // 2)
                got = half * half
                if k % 2:
                    got = got * imgs[i]
            caches[i][k] = got
        return got

    acc = target.zero
    unpack = ring.order.unpack
    for key, coeff in f.terms.items():
        t = target.constant(ring.coeff_element(coeff))
        for i, a in enumerate(unpack(key)):
            if a:
                t = t * power(i, a)
        acc = acc + t
    return acc


def check_presentation(pres: Presentation) -> bool:
    """Do all relations expand to zero under the variable images?"""
    return all(substitute(r, pres.images).is_zero() for r in pres.relations)


# ---------------------------------------------------------------------------
# Point sampling helpers
# ---------------------------------------------------------------------------


def _sample_points(L: FieldSpec, nvars: int, rng: random.Random, count: int):
    return [tuple(L.random_element(rng) for _ in range(nvars))
            for _ in range(count)]


def _points_witness(L: FieldSpec, pts, lhs_vals, rhs_vals, **extra) -> dict:
    w = {
        "kind": "points",
        "field": L.serialize(),
        "points": [[str(x) for x in P] for P in pts],
        "lhs": [str(v) for v in lhs_vals],
        "rhs": [str(v) for v in rhs_vals],
    }
    w.update(extra)
    return w


def _parse_points(witness: dict):
    L = parse_field_text(witness["field"])
    pts = [tuple(parse_element(t, L) for t in row) for row in witness["points"]]
    return L, pts


# ---------------------------------------------------------------------------
# sp4-c0: the closed expression for c_0 in the symplectic generators
# ---------------------------------------------------------------------------


def _c0_from_xis(ring: PolyRing, q: int, terms) -> Polynomial:
    xis = [symplectic_xi(ring, q, i) for i in (1, 2, 3)]
    cache: dict = {}

    def power(i: int, k: int) -> Polynomial:
        got = cache.get((i, k))
        if got is None:
            if k == 1:
                got = xis[i]
            else:
                half = power(i, k // 2)
                got = half * half
                if k % 2:
                    got = got * xis[i]
            cache[(i, k)] = got
        return got

    acc = ring.zero
    for coeff, exps in terms:
        t = ring.constant(coeff)
        for i, a in enumerate(exps):
            if a:
                t = t * power(i, a)
        acc = acc + t
    return acc


def _c0_value_from_xis(point, q: int, terms):
    L = point[0].spec
    xivals = [symplectic_xi_value(point, q, i) for i in (1, 2, 3)]
    acc = L.zero
    for coeff, exps in terms:
        t = L.element(coeff)
        for xv, a in zip(xivals, exps):
            if a:
                t = t * xv ** a
        acc = acc + t
    return acc


def _c0_degree_bound(q: int, terms) -> int:
    cand = max(sum(a * (q ** (i + 1) + 1) for i, a in enumerate(exps))
               for _, exps in terms)
    return max(q ** 4 - 1, cand)


def mutated_c0_terms(q: int, rng: random.Random):
    """A single random corruption of the stored q = 3 expression: one
    sign flip or one exponent changed by +-1.  (Over GF(2) sign flips
    are vacuous, so only q = 3 is supported.)"""
    if q != 3:
        raise UsageError("mutation control is defined for q = 3")
    terms = [[c, list(e)] for c, e in C0_XI_TERMS[q]]
    k = rng.randrange(len(terms))
    if rng.random() < 0.5:
        terms[k][0] = -terms[k][0]
    else:
        while True:
            j = rng.randrange(3)
            delta = rng.choice((-1, 1))
            if terms[k][1][j] + delta >= 0:
                terms[k][1][j] += delta
                break
    return tuple((c, tuple(e)) for c, e in terms)


def verify_c0_expression(q: int, config: Optional[RunConfig] = None,
                         mode: Optional[str] = None,
                         terms=None) -> VerificationReport:
    """Does c_0 (4 variables, GL-invariant of degree q^4 - 1) equal the
    stored expression in xi_1, xi_2, xi_3?  terms overrides the stored
    expression, which is how the mutation controls are run."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    if q not in (2, 3):
        raise UsageError("c0 expressions are stored for q = 2 and q = 3")
    mode = mode or config.mode
    if mode not in ("exact", "probabilistic", "auto"):
        raise UsageError(f"unknown mode {mode!r}")
    used = C0_XI_TERMS[q] if terms is None else tuple(
        (int(c), tuple(int(a) for a in e)) for c, e in terms)
    params = {"q": q, "mode": mode, "seed": config.seed}
    detail = []
    if terms is not None:
        detail.append("candidate expression overridden (mutation control)")
    spec = field(q)
    L = field(spec.p, config.ext_degree)
    rng = _sub_rng(config.seed, _label("sp4-c0", {"q": q, "mode": mode}))
    wterms = [[c, list(e)] for c, e in used]

    if mode in ("exact", "auto"):
        try:
            R = xring(spec, 4)
            c0 = dickson_invariants(4, spec, R)[0]
            cand = _c0_from_xis(R, q, used)
            if cand == c0:
                pts = _sample_points(L, 4, rng, 3)
                lhs = [dickson_at_point(P, q)[0] for P in pts]
                rhs = [_c0_value_from_xis(P, q, used) for P in pts]
                witness = _points_witness(L, pts, lhs, rhs, terms=wterms,
                                          mismatch=None)
                detail.append(f"exact expansion equal; {len(c0)} terms of degree {c0.total_degree()}")
                return _finish(VerificationReport(
                    "sp4-c0", params, VERIFIED, Fraction(0), witness,
                    detail=tuple(detail)), t0)
            diff = cand - c0
            detail.append(f"exact difference has {len(diff)} terms; "
                          f"leading exponents {diff.leading_exponents()}")
            for _ in range(100):
                P = _sample_points(L, 4, rng, 1)[0]
                cv = _c0_value_from_xis(P, q, used)
                dv = dickson_at_point(P, q)[0]
                if cv != dv:
                    witness = _points_witness(L, [P], [dv], [cv],
                                              terms=wterms, mismatch=0)
                    return _finish(VerificationReport(
                        "sp4-c0", params, REFUTED, None, witness,
                        detail=tuple(detail)), t0)
            # difference vanishes on every sample; report the exact diff
            witness = {"kind": "points", "field": L.serialize(), "points": [],
                       "lhs": [], "rhs": [], "terms": wterms, "mismatch": None}
            return _finish(VerificationReport(
                "sp4-c0", params, REFUTED, None, witness,
                detail=tuple(detail)), t0)
        except ResourceLimit as exc:
            if mode == "exact":
                detail.append(f"resource guard: {exc}")
                return _finish(VerificationReport(
                    "sp4-c0", params, SKIPPED, None, None,
                    detail=tuple(detail)), t0)
            detail.append(f"exact path hit a guard ({exc}); sampling instead")

    params.update(trials=config.trials, ext_degree=config.ext_degree)
    D = _c0_degree_bound(q, used)
    pts = _sample_points(L, 4, rng, config.trials)
    lhs, rhs = [], []
    for k, P in enumerate(pts):
        dv = dickson_at_point(P, q)[0]
        cv = _c0_value_from_xis(P, q, used)
        lhs.append(dv)
        rhs.append(cv)
        if dv != cv:
            witness = _points_witness(L, pts[:k + 1], lhs, rhs,
                                      terms=wterms, mismatch=k)
            detail.append(f"sample {k + 1} separates the sides")
            return _finish(VerificationReport(
                "sp4-c0", params, REFUTED, None, witness,
                detail=tuple(detail)), t0)
    bound = Fraction(D, L.order) ** config.trials
    witness = _points_witness(L, pts, lhs, rhs, terms=wterms, mismatch=None)
    detail.append(f"{config.trials} samples agree; degree bound {D} over {L.serialize().split()[0]}")
    return _finish(VerificationReport(
        "sp4-c0", params, PROBABLE, bound, witness, detail=tuple(detail)), t0)


# ---------------------------------------------------------------------------
# sp4-relation and the n = 3 relation family
# ---------------------------------------------------------------------------


def verify_sp4_relation(q: int, config: Optional[RunConfig] = None,
                        mode: Optional[str] = None) -> VerificationReport:
    """The single rank-2 relation  xi_1 c_0 = xi_1^q c_2 - xi_2^q c_3 +
    xi_3^q, checked as materialized polynomials (or by sampling)."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    if q not in (2, 3):
        raise UsageError("supported for q = 2 and q = 3")
    mode = mode or config.mode
    if mode not in ("exact", "probabilistic", "auto"):
        raise UsageError(f"unknown mode {mode!r}")
    params = {"q": q, "i": 1, "mode": mode, "seed": config.seed}
    detail = []
    spec = field(q)
    L = field(spec.p, config.ext_degree)
    rng = _sub_rng(config.seed, _label("sp4-relation", {"q": q, "mode": mode}))

    if mode in ("exact", "auto"):
        R = xring(spec, 4)
        cs = dickson_invariants(4, spec, R)
        xis = [symplectic_xi(R, q, i) for i in (1, 2, 3)]
        lhs, rhs = symplectic_relation_sides(R, spec, 1, cs, xis)
        pts = _sample_points(L, 4, rng, 3)
        vals = [symplectic_relation_values(P, q, 1) for P in pts]
        witness = _points_witness(L, pts, [v[0] for v in vals],
                                  [v[1] for v in vals], i=1)
        if lhs == rhs:
            detail.append(f"exact sides equal; {len(lhs)} terms of degree {lhs.total_degree()}")
            return _finish(VerificationReport(
                "sp4-relation", params, VERIFIED, Fraction(0), witness,
                detail=tuple(detail)), t0)
        diff = lhs - rhs
        detail.append(f"sides differ by {len(diff)} terms")
        witness = None
        for _ in range(100):
            P = _sample_points(L, 4, rng, 1)[0]
            lv, rv = symplectic_relation_values(P, q, 1)
            if lv != rv:
                witness = _points_witness(L, [P], [lv], [rv], i=1, mismatch=0)
                break
        return _finish(VerificationReport(
            "sp4-relation", params, REFUTED, None, witness,
            detail=tuple(detail)), t0)

    params.update(trials=config.trials, ext_degree=config.ext_degree)
    dl, dr = relation_side_degrees(q, 4, 1)
    D = max(dl, dr)
    pts = _sample_points(L, 4, rng, config.trials)
    lhs_v, rhs_v = [], []
    for k, P in enumerate(pts):
        lv, rv = symplectic_relation_values(P, q, 1)
        lhs_v.append(lv)
        rhs_v.append(rv)
        if lv != rv:
            witness = _points_witness(L, pts[:k + 1], lhs_v, rhs_v,
                                      i=1, mismatch=k)
            return _finish(VerificationReport(
                "sp4-relation", params, REFUTED, None, witness,
                detail=tuple(detail)), t0)
    bound = Fraction(D, L.order) ** config.trials
    witness = _points_witness(L, pts, lhs_v, rhs_v, i=1, mismatch=None)
    detail.append(f"{config.trials} samples agree; side degrees {dl}/{dr}")
    return _finish(VerificationReport(
        "sp4-relation", params, PROBABLE, bound, witness,
        detail=tuple(detail)), t0)


def verify_relations_n3(q: int = 2,
                        config: Optional[RunConfig] = None) -> VerificationReport:
    """The relation family in 6 variables (i = 1 and 2), checked at
    random points only; the materialized sides are out of reach."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    if not is_prime(q):
        raise UsageError("the 6-variable check needs a prime q")
    params = {"q": q, "trials": config.trials,
              "ext_degree": config.ext_degree, "seed": config.seed}
    detail = []
    L = field(q, config.ext_degree)
    rng = _sub_rng(config.seed, _label("relations-n3", {"q": q}))
    items = []
    worst = Fraction(0)
    for i in (1, 2):
        dl, dr = relation_side_degrees(q, 6, i)
        pts = _sample_points(L, 6, rng, config.trials)
        lhs_v, rhs_v = [], []
        for k, P in enumerate(pts):
            lv, rv = symplectic_relation_values(P, q, i)
            lhs_v.append(lv)
            rhs_v.append(rv)
            if lv != rv:
                item = _points_witness(L, pts[:k + 1], lhs_v, rhs_v,
                                       i=i, mismatch=k)
                witness = {"kind": "points-multi", "items": items + [item]}
                detail.append(f"i={i}: sample {k + 1} separates the sides")
                return _finish(VerificationReport(
                    "relations-n3", params, REFUTED, None, witness,
                    detail=tuple(detail)), t0)
        items.append(_points_witness(L, pts, lhs_v, rhs_v, i=i, mismatch=None))
        bound_i = Fraction(max(dl, dr), L.order) ** config.trials
        worst = max(worst, bound_i)
        detail.append(f"i={i}: {config.trials} samples agree; side degrees {dl}/{dr}")
    witness = {"kind": "points-multi", "items": items}
    return _finish(VerificationReport(
        "relations-n3", params, PROBABLE, worst, witness,
        detail=tuple(detail)), t0)


# ---------------------------------------------------------------------------
# sp4-fpurity: the Frobenius closure witness
# ---------------------------------------------------------------------------


def sp4_fpurity_check(q: int, config: Optional[RunConfig] = None,
                      include_relation: bool = True) -> VerificationReport:
    """In the hypersurface presentation: w is outside (u, v) + (rel) but
    w^q falls inside (u^q, v^q) + (rel), i.e. the Frobenius closure of
    (u, v) is strictly larger.  include_relation=False is a control: the
    closure witness must disappear without the relation."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    pres = sp4_presentation(q)
    amb = pres.ring
    u, v, w = amb.gen("u"), amb.gen("v"), amb.gen("w")
    rel = pres.relations[0]
    params = {"q": q, "e_max": config.e_max}
    detail = []

    if check_presentation(pres):
        detail.append("presentation relation vanishes on the invariants")
        images_ok = True
    else:
        detail.append("presentation relation DOES NOT vanish on the invariants")
        images_ok = False

    fixed = (rel,) if include_relation else ()
    if not include_relation:
        params["include_relation"] = False
        detail.append("control run: relation generator disabled")
    member, mcert = ideal_member(w, [u, v] + list(fixed), certificate=True)
    if member:
        detail.append("w IS in (u, v) + relation ideal")
    else:
        detail.append(f"w not in (u, v) + relation ideal; normal form {mcert.remainder.text()}")

    closure = frobenius_closure_search(w, [u, v], config.e_max, fixed=fixed)
    witness: dict = {
        "kind": "closure",
        "e": closure.e,
        "membership-remainder": mcert.remainder.text(),
        "failures": {str(e): r.text() for e, r in closure.failures.items()},
    }
    if closure.certificate is not None:
        cert = closure.certificate
        witness["certificate"] = format_certificate(
            amb, cert.target, cert.basis, cert.cofactors, cert.remainder)
    if closure.e is None:
        detail.append(f"no Frobenius-closure witness up to e_max = {config.e_max}")
    else:
        detail.append(f"Frobenius-closure witness at e = {closure.e}")

    ok = images_ok and not member and closure.e == 1
    return _finish(VerificationReport(
        "sp4-fpurity", params, VERIFIED if ok else REFUTED,
        Fraction(0) if ok else None, witness, detail=tuple(detail)), t0)


# ---------------------------------------------------------------------------
# theorem-search: the degree-counting enumeration
# ---------------------------------------------------------------------------


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            while q % d == 0:
                q //= d
            return q == 1
        d += 1
    return True


def theorem_exponent_search(n: int, q: int, cap: int = 10 ** 9,
                            prune: bool = True) -> frozenset:
    """All (a_1, ..., a_{2n-1}) with a_1 <= q-2, a_i <= q-1 for i >= 2,
    and sum a_i (q^i + 1) = q^{2n} - 1.

    prune=True drives the base-q digit argument: writing s = sum a_i =
    lambda*q - 1, every digit of q^{2n-1} - lambda is forced, so only
    lambda is enumerated.  The reference semantics is the plain product
    enumeration; both must agree.
    """
    if n < 2:
        raise UsageError("need n >= 2")
    if not _is_prime_power(q):
        raise UsageError(f"{q} is not a prime power")
    m = 2 * n - 1
    space = (q - 1) * q ** (m - 1)
    if space > cap:
        raise ResourceLimit(f"search space {space} exceeds cap {cap}")
    if prune:
        smax = (q - 2) + (m - 1) * (q - 1)
        sols = set()
        lam = 1
        while lam * q - 1 <= smax:
            s = lam * q - 1
            M = q ** (2 * n - 1) - lam
            digits = []
            for i in range(1, m + 1):
                a = M % q
                if i == 1 and a > q - 2:
                    digits = None
                    break
                digits.append(a)
                M = (M - a) // q
            if digits is not None and M == 0 and sum(digits) == s:
                sols.add(tuple(digits))
            lam += 1
        return frozenset(sols)
    target = q ** (2 * n) - 1
    weights = [q ** i + 1 for i in range(1, m + 1)]
    sols = set()
    for a1 in range(q - 1):
        head = a1 * weights[0]
        for rest in product(range(q), repeat=m - 1):
            tot = head + sum(a * wt for a, wt in zip(rest, weights[1:]))
            if tot == target:
                sols.add((a1,) + rest)
    return frozenset(sols)


def lambda_identity_check(n: int, q: int) -> dict:
    """Integer form of the closing step: which admissible lambda in
    [1, 2n-2] satisfy lambda (q+1) = 2nq - 2n - q + 3?"""
    rhs = 2 * n * q - 2 * n - q + 3
    sols = tuple(lam for lam in range(1, 2 * n - 1) if lam * (q + 1) == rhs)
    return {"rhs": rhs, "solutions": sols}


def verify_theorem_search(n: int, q: int,
                          config: Optional[RunConfig] = None) -> VerificationReport:
    """For q >= 4n-4 the exponent search must come up empty (that is
    the no-F-purity argument); below the threshold the solution set is
    reported as found."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    params = {"n": n, "q": q}
    detail = []
    m = 2 * n - 1
    space = (q - 1) * q ** (m - 1)
    hyp = q >= 4 * n - 4
    lam = lambda_identity_check(n, q)
    try:
        sols = theorem_exponent_search(n, q, cap=config.search_cap, prune=True)
    except ResourceLimit as exc:
        detail.append(str(exc))
        return _finish(VerificationReport(
            "theorem-search", params, SKIPPED, None, None,
            detail=tuple(detail)), t0)
    if space <= config.agree_cap:
        full = theorem_exponent_search(n, q, cap=config.search_cap, prune=False)
        if full != sols:
            detail.append(f"pruned search {sorted(sols)} disagrees with full "
                          f"enumeration {sorted(full)}")
            return _finish(VerificationReport(
                "theorem-search", params, REFUTED, None,
                {"kind": "exponents", "solutions": [list(t) for t in sorted(sols)],
                 "full": [list(t) for t in sorted(full)], "lambda": _lam_json(lam)},
                detail=tuple(detail)), t0)
        detail.append(f"pruned search agrees with full enumeration over {space} tuples")
    else:
        detail.append(f"space {space} above cross-check cap; digit search only")
    witness = {"kind": "exponents",
               "solutions": [list(t) for t in sorted(sols)],
               "lambda": _lam_json(lam)}
    if lam["solutions"]:
        detail.append(f"lambda identity rhs={lam['rhs']}, admissible solutions {lam['solutions']}")
    else:
        detail.append(f"lambda identity rhs={lam['rhs']}, no admissible solution")
    if hyp:
        if sols or lam["solutions"]:
            detail.append(f"q >= 4n-4 = {4 * n - 4} but solutions exist")
            return _finish(VerificationReport(
                "theorem-search", params, REFUTED, None, witness,
                detail=tuple(detail)), t0)
        detail.append(f"empty as required for q >= 4n-4 = {4 * n - 4}")
        return _finish(VerificationReport(
            "theorem-search", params, VERIFIED, Fraction(0), witness,
            detail=tuple(detail)), t0)
    detail.append(f"theorem hypothesis q >= 4n-4 = {4 * n - 4} not met; "
                  f"solution set {sorted(sols)} reported for reference")
    return _finish(VerificationReport(
        "theorem-search", params, VERIFIED, Fraction(0), witness,
        detail=tuple(detail)), t0)


def _lam_json(lam: dict) -> dict:
    return {"rhs": lam["rhs"], "solutions": list(lam["solutions"])}


# ---------------------------------------------------------------------------
# Alternating-group lemmas
# ---------------------------------------------------------------------------

_SYM_GB_CACHE: dict = {}


def symmetric_ideal_gb(n: int, p: int):
    """(ring, Groebner basis) for (e_1, ..., e_n) over GF(p), memoized:
    every alternating-group check reduces against this basis."""
    got = _SYM_GB_CACHE.get((n, p))
    if got is None:
        R = xring(field(p), n)
        gb = buchberger([elementary_symmetric(R, k) for k in range(1, n + 1)])
        got = (R, gb)
        _SYM_GB_CACHE[(n, p)] = got
    return got


def _alt_validate(n: int, p: int, config: RunConfig):
    if not is_prime(p) or p == 2:
        raise UsageError("p must be an odd prime")
    if not 2 <= n <= config.alt_nmax:
        raise UsageError(f"n must be in [2, {config.alt_nmax}]")


def _certificate_items(claim_id, params, labelled, gb, ring, t0, detail=()):
    """Common driver: each (label-dict, polynomial) must be a member of
    the ideal; collect certificates or refute on the first failure."""
    detail = list(detail)
    items = []
    for label, f in labelled:
        member, cert = ideal_member(f, gb, certificate=True)
        if not member:
            detail.append(f"{label_text(label)} is NOT in the ideal; "
                          f"normal form has {len(cert.remainder)} terms")
            witness = {"kind": "normal-form",
                       "polys": format_polys(ring, [f, cert.remainder])}
            witness.update(label)
            return _finish(VerificationReport(
                claim_id, params, REFUTED, None, witness,
                detail=tuple(detail)), t0)
        item = dict(label)
        item["certificate"] = format_certificate(
            ring, cert.target, cert.basis, cert.cofactors, cert.remainder)
        items.append(item)
    detail.append(f"{len(items)} memberships established")
    witness = {"kind": "certificates", "items": items}
    return _finish(VerificationReport(
        claim_id, params, VERIFIED, Fraction(0), witness,
        detail=tuple(detail)), t0)


def label_text(label: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in label.items())


def alt_lemma_T(n: int, p: int,
                config: Optional[RunConfig] = None) -> VerificationReport:
    """T_j^i (sum of the degree-i monomials in the last n-j+1 variables)
    lies in (e_1..e_n) whenever i >= j >= 1."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    _alt_validate(n, p, config)
    R, gb = symmetric_ideal_gb(n, p)
    labelled = [({"i": i, "j": j}, truncated_monomial_sum(R, i, j))
                for i in range(1, n + 1) for j in range(1, i + 1)]
    return _certificate_items("alt-T", {"n": n, "p": p}, labelled, gb, R, t0)


def alt_lemma_staircase(n: int, p: int,
                        config: Optional[RunConfig] = None) -> VerificationReport:
    """The n staircase monomials X_i^i X_{i+1}^i ... X_n^{n-1} lie in
    (e_1..e_n)."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    _alt_validate(n, p, config)
    R, gb = symmetric_ideal_gb(n, p)
    labelled = [({"i": i}, staircase_monomial(R, i)) for i in range(1, n + 1)]
    return _certificate_items("alt-staircase", {"n": n, "p": p}, labelled, gb, R, t0)


def _factorial_mod(n: int, p: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out = out * k % p
    return out


def _socle_monomial(ring: PolyRing) -> Polynomial:
    # X_2 X_3^2 ... X_n^(n-1)
    e = [r - 1 for r in range(1, ring.nvars + 1)]
    return ring.monomial(e)


def alt_delta_congruence(n: int, p: int,
                         config: Optional[RunConfig] = None) -> VerificationReport:
    """Delta = prod_{i<j}(X_j - X_i) is congruent to n! X_2 X_3^2 ...
    X_n^{n-1} modulo (e_1..e_n)."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    _alt_validate(n, p, config)
    R, gb = symmetric_ideal_gb(n, p)
    nf_mod = _factorial_mod(n, p)
    diff = vandermonde(R) - _socle_monomial(R).scale(nf_mod)
    detail = [f"n! = {nf_mod} mod {p}"]
    labelled = [({"target": "delta-congruence"}, diff)]
    return _certificate_items("alt-delta", {"n": n, "p": p}, labelled, gb, R,
                              t0, detail=detail)


def alt_fregularity_dichotomy(n: int, p: int,
                              config: Optional[RunConfig] = None) -> VerificationReport:
    """Delta in (e_1..e_n) exactly when p <= n (p odd); membership is
    what separates the F-regular from the non-F-regular invariants."""
    config = config or RunConfig()
    t0 = time.perf_counter()
    _alt_validate(n, p, config)
    if n < 3:
        raise UsageError("the dichotomy grid starts at n = 3")
    R, gb = symmetric_ideal_gb(n, p)
    delta = vandermonde(R)
    expected = p <= n
    member, cert = ideal_member(delta, gb, certificate=True)
    params = {"n": n, "p": p}
    if member:
        witness = {"kind": "certificates", "items": [{
            "target": "delta",
            "certificate": format_certificate(R, cert.target, cert.basis,
                                              cert.cofactors, cert.remainder),
        }]}
        detail = ["Delta in I" + (" as required" if expected else " but p > n")]
    else:
        witness = {"kind": "normal-form",
                   "polys": format_polys(R, [delta, cert.remainder]),
                   "target": "delta"}
        detail = ["Delta not in I" + (" as required" if not expected else " but p <= n")]
    ok = member == expected
    return _finish(VerificationReport(
        "alt-dichotomy", params, VERIFIED if ok else REFUTED,
        Fraction(0) if ok else None, witness, detail=tuple(detail)), t0)


# ---------------------------------------------------------------------------
# Registry and suites
# ---------------------------------------------------------------------------


def _take(params: dict, allowed: dict) -> dict:
    extra = set(params) - set(allowed)
    if extra:
        raise UsageError(f"unknown parameter(s): {', '.join(sorted(extra))}")
    out = dict(allowed)
    out.update(params)
    missing = [k for k, val in out.items() if val is None]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join(sorted(missing))}")
    return out


def _run_sp4_c0(params, config):
    got = _take(params, {"q": None, "mode": config.mode})
    return verify_c0_expression(got["q"], config, mode=got["mode"])


def _run_sp4_fpurity(params, config):
    got = _take(params, {"q": None})
    return sp4_fpurity_check(got["q"], config)


def _run_sp4_relation(params, config):
    got = _take(params, {"q": None, "mode": config.mode})
    return verify_sp4_relation(got["q"], config, mode=got["mode"])


def _run_theorem_search(params, config):
    got = _take(params, {"n": None, "q": None})
    return verify_theorem_search(got["n"], got["q"], config)


def _run_alt_T(params, config):
    got = _take(params, {"n": None, "p": None})
    return alt_lemma_T(got["n"], got["p"], config)


def _run_alt_staircase(params, config):
    got = _take(params, {"n": None, "p": None})
    return alt_lemma_staircase(got["n"], got["p"], config)


def _run_alt_delta(params, config):
    got = _take(params, {"n": None, "p": None})
    return alt_delta_congruence(got["n"], got["p"], config)


def _run_alt_dichotomy(params, config):
    got = _take(params, {"n": None, "p": None})
    return alt_fregularity_dichotomy(got["n"], got["p"], config)


def _run_relations_n3(params, config):
    got = _take(params, {"q": 2})
    return verify_relations_n3(got["q"], config)


RUNNERS = {
    "sp4-c0": _run_sp4_c0,
    "sp4-fpurity": _run_sp4_fpurity,
    "sp4-relation": _run_sp4_relation,
    "theorem-search": _run_theorem_search,
    "alt-T": _run_alt_T,
    "alt-staircase": _run_alt_staircase,
    "alt-delta": _run_alt_delta,
    "alt-dichotomy": _run_alt_dichotomy,
    "relations-n3": _run_relations_n3,
}


def run_claim(claim_id: str, config: Optional[RunConfig] = None,
              **params) -> VerificationReport:
    if claim_id not in RUNNERS:
        known = ", ".join(RUNNERS)
        raise UsageError(f"unknown claim {claim_id!r}; known claims: {known}")
    return RUNNERS[claim_id](params, config or RunConfig())


_ALT_GRID = tuple((n, p) for n in (3, 4, 5, 6) for p in (3, 5, 7))

_QUICK = (
    ("sp4-c0", {"q": 2}),
    ("sp4-c0", {"q": 3, "mode": "probabilistic"}),
    ("sp4-fpurity", {"q": 2}),
    ("sp4-fpurity", {"q": 3}),
    ("sp4-relation", {"q": 2}),
    ("sp4-relation", {"q": 3}),
    ("theorem-search", {"n": 2, "q": 2}),
    ("theorem-search", {"n": 2, "q": 3}),
    ("theorem-search", {"n": 2, "q": 4}),
    ("theorem-search", {"n": 2, "q": 5}),
    ("alt-T", {"n": 3, "p": 3}),
    ("alt-T", {"n": 4, "p": 5}),
    ("alt-staircase", {"n": 3, "p": 5}),
    ("alt-staircase", {"n": 4, "p": 3}),
    ("alt-delta", {"n": 3, "p": 7}),
    ("alt-delta", {"n": 4, "p": 5}),
    ("alt-delta", {"n": 5, "p": 3}),
    ("alt-dichotomy", {"n": 3, "p": 3}),
    ("alt-dichotomy", {"n": 3, "p": 5}),
    ("alt-dichotomy", {"n": 4, "p": 3}),
)


def _full_extra():
    quick_alt = {cid: {tuple(sorted(ps.items())) for c2, ps in _QUICK if c2 == cid}
                 for cid in ("alt-T", "alt-staircase", "alt-delta", "alt-dichotomy")}
    out = [
        ("sp4-c0", {"q": 3, "mode": "exact"}),
        ("theorem-search", {"n": 2, "q": 7}),
        ("theorem-search", {"n": 2, "q": 8}),
        ("theorem-search", {"n": 3, "q": 8}),
        ("theorem-search", {"n": 3, "q": 9}),
        ("relations-n3", {"q": 2}),
    ]
    for cid in ("alt-T", "alt-staircase", "alt-delta", "alt-dichotomy"):
        for n, p in _ALT_GRID:
            key = tuple(sorted({"n": n, "p": p}.items()))
            if key not in quick_alt[cid]:
                out.append((cid, {"n": n, "p": p}))
    return tuple(out)


_FULL_EXTRA = _full_extra()


def suite_claims(profile: str):
    """Ordered (claim_id, params) pairs for a suite run, grouped in
    registry order."""
    if profile == "quick":
        entries = list(_QUICK)
    elif profile == "full":
        entries = list(_QUICK) + list(_FULL_EXTRA)
    else:
        raise UsageError(f"unknown profile {profile!r} (quick or full)")
    order = {cid: k for k, cid in enumerate(RUNNERS)}
    entries.sort(key=lambda ent: order[ent[0]])
    return tuple((cid, dict(ps)) for cid, ps in entries)


def run_suite(profile: str, config: Optional[RunConfig] = None) -> list:
    config = config or RunConfig()
    return [run_claim(cid, config, **ps) for cid, ps in suite_claims(profile)]


# ---------------------------------------------------------------------------
# Witness replay
# ---------------------------------------------------------------------------


def _replay_points_sp4_c0(params, witness) -> bool:
    L, pts = _parse_points(witness)
    q = params["q"]
    terms = tuple((int(c), tuple(e)) for c, e in witness["terms"])
    mismatch = witness.get("mismatch", None)
    if not pts:
        # refuted by exact expansion with no separating sample stored
        R = xring(field(q), 4)
        return _c0_from_xis(R, q, terms) != dickson_invariants(4, field(q), R)[0]
    for k, P in enumerate(pts):
        dv = dickson_at_point(P, q)[0]
        cv = _c0_value_from_xis(P, q, terms)
        if str(dv) != witness["lhs"][k] or str(cv) != witness["rhs"][k]:
            return False
        if (dv != cv) != (mismatch == k):
            return False
    return True


def _replay_points_relation(params, witness, m: int) -> bool:
    L, pts = _parse_points(witness)
    q = params["q"]
    i = witness["i"]
    mismatch = witness.get("mismatch", None)
    for k, P in enumerate(pts):
        if len(P) != m:
            return False
        lv, rv = symplectic_relation_values(P, q, i)
        if str(lv) != witness["lhs"][k] or str(rv) != witness["rhs"][k]:
            return False
        if (lv != rv) != (mismatch == k):
            return False
    return True


def _replay_closure(params, witness) -> bool:
    q = params["q"]
    pres = sp4_presentation(q)
    amb = pres.ring
    u, v, w = amb.gen("u"), amb.gen("v"), amb.gen("w")
    rel = pres.relations[0]
    fixed = () if params.get("include_relation") is False else (rel,)
    # the non-membership half
    nf = normal_form(w, buchberger([u, v] + list(fixed)))
    if nf.text() != witness["membership-remainder"]:
        return False
    e = witness.get("e")
    if e is None:
        stored = witness.get("failures", {})
        e_max = max((int(k) for k in stored), default=0)
        closure = frobenius_closure_search(w, [u, v], e_max, fixed=fixed)
        return closure.e is None and \
            {str(k): r.text() for k, r in closure.failures.items()} == stored
    cert = parse_certificate_text(witness["certificate"])
    if cert["ring"] != amb:
        return False
    target = frobenius_power(w, e)
    if cert["target"] != target:
        return False
    acc = cert["remainder"]
    for h, b in zip(cert["cofactors"], cert["basis"]):
        acc = acc + h * b
    if acc != target or not cert["remainder"].is_zero():
        return False
    # certificate basis must generate no more than the raised ideal
    raised = frobenius_power_ideal([u, v], e) + list(fixed)
    gb = buchberger(raised)
    return all(normal_form(bel, gb).is_zero() for bel in cert["basis"])


def _replay_exponents(params, witness) -> bool:
    n, q = params["n"], params["q"]
    m = 2 * n - 1
    target = q ** (2 * n) - 1
    for sol in witness["solutions"]:
        if len(sol) != m or sol[0] > q - 2 or any(a > q - 1 or a < 0 for a in sol):
            return False
        if sum(a * (q ** i + 1) for i, a in enumerate(sol, start=1)) != target:
            return False
    lam = lambda_identity_check(n, q)
    if _lam_json(lam) != witness["lambda"]:
        return False
    if q >= 4 * n - 4 and (witness["solutions"] or lam["solutions"]):
        return False
    return True


def _alt_target(claim_id: str, ring: PolyRing, item: dict, p: int) -> Polynomial:
    if claim_id == "alt-T":
        return truncated_monomial_sum(ring, item["i"], item["j"])
    if claim_id == "alt-staircase":
        return staircase_monomial(ring, item["i"])
    if claim_id == "alt-delta":
        nf_mod = _factorial_mod(ring.nvars, p)
        return vandermonde(ring) - _socle_monomial(ring).scale(nf_mod)
    return vandermonde(ring)        # alt-dichotomy


def _replay_certificates(claim_id, params, witness) -> bool:
    n, p = params["n"], params["p"]
    ring, gb = symmetric_ideal_gb(n, p)
    for item in witness["items"]:
        cert = parse_certificate_text(item["certificate"])
        if cert["ring"] != ring:
            return False
        if cert["target"] != _alt_target(claim_id, ring, item, p):
            return False
        if not cert["remainder"].is_zero():
            return False
        acc = cert["remainder"]
        for h, b in zip(cert["cofactors"], cert["basis"]):
            acc = acc + h * b
        if acc != cert["target"]:
            return False
        if tuple(cert["basis"]) != gb.elements:
            return False
    return True


def _replay_normal_form(claim_id, params, witness) -> bool:
    n, p = params["n"], params["p"]
    ring, gb = symmetric_ideal_gb(n, p)
    parsed_ring, polys = parse_polys_text(witness["polys"])
    if parsed_ring != ring or len(polys) != 2:
        return False
    target, remainder = polys
    if claim_id not in ("alt-dichotomy", "alt-T", "alt-staircase", "alt-delta"):
        return False
    if target != _alt_target(claim_id, ring, witness, p):
        return False
    if remainder.is_zero():
        return False
    return normal_form(target, gb) == remainder


def replay_witness(claim_id: str, params: dict, witness: dict,
                   config: Optional[RunConfig] = None) -> bool:
    """Re-validate a stored witness.  Certificates are re-multiplied,
    evaluation points re-evaluated, exponent tuples re-checked; no
    search is repeated."""
    if witness is None:
        return False
    kind = witness.get("kind")
    if kind == "points":
        if claim_id == "sp4-c0":
            return _replay_points_sp4_c0(params, witness)
        if claim_id == "sp4-relation":
            return _replay_points_relation(params, witness, 4)
        return False
    if kind == "points-multi" and claim_id == "relations-n3":
        return all(_replay_points_relation(params, item, 6)
                   for item in witness["items"])
    if kind == "closure" and claim_id == "sp4-fpurity":
        return _replay_closure(params, witness)
    if kind == "exponents" and claim_id == "theorem-search":
        return _replay_exponents(params, witness)
    if kind == "certificates":
        return _replay_certificates(claim_id, params, witness)
    if kind == "normal-form":
        return _replay_normal_form(claim_id, params, witness)
    return False


def witness_document(report: VerificationReport) -> str:
    """JSON text for --out files; replay_document inverts it."""
    doc = {"claim": report.claim_id,
           "params": report.parameters,
           "verdict": report.verdict,
           "witness": report.witness}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def replay_document(text: str, config: Optional[RunConfig] = None) -> bool:
    doc = json.loads(text)
    return replay_witness(doc["claim"], doc["params"], doc["witness"], config)


# ---------------------------------------------------------------------------
# Report rendering
# ---------------------------------------------------------------------------

_PARAM_ORDER = {
    "sp4-c0": ("q", "mode", "trials", "ext_degree", "seed"),
    "sp4-fpurity": ("q", "e_max", "include_relation"),
    "sp4-relation": ("q", "i", "mode", "trials", "ext_degree", "seed"),
    "theorem-search": ("n", "q"),
    "alt-T": ("n", "p"),
    "alt-staircase": ("n", "p"),
    "alt-delta": ("n", "p"),
    "alt-dichotomy": ("n", "p"),
    "relations-n3": ("q", "trials", "ext_degree", "seed"),
}


def bound_text(bound: Optional[Fraction]) -> str:
    if bound is None:
        return "-"
    if bound == 0:
        return "0"
    if bound >= 1:
        return "1"
    k = (bound.denominator // bound.numerator).bit_length() - 1
    return f"2^-{k}"


def params_text(report: VerificationReport) -> str:
    order = _PARAM_ORDER.get(report.claim_id, ())
    keys = [k for k in order if k in report.parameters]
    keys += sorted(k for k in report.parameters if k not in order)
    return " ".join(f"{k}={report.parameters[k]}" for k in keys)


def render_text(report: VerificationReport,
                witness_file: Optional[str] = None) -> str:
    lines = [f"claim: {report.claim_id}",
             f"params: {params_text(report)}",
             f"verdict: {report.verdict}"]
    if report.bound is not None:
        lines.append(f"bound: {bound_text(report.bound)}")
    for note in report.detail:
        lines.append(f"note: {note}")
    if witness_file:
        lines.append(f"witness-file: {witness_file}")
    lines.append(f"elapsed-ms: {report.elapsed * 1000:.1f}")
    return "\n".join(lines) + "\n"


def render_machine(report: VerificationReport) -> str:
    """One line per claim: claim, params in fixed order, verdict, bound,
    elapsed; greppable and diff-stable apart from the timing field."""
    parts = [f"claim={report.claim_id}"]
    ptext = params_text(report)
    if ptext:
        parts.append(ptext)
    parts.append(f"verdict={report.verdict}")
    parts.append(f"bound={bound_text(report.bound)}")
    parts.append(f"elapsed-ms={report.elapsed * 1000:.0f}")
    return " ".join(parts)
