"""Multivariate gcd, exact division and squarefree decomposition over Q.

Polynomials are viewed recursively as univariate in their first variable (in
context slot order) with coefficients in the remaining ones.  The gcd uses the
primitive polynomial remainder sequence; squarefree decomposition is Yun's
algorithm on the primitive part plus recursion on the content.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import QQ, Poly


def exact_divide(p: Poly, g: Poly) -> Poly | None:
    """Return q with p = q*g, or None if g does not divide p."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return Poly.zero(p.ctx)
    ctx = p.ctx
    # lex order on exponent tuples; the leading term of a product is the product of leading terms
    lg = max(g.terms)
    cg = g.terms[lg]
    rem = dict(p.terms)
    quot = {}
    while rem:
        lm = max(rem)
        shift = tuple(a - b for a, b in zip(lm, lg))
        if any(s < 0 for s in shift):
            return None
        c = rem[lm] / cg
        quot[shift] = c
        for e, v in g.terms.items():
            m = tuple(a + b for a, b in zip(e, shift))
            w = rem.get(m, 0) - c * v
            if w:
                rem[m] = w
            else:
                rem.pop(m, None)
    return Poly(ctx, quot, _trusted=True)


def divides(g: Poly, p: Poly) -> bool:
    return exact_divide(p, g) is not None


def normalize(p: Poly) -> Poly:
    """Scale so the leading coefficient in canonical print order is 1."""
    if p.is_zero():
        return p
    return p.scale(1 / p.sorted_terms()[0][1])


def _main_slot(*polys: Poly) -> int | None:
    slots = set()
    for p in polys:
        slots |= p.support_slots()
    return min(slots) if slots else None


def _coeffs(p: Poly, slot: int) -> list[Poly]:
    """Coefficients of p as a polynomial in ``slot``, index = degree."""
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        k = e[slot]
        e0 = e[:slot] + (0,) + e[slot + 1:]
        groups.setdefault(k, {})[e0] = c
    if not groups:
        return []
    deg = max(groups)
    return [Poly(p.ctx, groups.get(k, {}), _trusted=True) for k in range(deg + 1)]


def _from_coeffs(coeffs: list[Poly], slot: int, ctx) -> Poly:
    out = Poly.zero(ctx)
    for k, c in enumerate(coeffs):
        if c:
            out = out + c.mul_monomial(ctx.unit_exps(slot, k) if k else ctx.zero_exps())
    return out


def _strip(a: list[Poly]) -> list[Poly]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _content(coeffs: list[Poly]) -> Poly:
    g = Poly.zero(coeffs[0].ctx) if coeffs else None
    for c in coeffs:
        if c:
            g = gcd_poly(g, c)
            if g.is_constant():
                return Poly.const(g.ctx, 1)
    return g


def _prem(a: list[Poly], b: list[Poly]) -> list[Poly]:
    r = list(a)
    n = len(b) - 1
    lb = b[-1]
    steps = 0
    while len(r) - 1 >= n and r:
        lr = r[-1]
        shift = len(r) - 1 - n
        r = [c * lb for c in r]
        for k, bc in enumerate(b):
            r[k + shift] = r[k + shift] - lr * bc
        r = _strip(r)
        steps += 1
    return r


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor, normalized so its leading coefficient is 1."""
    if p.is_zero():
        return normalize(q)
    if q.is_zero():
        return normalize(p)
    if p.is_constant() or q.is_constant():
        return Poly.const(p.ctx, 1)
    if p.involves_conjugates() or q.involves_conjugates():
        raise ValueError("gcd is only defined for holomorphic polynomials here")
    slot = _main_slot(p, q)
    ctx = p.ctx
    a = _coeffs(p, slot)
    b = _coeffs(q, slot)
    if len(a) == 1 or len(b) == 1:
        # one side is free of the main variable: gcd with the other's content
        const_side, other = (a, b) if len(a) == 1 else (b, a)
        return normalize(gcd_poly(const_side[0], _content(other)))
    ca, cb = _content(a), _content(b)
    c = gcd_poly(ca, cb)
    a = [exact_divide(x, ca) for x in a]
    b = [exact_divide(x, cb) for x in b]
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = [Poly.const(ctx, 1)]
            break
        cr = _content(r)
        a, b = b, [exact_divide(x, cr) for x in r]
    g = _from_coeffs(b, slot, ctx)
    gb = _content(b)
    g = exact_divide(g, gb)
    return normalize(c * g)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``unit * prod(f**m for f, m in parts)`` equals the input."""

    parts: tuple[tuple[Poly, int], ...]
    unit: object = QQ(1)

    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.parts)

    def expand(self) -> Poly:
        if not self.parts:
            raise ValueError("empty decomposition")
        ctx = self.parts[0][0].ctx
        out = Poly.const(ctx, self.unit)
        for f, m in self.parts:
            out = out * f ** m
        return out

    def strata(self) -> dict[int, Poly]:
        return {m: f for f, m in self.parts}


def _yun(p: Poly, slot: int) -> dict[int, Poly]:
    """Squarefree parts of p, assumed primitive in ``slot`` and of positive degree there."""
    out: dict[int, Poly] = {}
    dp = p.diff(slot)
    a = gcd_poly(p, dp)
    b = exact_divide(p, a)
    c = exact_divide(dp, a)
    d = c - b.diff(slot)
    i = 1
    while not b.is_constant():
        a = gcd_poly(b, d)
        if not a.is_constant():
            out[i] = normalize(a)
        b = exact_divide(b, a)
        c = exact_divide(d, a)
        d = c - b.diff(slot)
        i += 1
    return out


def _decompose(p: Poly) -> dict[int, Poly]:
    if p.is_constant():
        return {}
    slot = _main_slot(p)
    coeffs = _coeffs(p, slot)
    cont = _content(coeffs)
    pp = exact_divide(p, cont)
    parts = _yun(pp, slot) if not pp.is_constant() else {}
    for m, f in _decompose(cont).items():
        parts[m] = normalize(parts[m] * f) if m in parts else f
    return parts


def squarefree_decomposition(p: Poly) -> SquarefreeDecomposition:
    """Group the factors of p by multiplicity; each group is squarefree and groups are coprime."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    if p.involves_conjugates():
        raise ValueError("squarefree decomposition needs a holomorphic polynomial")
    parts = _decompose(p)
    ordered = tuple((parts[m], m) for m in sorted(parts))
    ctx = p.ctx
    prod = Poly.const(ctx, 1)
    for f, m in ordered:
        prod = prod * f ** m
    unit = p.sorted_terms()[0][1] / prod.sorted_terms()[0][1]
    return SquarefreeDecomposition(ordered, unit)


def is_squarefree(p: Poly) -> bool:
    return squarefree_decomposition(p).is_squarefree()
