"""Independent oracles: sympy conversion and brute-force linear algebra."""

from __future__ import annotations

import itertools

import sympy as sp

from rxbilip.poly import Poly

SYMS = sp.symbols("x y z")


def to_sympy(p: Poly, syms=SYMS):
    """Holomorphic part of ``p`` as a sympy expression, built from the term map."""
    out = sp.Integer(0)
    n = p.ctx.n
    for e, c in p.terms.items():
        if any(e[n:]):
            raise ValueError("oracle conversion covers polynomials in the holomorphic variables only")
        term = sp.Rational(int(c.numerator), int(c.denominator))
        for s, a in zip(syms, e[:n]):
            term *= s ** a
        out += term
    return sp.expand(out)


def brute_quotient_dim(gens: list[Poly], weights: tuple[int, ...], cap: int = 60):
    """Sum over weighted degrees D of (#monomials - rank of I_D); None when I_D never fills up."""
    n = len(weights)
    sy = sp.symbols(f"a0:{n}")
    sgens = [sp.Poly(to_sympy(g, sy), *sy) for g in gens]
    gdeg = [sum(a * w for a, w in zip(g.monoms()[0], weights)) for g in sgens]

    def monos(D):
        rng = [range(D // w + 1) for w in weights]
        return [e for e in itertools.product(*rng) if sum(a * w for a, w in zip(e, weights)) == D]

    total = 0
    full_run = 0
    wmax = max(weights)
    for D in range(cap):
        basis = monos(D)
        if not basis:
            full_run += 1
            if full_run >= wmax and total:
                return total
            continue
        index = {e: i for i, e in enumerate(basis)}
        rows = []
        for g, dg in zip(sgens, gdeg):
            if dg > D:
                continue
            for m in monos(D - dg):
                row = [0] * len(basis)
                for e, c in g.terms():
                    row[index[tuple(a + b for a, b in zip(e, m))]] += c
                rows.append(row)
        r = sp.Matrix(rows).rank() if rows else 0
        gap = len(basis) - r
        total += gap
        full_run = full_run + 1 if gap == 0 else 0
        if full_run >= wmax:
            return total
    return None
