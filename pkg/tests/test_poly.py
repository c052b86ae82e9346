"""Polynomial arithmetic, the parser, filtrations and vector fields."""

from __future__ import annotations

import cmath

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import CTX3, homogeneous_fields, homogeneous_polys, polys, weight_systems
from oracles import SYMS, to_sympy
from rxbilip.parser import ParseError, parse_poly
from rxbilip.poly import (
    QQ,
    Poly,
    VarContext,
    VectorField,
    WeightSystem,
    apply_field,
    conjugate,
    eval_complex,
    euler_field,
    field_fil,
    field_weighted_degree,
    is_weighted_homogeneous,
    lie_bracket,
    weighted_fil,
)

UVW = VarContext(("u", "v", "w"))


def P(s, ctx=CTX3):
    return parse_poly(s, ctx)


# ---------------------------------------------------------------------------
# Parser


def test_parse_example_phi():
    phi = parse_poly("2*u^5 - v^7 + w^5", UVW)
    assert len(phi) == 3
    assert phi.terms[(5, 0, 0, 0, 0, 0, 0)] == 2
    assert phi.terms[(0, 7, 0, 0, 0, 0, 0)] == -1


def test_parse_zero_and_conjugate():
    assert parse_poly("0", UVW).is_zero()
    cu = parse_poly("conj(u)^10", UVW)
    assert cu == Poly.slot(UVW, UVW.conj_index(0), 10)
    assert cu.involves_conjugates()


def test_parse_rational_and_precedence():
    p = P("-x^2 + 3/4*y")
    assert p.terms[(2, 0, 0, 0, 0, 0, 0)] == -1
    assert p.terms[(0, 1, 0, 0, 0, 0, 0)] == QQ(3, 4)
    assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")


@pytest.mark.parametrize("bad", ["2x", "x^-1", "x^2^3", "q + 1", "x/y", "1/0", "(x + y", "x +", "conj(t)"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


@given(polys())
def test_print_parse_roundtrip(p):
    assert P(str(p)) == p


@given(polys(max_terms=3), polys(max_terms=3))
def test_arithmetic_matches_sympy(p, q):
    assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sp.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p.diff(0)) == sp.diff(to_sympy(p), SYMS[0])


def test_parse_matches_sympy_expansion():
    text = "(x - 2*y)^3*(z + 1/2) - x*(y - z)^2"
    expected = sp.expand(sp.sympify(text.replace("^", "**"), locals=dict(zip("xyz", SYMS))))
    assert to_sympy(P(text)) == expected


# ---------------------------------------------------------------------------
# Filtration, homogeneity, conjugation, evaluation


def test_weighted_fil_examples():
    assert weighted_fil(parse_poly("u^3*v^4", UVW), WeightSystem((7, 5, 7))) == 41
    xyzw = VarContext(("x", "y", "z", "w"))
    assert weighted_fil(parse_poly("x^2*w", xyzw), WeightSystem((3, 3, 3, 2))) == 8
    assert weighted_fil(Poly.const(UVW, 5), WeightSystem((1, 2, 3))) == 0


def test_weighted_homogeneous_examples():
    assert is_weighted_homogeneous(parse_poly("2*u^5 - v^7 + w^5", UVW), WeightSystem((7, 5, 7))) == 35
    xw = VarContext(("x", "w"))
    assert is_weighted_homogeneous(parse_poly("x^2 + w^3", xw), WeightSystem((3, 2))) == 6
    xy = VarContext(("x", "y"))
    assert is_weighted_homogeneous(parse_poly("x^2 + y^3", xy), WeightSystem((1, 1))) is None


def test_conjugate_examples():
    assert conjugate(parse_poly("u", UVW)) == parse_poly("conj(u)", UVW)
    assert conjugate(parse_poly("conj(u)^10*v", UVW)) == parse_poly("u^10*conj(v)", UVW)
    rho = parse_poly("u^10*conj(u)^10 + v^14*conj(v)^14 + w^10*conj(w)^10", UVW)
    assert conjugate(rho) == rho


def test_eval_complex_examples():
    x = VarContext(("x",))
    assert eval_complex(parse_poly("x^2", x), {"x": 1j}) == pytest.approx(-1)
    assert eval_complex(parse_poly("x*conj(x)", x), {"x": 1 + 1j}) == pytest.approx(2)
    phi = parse_poly("2*u^5 - v^7 + w^5", UVW)
    assert eval_complex(phi, {"u": 1, "v": 1, "w": -1}) == 0
    assert eval_complex(parse_poly("t*u", UVW), {"u": 2, "v": 0, "w": 0}, t_value=0.5) == pytest.approx(1)


@given(polys(max_terms=4), st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_compile_matches_eval(p, a, b):
    import numpy as np
    X = np.array([[a], [b], [a * b]])
    got = p.compile()(X)[0]
    want = eval_complex(p, {"x": a, "y": b, "z": a * b})
    assert cmath.isclose(got, want, rel_tol=1e-9, abs_tol=1e-9)


# ---------------------------------------------------------------------------
# Vector fields


def test_apply_field_examples():
    ctx = UVW
    eta2 = VectorField(ctx, [P("u", ctx), P("v", ctx), Poly.zero(ctx)])
    theta = P("u^4*v + w^3", ctx)
    F = P("u^6 + v^3 + w^3", ctx) + P("t", ctx) * theta
    expected = P("6*u^6 + 3*v^3", ctx) + P("t", ctx) * (P("u", ctx) * theta.diff(0) + P("v", ctx) * theta.diff(1))
    assert apply_field(eta2, F) == expected
    x = VarContext(("x",))
    assert apply_field(VectorField.partial(x, 0), parse_poly("x^2", x)) == parse_poly("2*x", x)


def test_lie_bracket_examples():
    x = VarContext(("x",))
    dx = VectorField.partial(x, 0)
    xdx = VectorField(x, [parse_poly("x", x)])
    assert lie_bracket(dx, xdx) == dx
    assert lie_bracket(xdx, xdx).is_zero()
    ws = WeightSystem((1, 2, 2))
    eta4 = VectorField(UVW, [P("v", UVW), P("u*w", UVW), Poly.zero(UVW)])
    assert lie_bracket(euler_field(UVW, ws), eta4) == eta4


def test_field_fil_examples():
    ws = WeightSystem((1, 2, 2))
    assert field_fil(euler_field(UVW, ws), ws) == 0
    eta4 = VectorField(UVW, [P("v", UVW), P("u*w", UVW), Poly.zero(UVW)])
    assert field_fil(eta4, ws) == 1
    eta3 = VectorField(UVW, [Poly.zero(UVW), P("u^2", UVW), P("2*v", UVW)])
    assert field_fil(eta3, ws) == 0


def test_euler_field_examples():
    xyzw = VarContext(("x", "y", "z", "w"))
    e = euler_field(xyzw, WeightSystem((3, 3, 3, 2)))
    assert e == VectorField(xyzw, [parse_poly(s, xyzw) for s in ("3*x", "3*y", "3*z", "2*w")])
    assert euler_field(UVW, WeightSystem((1, 2, 2))) == VectorField(UVW, [P(s, UVW) for s in ("u", "2*v", "2*w")])


# ---------------------------------------------------------------------------
# Properties


@st.composite
def graded_poly(draw):
    ws = draw(weight_systems())
    d = draw(st.integers(1, 8))
    p = draw(homogeneous_polys(CTX3, ws, d))
    return ws, d, p


@given(graded_poly())
def test_euler_identity(data):
    ws, d, p = data
    if p.is_zero():
        return
    assert apply_field(euler_field(CTX3, ws), p) == p.scale(d)


@st.composite
def graded_field(draw):
    ws = draw(weight_systems())
    k = draw(st.integers(-min(ws.weights) + 1, 4))
    return ws, k, draw(homogeneous_fields(CTX3, ws, k))


@given(graded_field())
def test_bracket_grading(data):
    ws, k, eta = data
    assert lie_bracket(euler_field(CTX3, ws), eta) == eta * k
    if not eta.is_zero():
        assert field_weighted_degree(eta, ws) == k


@given(polys(max_terms=3), polys(max_terms=3), polys(max_terms=2), polys(max_terms=2), polys(max_terms=2))
def test_derivation_law(p, q, a, b, c):
    eta = VectorField(CTX3, [a, b, c])
    assert apply_field(eta, p * q) == apply_field(eta, p) * q + p * apply_field(eta, q)
    assert apply_field(eta, p + q) == apply_field(eta, p) + apply_field(eta, q)
