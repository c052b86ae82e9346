"""Logarithmic vector fields: generator lists, tangency, module equality."""

from __future__ import annotations

import time

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import CROSSCAP_GENS, QUADRIC_GENS, homogeneous_polys, weight_systems
from oracles import to_sympy
from rxbilip.derlog import (
    NonReducedError,
    derlog_from_fields,
    derlog_generators,
    hamiltonian_fields,
    is_tangent,
    module_contains,
    module_equal,
    stratum_dim,
    theta_zero,
)
from rxbilip.parser import parse_poly
from rxbilip.poly import Poly, VarContext, VectorField, WeightSystem, euler_field

UVW = VarContext(("u", "v", "w"))
XYZW = VarContext(("x", "y", "z", "w"))
XY = VarContext(("x", "y"))


def fields(ctx, rows):
    return [VectorField(ctx, [parse_poly(c, ctx) for c in comps]) for comps in rows]


def test_crosscap_generators():
    ws = WeightSystem((1, 2, 2))
    t0 = time.perf_counter()
    dl = derlog_generators(parse_poly("v^2 - u^2*w", UVW), ws)
    assert time.perf_counter() - t0 < 10
    assert module_equal(list(dl.generators), fields(UVW, CROSSCAP_GENS), ws)
    assert dl.generators[dl.euler_index] == euler_field(UVW, ws)
    assert sorted(dl.degrees) == [0, 0, 0, 1]
    assert stratum_dim(dl) == 0


def test_quadric_generators():
    ws = WeightSystem((3, 3, 3, 2))
    t0 = time.perf_counter()
    dl = derlog_generators(parse_poly("x^2 + y^2 + z^2 + w^3", XYZW), ws)
    assert time.perf_counter() - t0 < 10
    assert module_equal(list(dl.generators), fields(XYZW, QUADRIC_GENS), ws)
    assert len(dl.generators) == 7


def test_normal_crossing():
    ws = WeightSystem((1, 1))
    dl = derlog_generators(parse_poly("x*y", XY), ws)
    assert module_equal(list(dl.generators), fields(XY, [("x", "0"), ("0", "y")]), ws)


def test_hamiltonian_examples():
    phi = parse_poly("x^2 + y^2 + z^2 + w^3", XYZW)
    ham = hamiltonian_fields(phi)
    assert ham[0] == fields(XYZW, [("2*y", "-2*x", "0", "0")])[0]
    assert ham[2] == fields(XYZW, [("3*w^2", "0", "0", "-2*x")])[0]
    assert hamiltonian_fields(parse_poly("x*y", XY)) == fields(XY, [("x", "-y")])


def test_tangency_examples():
    phi = parse_poly("v^2 - u^2*w", UVW)
    assert is_tangent(euler_field(UVW, WeightSystem((1, 2, 2))), phi)
    assert is_tangent(fields(UVW, [("v", "u*w", "0")])[0], phi)
    x = VarContext(("x",))
    assert not is_tangent(VectorField.partial(x, 0), parse_poly("x", x))


def test_stratum_dim_examples():
    assert stratum_dim(derlog_generators(Poly.zero(XY), WeightSystem((1, 1)))) == 2
    xyz = VarContext(("x", "y", "z"))
    dl = derlog_generators(parse_poly("x", xyz), WeightSystem((1, 1, 1)))
    assert stratum_dim(dl) == 2


def test_module_equal_examples():
    a = fields(XY, [("x", "0"), ("0", "y")])
    assert module_equal(a, a)
    assert module_equal(a, list(reversed(a)))
    assert not module_equal(a, fields(XY, [("x", "0")]))


def test_errors():
    with pytest.raises(NonReducedError):
        derlog_generators(parse_poly("x^2", XY))
    with pytest.raises(ValueError):
        derlog_generators(parse_poly("x^2 + y^3", XY), WeightSystem((1, 1)))
    with pytest.raises(ValueError):
        derlog_from_fields(parse_poly("x*y", XY), fields(XY, [("1", "0")]))


def test_theta_zero_vanishes_at_origin():
    dl = derlog_generators(parse_poly("x", VarContext(("x", "y", "z"))), WeightSystem((1, 1, 1)))
    th0 = theta_zero(dl)
    assert all(not any(g.constant_part()) for g in th0)
    for g in dl.generators:
        for i in range(3):
            assert module_contains(th0, g * Poly.slot(dl.ctx, i))


# ---------------------------------------------------------------------------
# Tangency of every emitted generator on random weighted-homogeneous hypersurfaces


@st.composite
def hypersurfaces(draw):
    n = draw(st.sampled_from([2, 2, 3]))
    ctx = VarContext(("x", "y", "z")[:n])
    ws = draw(weight_systems(n=n, max_w=3))
    d = draw(st.integers(2, 6 if n == 2 else 4))
    phi = draw(homogeneous_polys(ctx, ws, d, max_terms=3))
    return ctx, ws, phi


@given(hypersurfaces())
def test_derlog_tangency(data):
    ctx, ws, phi = data
    if phi.is_zero() or phi.is_constant():
        return
    syms = sp.symbols(ctx.names)
    reduced = all(m == 1 for _, m in sp.sqf_list(to_sympy(phi, syms), *syms)[1])
    if not reduced:
        with pytest.raises(NonReducedError):
            derlog_generators(phi, ws)
        return
    dl = derlog_generators(phi, ws)
    for eta in dl.generators:
        assert is_tangent(eta, phi)
    assert dl.euler_index == 0
    # the Euler field and the hamiltonian fields are tangent, so they must lie in the module
    for eta in [euler_field(ctx, ws)] + hamiltonian_fields(phi):
        assert module_contains(list(dl.generators), eta, ws)
