"""Sampling checks: sup hypothesis, residuals, growth and difference quotients."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import crosscap, brieskorn, quadric, make_problem, plane_curve
from rxbilip.numeric import (
    SamplerConfig,
    TheoremField,
    ZeroField,
    build_theorem_field,
    field_from_certificate,
    numeric_lipschitz_check,
    numeric_sup_hypothesis,
)
from rxbilip.triviality import build_certificate, degree_criterion

FAST = SamplerConfig(points_per_radius=64)


def sample_points(n, count=16, seed=1):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, count)) + 1j * rng.standard_normal((n, count))


def test_sampler_validation():
    with pytest.raises(ValueError):
        SamplerConfig(points_per_radius=0)
    with pytest.raises(ValueError):
        SamplerConfig(t_values=())
    with pytest.raises(ValueError):
        SamplerConfig(radius_factor=1.5)
    assert SamplerConfig().log2_radii() == [-2.0 - k for k in range(8)]


def test_theorem_field_toy_closed_form():
    # X = C, Theta^0 = <x d/dx>, f = x^2, theta = x^3: V = theta * conj(rho) * x / |rho|^2, rho = x F_x
    prob = make_problem("x", "0", (1,), "x^2", ["x^3"])
    fld = build_theorem_field(prob)
    assert fld.e_list == [0] and fld.S == 0
    xh = sample_points(1)
    for t in (0.0, 0.5):
        V = fld.values(xh, 0.0, t)[0]
        x = xh[0]
        rho = x * (2 * x + 3 * t * x ** 2)
        expected = x ** 3 * np.conj(rho) * x / np.abs(rho) ** 2
        np.testing.assert_allclose(V, expected, rtol=1e-12)


def test_theorem_field_residual_and_origin():
    prob = brieskorn()
    fld = build_theorem_field(prob)
    assert len({d + e for d, e in zip(fld.d_list, fld.e_list)}) == 1
    xh = sample_points(3)
    for t in (0.0, 0.5, 1.0):
        assert np.max(fld.residual(xh, -3.0, t)) < 1e-9
    origin = np.zeros((3, 2), dtype=complex)
    assert np.all(fld.values(origin, 0.0, 0.5) == 0)


def test_theorem_field_scaling():
    # x_i -> 2^{w_i} x_i multiplies rho_i by 2^{d + d_i}, so rho^2 by 2^{2(d + S)} at t = 0
    prob = quadric()
    fld = build_theorem_field(prob)
    d = prob.degree()
    xh = sample_points(4)
    a = fld.rho_squared(xh, -2.0, 0.0)
    b = fld.rho_squared(xh, -1.0, 0.0)
    np.testing.assert_allclose(b.log2abs() - a.log2abs(), 2 * (d + fld.S), rtol=1e-9)
    np.testing.assert_allclose(b.value() / a.value(), 2.0 ** (2 * (d + fld.S)), rtol=1e-9)


def test_sup_hypothesis_supported_for_criterion_cases():
    for prob in (brieskorn(), quadric()):
        assert all(r.verdict == "trivial" for r in degree_criterion(prob))
        rep = numeric_sup_hypothesis(prob, FAST)
        assert rep.supported and not rep.violations
        assert np.isfinite(rep.max_ratio)


def test_sup_hypothesis_detects_growth():
    prob = crosscap("u^2*w", (2, 3, 2), "u^3 + v^2 + w^3")
    rep = numeric_sup_hypothesis(prob, FAST)
    assert not rep.supported
    assert min(rep.growth_factors) >= 2 - 1e-9
    (v,) = rep.violations
    assert len(v["direction"]) == 3 and v["t"] in FAST.t_values


def test_sup_hypothesis_euler_direction():
    prob = make_problem("xy", "0", (1, 1), "x^3 + y^3", ["x^3 + y^3"])
    rep = numeric_sup_hypothesis(prob, FAST)
    assert rep.supported


def test_sup_hypothesis_deterministic():
    prob = plane_curve()
    a = numeric_sup_hypothesis(prob, FAST).to_dict()
    b = numeric_sup_hypothesis(prob, FAST).to_dict()
    assert a == b
    c = numeric_sup_hypothesis(prob, SamplerConfig(points_per_radius=64, seed=5)).to_dict()
    assert c["seed"] == 5 and c["config"]["seed"] == 5


def test_zero_field_has_zero_quotients():
    prob = make_problem("xy", "0", (1, 1), "x^2 + y^2", ["0"])
    rep = numeric_lipschitz_check(ZeroField(prob), FAST)
    assert rep.bound_kind == "lipschitz-quotient"
    assert all(v == 0 for v in rep.lambda_per_t.values())
    assert rep.max_ratio == 0 and rep.supported


def test_certificate_field_lipschitz_brieskorn():
    prob = brieskorn()
    cert = build_certificate(prob, exponents=(10, 14, 10))
    rep = numeric_lipschitz_check(field_from_certificate(prob, cert), FAST)
    assert rep.bound_kind == "lipschitz-quotient"
    assert rep.residual_max < 1e-9
    assert rep.lambda_spread < 0.1 and rep.supported


def test_dropped_alpha_fails_residual_stage():
    prob = brieskorn()
    cert = build_certificate(prob, exponents=(10, 14, 10))
    k = next(i for i, a in enumerate(cert.alphas) if not a.is_zero())
    rep = numeric_lipschitz_check(field_from_certificate(prob, cert, drop=k), FAST)
    assert rep.bound_kind == "residual" and not rep.supported
    assert rep.residual_max > 1e-9


def test_not_strongly_trivial_certificate_fails_numerically():
    # the algebraic identity exists, but the field it defines is not Lipschitz
    prob = plane_curve()
    cert = build_certificate(prob)
    assert cert is not None and cert.verified
    rep = numeric_lipschitz_check(field_from_certificate(prob, cert), FAST)
    assert rep.residual_max < 1e-9
    assert not rep.supported


def test_theorem_field_generators_override():
    prob = brieskorn()
    fld = TheoremField(prob, generators=list(prob.derlog.generators))
    assert len(fld.d_list) == len(prob.derlog.generators)
